"""Exercise the command line through main() with argv lists."""

import json

import pytest

from juggling_chains import cli
from juggling_chains.chains import (
    distribution_from_json,
    matrix_standard,
    stationary_exact,
)
from juggling_chains.errors import ChainStructureError, ConvergenceError
from juggling_chains.montecarlo import random_walk, walk_report_to_json


def run(capsys, argv):
    try:
        rc = cli.main(argv)
    except SystemExit as exc:
        rc = exc.code
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_states_landing_with_weights(capsys):
    rc, out, _ = run(capsys, ["states", "--h", "4", "--f", "1"])
    assert rc == 0
    assert out.splitlines() == ["xxx-  8", "xx-x  4", "x-xx  2", "-xxx  1"]


def test_states_tl_count_and_order(capsys):
    rc, out, _ = run(capsys, ["states", "--h", "3", "--f", "1", "--tl"])
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 7
    assert lines[0] == "13-"
    assert lines[-1] == "-33"


def test_states_json(capsys):
    rc, out, _ = run(capsys, ["states", "--h", "4", "--f", "1", "--format", "json"])
    assert rc == 0
    doc = json.loads(out)
    assert doc == {
        "h": 4,
        "f": 1,
        "universe": "landing",
        "states": ["xxx-", "xx-x", "x-xx", "-xxx"],
        "weights": [8, 4, 2, 1],
    }


def test_states_tl_json(capsys):
    rc, out, _ = run(capsys, ["states", "--h", "2", "--f", "1", "--tl", "--format", "json"])
    doc = json.loads(out)
    assert doc["universe"] == "tl"
    assert len(doc["states"]) == 3


def test_graph_dot(capsys):
    rc, out, _ = run(capsys, ["graph", "--h", "2", "--f", "1"])
    assert rc == 0
    assert out.splitlines()[0] == 'digraph "standard h=2 f=1" {'
    assert '"x-" -> "-x" [label="2"];' in out
    assert '"-x" -> "x-" [label="0"];' in out


def test_graph_json_add_drop(capsys):
    rc, out, _ = run(capsys, ["graph", "--h", "1", "--model", "adddrop",
                              "--format", "json"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["kind"] == "add-drop"
    assert len(doc["edges"]) == 4


def test_stationary_closed_table(capsys):
    rc, out, _ = run(capsys, ["stationary", "--h", "4", "--f", "1"])
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 4
    assert lines[0].split() == ["xxx-", "8/15", "0.5333333333333333"]


def test_stationary_exact_equals_closed_output(capsys):
    rc1, out1, _ = run(capsys, ["stationary", "--h", "5", "--f", "2",
                                "--method", "closed"])
    rc2, out2, _ = run(capsys, ["stationary", "--h", "5", "--f", "2",
                                "--method", "exact"])
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_stationary_csv(capsys):
    rc, out, _ = run(capsys, ["stationary", "--h", "3", "--model", "adddrop",
                              "--method", "exact", "--format", "csv"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "state,exact,decimal"
    assert lines[1] == "xxx,1/15,0.06666666666666667"
    assert len(lines) == 9


def test_stationary_json_roundtrips(capsys):
    rc, out, _ = run(capsys, ["stationary", "--h", "4", "--f", "1",
                              "--format", "json"])
    assert rc == 0
    dist = distribution_from_json(json.loads(out))
    assert dist == stationary_exact(matrix_standard(4, 1))


def test_stationary_power(capsys):
    rc, out, _ = run(capsys, ["stationary", "--h", "4", "--f", "1",
                              "--method", "power"])
    assert rc == 0
    assert out.splitlines()[-1].startswith("# iterations=")
    value = float(out.splitlines()[0].split()[1])
    assert abs(value - 8 / 15) < 1e-10


def test_stationary_power_json(capsys):
    rc, out, _ = run(capsys, ["stationary", "--h", "2", "--f", "1",
                              "--method", "power", "--format", "json"])
    doc = json.loads(out)
    assert set(doc) == {"states", "probs", "iterations", "residual"}
    assert doc["residual"] <= 1e-12


def test_stationary_simulate_deterministic(capsys):
    argv = ["stationary", "--h", "4", "--f", "1", "--method", "simulate",
            "--steps", "2000", "--seed", "9"]
    rc1, out1, _ = run(capsys, argv)
    rc2, out2, _ = run(capsys, argv)
    assert rc1 == rc2 == 0
    assert out1 == out2
    assert "# steps=2000 seed=9" in out1


def test_stationary_all(capsys):
    rc, out, err = run(capsys, ["stationary", "--h", "4", "--f", "1",
                                "--method", "all", "--steps", "20000"])
    assert rc == 0
    assert out.splitlines()[0] == "closed == exact: PASS"
    assert "# simulate steps=20000" in out
    assert err == ""


def test_stationary_all_json(capsys):
    rc, out, _ = run(capsys, ["stationary", "--h", "2", "--f", "1",
                              "--method", "all", "--steps", "5000",
                              "--format", "json"])
    doc = json.loads(out)
    assert doc["closed_matches_exact"] is True
    assert set(doc["simulation"]) == {"steps", "seed", "occupancy", "tv_distance"}


def test_stationary_all_short_walk_warns(capsys):
    rc, out, err = run(capsys, ["stationary", "--h", "5", "--f", "2",
                                "--method", "all", "--steps", "30"])
    assert rc == 0
    assert "warning:" in err


def test_verify_all_passes(capsys):
    rc, out, _ = run(capsys, ["verify", "--h", "1", "--f", "1", "--checks", "all"])
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 5
    assert all(line.startswith("PASS ") for line in lines)
    assert [line.split()[1].rstrip(":") for line in lines] == [
        "lump", "doubly", "count", "bijection", "closedform"]


def test_verify_subset(capsys):
    rc, out, _ = run(capsys, ["verify", "--h", "3", "--f", "1",
                              "--checks", "count,doubly"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "PASS count: 7 time-labelled states, S(4,2) = 7"
    assert lines[1] == "PASS doubly: all column sums equal 1"


def test_verify_larger_case(capsys):
    rc, out, _ = run(capsys, ["verify", "--h", "4", "--f", "2", "--checks", "all"])
    assert rc == 0
    assert all(line.startswith("PASS ") for line in out.splitlines())


def test_verify_failure_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(cli, "verify_lumpability",
                        lambda h, f, max_h: (False, ("u", "v", "w")))
    rc, out, _ = run(capsys, ["verify", "--h", "2", "--f", "1", "--checks", "lump"])
    assert rc == 1
    assert out.startswith("FAIL lump:")


def test_simulate_json_matches_library(capsys):
    rc, out, _ = run(capsys, ["simulate", "--h", "4", "--f", "1",
                              "--steps", "500", "--seed", "11"])
    assert rc == 0
    m = matrix_standard(4, 1)
    expected = walk_report_to_json(random_walk(m, m.states[0], 500, 11))
    assert json.loads(out) == expected


def test_simulate_custom_start(capsys):
    rc, out, _ = run(capsys, ["simulate", "--h", "4", "--f", "1",
                              "--steps", "1", "--seed", "0",
                              "--start=-xxx"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["occupancy"] == {"-xxx": 1}


def test_simulate_tl_start(capsys):
    rc, out, _ = run(capsys, ["simulate", "--h", "3", "--f", "1",
                              "--model", "tl", "--steps", "1",
                              "--start", "2-3"])
    assert rc == 0
    assert json.loads(out)["occupancy"] == {"2-3": 1}


def test_partitions_minimal_pair(capsys):
    rc, out, _ = run(capsys, ["partitions", "--h", "1", "--f", "1"])
    assert rc == 0
    assert out.splitlines() == ["-  {1}|{2}"]


def test_partitions_listing_count(capsys):
    rc, out, _ = run(capsys, ["partitions", "--h", "5", "--f", "2"])
    assert rc == 0
    assert len(out.splitlines()) == 90


def test_partitions_roundtrip(capsys):
    rc, out, _ = run(capsys, ["partitions", "--h", "4", "--f", "2", "--roundtrip"])
    assert rc == 0
    assert out.startswith("PASS bijection: 25 states and 25 partitions roundtrip")


def test_report_writes_files(capsys, tmp_path):
    rc, out, _ = run(capsys, ["report", "--h", "2", "--f", "1",
                              "--outdir", str(tmp_path), "--lmax", "4"])
    assert rc == 0
    assert len(out.splitlines()) == 4
    assert (tmp_path / "stationary.png").exists()
    assert (tmp_path / "convergence.csv").exists()


@pytest.mark.parametrize("argv", [
    ["stationary", "--h", "4", "--model", "adddrop", "--f", "1"],
    ["stationary", "--h", "4", "--model", "standard"],
    ["stationary", "--h", "13", "--model", "adddrop"],
    ["stationary", "--h", "17", "--f", "1"],
    ["stationary", "--h", "0", "--f", "0"],
    ["stationary", "--h", "4", "--f", "9"],
    ["simulate", "--h", "4", "--f", "1", "--start", "xx--"],
    ["simulate", "--h", "4", "--f", "1", "--start", "zz"],
    ["simulate", "--h", "4", "--f", "1", "--steps", "0"],
    ["verify", "--h", "2", "--f", "1", "--checks", "nope"],
    ["report", "--h", "2", "--f", "1", "--outdir", "x", "--lmax", "0"],
])
def test_usage_errors_exit_two(capsys, argv, tmp_path):
    if "report" in argv:
        argv = argv[:-3] + [str(tmp_path), "--lmax", "0"]
    rc, _, err = run(capsys, argv)
    assert rc == 2
    assert "error:" in err


def test_argparse_usage_errors_exit_two(capsys):
    rc, _, err = run(capsys, ["nope"])
    assert rc == 2
    rc, _, err = run(capsys, ["stationary", "--h", "4", "--f", "1",
                              "--method", "wat"])
    assert rc == 2


def test_force_lifts_bound(capsys):
    rc, out, _ = run(capsys, ["states", "--h", "17", "--f", "16", "--force"])
    assert rc == 0
    assert len(out.splitlines()) == 17


def test_chain_errors_exit_one(capsys, monkeypatch):
    def boom(*a, **k):
        raise ConvergenceError("no luck", last_iterate=[1.0], residual=0.5)
    monkeypatch.setattr(cli, "stationary_power", boom)
    rc, _, err = run(capsys, ["stationary", "--h", "2", "--f", "1",
                              "--method", "power"])
    assert rc == 1
    assert "no luck" in err

    def broken(*a, **k):
        raise ChainStructureError("not irreducible")
    monkeypatch.setattr(cli, "stationary_exact", broken)
    rc, _, err = run(capsys, ["stationary", "--h", "2", "--f", "1",
                              "--method", "exact"])
    assert rc == 1


def test_closed_exact_mismatch_exits_one(capsys, monkeypatch):
    from fractions import Fraction
    from juggling_chains.chains import StationaryDistribution

    m = matrix_standard(2, 1)
    fake = StationaryDistribution(m.states, (Fraction(1, 3), Fraction(2, 3)))
    monkeypatch.setattr(cli, "closed_form", lambda *a, **k: fake)
    rc, _, err = run(capsys, ["stationary", "--h", "2", "--f", "1",
                              "--method", "all", "--steps", "100"])
    assert rc == 1
    assert "FAIL: closed form" in err


def test_help_exits_zero(capsys):
    rc, out, _ = run(capsys, ["--help"])
    assert rc == 0
    assert "stationary" in out
