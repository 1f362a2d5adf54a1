import json
import subprocess
import sys
from pathlib import Path

import pytest

from asymhyper.autsearch import automorphism_group
from asymhyper.cli import EXIT_BUDGET, EXIT_FAILS, EXIT_HOLDS, EXIT_USAGE, main
from asymhyper.constructions import build_Gk, build_Gks, loads_addresses
from asymhyper.fileformat import read

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv, golden, code", [
    (["construct", "gk", "--k", "6"], "gk6.hg", EXIT_HOLDS),
    (["construct", "gkt-circ", "--k", "3", "--t", "1"], "gkt_circ_3_1.hg", EXIT_HOLDS),
    (["construct", "gk-star", "--k", "6"], "gkstar6.hg", EXIT_HOLDS),
    (["check", str(GOLDEN / "gk6.hg"), "--aut"], "check_aut_gk6.txt", EXIT_HOLDS),
    (["check", str(GOLDEN / "gkstar6.hg"), "--asymmetric", "--json"],
     "check_asym_gkstar6.json", EXIT_HOLDS),
    (["verify", "gkt-circ", "--k", "4", "--t", "2", "--strong", "--json"],
     "verify_strong_gkt_circ_4_2.json", EXIT_HOLDS),
    (["verify", "gks", "--k", "6", "--s", "0", "--involution-free", "--regime", "sampled",
      "--trials", "100", "--seed", "5"], "verify_sampled_gks_6_0.txt", EXIT_HOLDS),
    (["search", "--k", "2", "--max-n", "6"], "search_k2.txt", EXIT_HOLDS),
    (["conjecture1", "--max-n", "3", "--json"], "conjecture1_3.json", EXIT_HOLDS),
])
def test_golden_outputs(capsys, argv, golden, code):
    got_code, out, _ = run(capsys, *argv)
    assert got_code == code
    assert out == (GOLDEN / golden).read_text()


def test_golden_construct_counts():
    h = read(GOLDEN / "gk6.hg")
    assert (h.n_vertices, h.n_edges) == (11, 6)
    c = read(GOLDEN / "gkt_circ_3_1.hg")
    assert (c.n_vertices, c.n_edges) == (7, 4)
    assert json.loads((GOLDEN / "conjecture1_3.json").read_text())["critical"] == []


def test_construct_check_round_trip(tmp_path, capsys):
    path = tmp_path / "g.hg"
    assert run(capsys, "construct", "gk", "--k", "7", "--out", str(path))[0] == EXIT_HOLDS
    assert read(path) == build_Gk(7)
    code, out, _ = run(capsys, "check", str(path), "--aut", "--json")
    data = json.loads(out)
    g = automorphism_group(build_Gk(7))
    assert data["order"] == g.order == 2
    assert data["generators"] == [p.cycle_notation(build_Gk(7).labels) for p in g.generators]


def test_layered_construct_writes_address_sidecar(tmp_path, capsys):
    path = tmp_path / "gks.hg"
    code, _, err = run(capsys, "construct", "gks", "--k", "6", "--s", "0", "--out", str(path))
    assert code == EXIT_HOLDS and "63 vertices" in err
    assert read(path) == build_Gks(6, 0).hypergraph
    sidecar = Path(str(path) + ".addr").read_text()
    assert loads_addresses(sidecar) == build_Gks(6, 0).copies


def test_involution_on_isolated_pair(tmp_path, capsys):
    path = tmp_path / "two.hg"
    path.write_text("2\n")
    code, out, _ = run(capsys, "check", str(path), "--involution")
    assert code == EXIT_HOLDS and out.startswith("involution: true")


def test_fails_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "gk", "--k", "6", "--strong")
    assert code == EXIT_FAILS
    assert "verdict: fails" in out and "witness permutation: (v_1 v_11)" in out
    code, out, _ = run(capsys, "check", str(GOLDEN / "gk6.hg"), "--asymmetric")
    assert code == EXIT_FAILS and out == "asymmetric: false\n"


def test_budget_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "gks", "--k", "6", "--s", "0", "--involution-free")
    assert code == EXIT_BUDGET and "budget-exceeded" in out
    code, _, err = run(capsys, "check", str(GOLDEN / "gk6.hg"), "--aut", "--budget", "1")
    assert code == EXIT_BUDGET and "budget" in err
    code, out, _ = run(capsys, "search", "--k", "3", "--max-n", "6", "--budget", "30")
    assert code == EXIT_BUDGET and "partial" in out


@pytest.mark.parametrize("argv", [
    ["verify", "nowhere.hg", "--strong"],
    ["construct", "gkt", "--k", "4"],
    ["construct", "blob"],
    ["verify", "gk", "--k", "6", "--strong", "--regime", "sampled", "--trials", "3"],
    ["lemma", "lemma3", "--k", "4"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and err.startswith("error:")


def test_parse_errors_report_the_line(tmp_path, capsys):
    path = tmp_path / "bad.hg"
    path.write_text("# header\n4\n0 1\n1 7\n")
    code, _, err = run(capsys, "check", str(path), "--aut")
    assert code == EXIT_USAGE and "line 4" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "gk", "--k", "6", "--strong", "--budget", "0"])
    assert exc.value.code == 2


def test_worker_count_does_not_change_reports(capsys):
    base = ["verify", "gkt-circ", "--k", "4", "--t", "3", "--strong", "--json"]
    _, one, _ = run(capsys, *base, "--workers", "1")
    _, two, _ = run(capsys, *base, "--workers", "2")
    assert one == two


def test_out_flag_and_search_witness_files(tmp_path, capsys):
    out = tmp_path / "search.txt"
    assert run(capsys, "search", "--k", "2", "--max-n", "6", "--out", str(out))[0] == EXIT_HOLDS
    table = out.read_text()
    witness = tmp_path / "search.k2.n6.hg"
    assert str(witness) in table
    assert automorphism_group(read(witness)).order == 1


def test_lemma_subcommand(capsys):
    code, out, _ = run(capsys, "lemma", "a1-a6", "--k", "6", "--json")
    assert code == EXIT_HOLDS and all(json.loads(out)["details"]["checks"].values())
    code, out, _ = run(capsys, "lemma", "lemma1", "--k", "5")
    assert code == EXIT_HOLDS


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "asymhyper", "construct", "x1"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.startswith("6\n")
