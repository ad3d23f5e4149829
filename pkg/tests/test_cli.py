import json
import subprocess
import sys

import pytest

from gfgkit.cli import main
from gfgkit.textfmt import parse_arena, parse_automaton


@pytest.fixture(scope="module")
def fx_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    assert main(["fixtures", "--export", str(d)]) == 0
    return d


def run(capsys, *argv):
    code = main([str(x) for x in argv])
    return code, capsys.readouterr().out


def pair(d, name):
    return ["--automaton", d / f"{name}.aut", "--reference", d / f"{name}.ref.aut"]


def test_check_gfg_exit_codes(fx_dir, capsys):
    code, out = run(capsys, "check-gfg", *pair(fx_dir, "F1"))
    assert code == 0 and "verdict: GFG" in out and "transducer M_E" in out
    code, out = run(capsys, "check-gfg", *pair(fx_dir, "F2"))
    assert code == 1 and "nondeterminism: NOT compliant" in out


def test_check_gfg_with_wrong_reference(fx_dir, capsys):
    code, out = run(capsys, "check-gfg", "--automaton", fx_dir / "F2.aut",
                    "--reference", fx_dir / "F1.ref.aut")
    assert code == 3
    assert "falsified" in out and "(ab)^w" in out


def test_skip_reference_marks_verdict_conditional(fx_dir, capsys):
    code, out = run(capsys, "check-gfg", "--skip-reference-check", *pair(fx_dir, "F3"))
    assert code == 0 and "conditional" in out


def test_json_output_is_byte_identical(fx_dir, capsys):
    first = run(capsys, "--json", "check-gfg", *pair(fx_dir, "D2-alt"))
    second = run(capsys, "check-gfg", "--json", *pair(fx_dir, "D2-alt"))
    assert first == second
    records = [json.loads(line) for line in first[1].splitlines()]
    assert records[0]["event"] == "reference" and records[0]["status"] == "verified"
    assert records[1]["gfg"] is True


def test_determinize_writes_parseable_automaton(fx_dir, tmp_path, capsys):
    target = tmp_path / "det.aut"
    code, _ = run(capsys, "determinize", *pair(fx_dir, "F3c"), "-o", target)
    assert code == 0
    det = parse_automaton(target.read_text())
    assert det.is_deterministic
    code, out = run(capsys, "equiv", "--left", target, "--right", fx_dir / "F3c.ref.aut")
    assert code == 0 and "verified" in out


def test_determinize_finite_gives_dfa(fx_dir, capsys):
    code, out = run(capsys, "determinize", *pair(fx_dir, "Mod3-and"))
    assert code == 0
    text = out[out.index("automaton"):]
    dfa = parse_automaton(text)
    assert dfa.acceptance.kind == "finite" and dfa.is_deterministic


def test_determinize_refuses_non_gfg(fx_dir, capsys):
    code, out = run(capsys, "determinize", *pair(fx_dir, "F2"))
    assert code == 1 and "not GFG" in out


def test_acw_to_dcw(fx_dir, capsys):
    code, out = run(capsys, "acw-to-dcw", *pair(fx_dir, "D2-alt"))
    assert code == 0 and "# pipeline:" in out
    dcw = parse_automaton(out[out.index("automaton"):])
    assert dcw.is_deterministic and dcw.acceptance.kind == "cobuchi"


def test_breakpoint_and_dualize(fx_dir, capsys):
    code, out = run(capsys, "breakpoint", "--automaton", fx_dir / "ABW3.aut")
    assert code == 0 and "<q0/q0>" in out
    code, out = run(capsys, "dualize", "--automaton", fx_dir / "F2.aut")
    assert code == 0 and "cobuchi" in out and "q0 & qa & qb" in out
    code, out = run(capsys, "normalize", "--form", "cnf", "--automaton", fx_dir / "F2.aut")
    assert code == 0


def test_breakpoint_rejects_cobuchi(fx_dir, capsys):
    code, _ = run(capsys, "breakpoint", "--automaton", fx_dir / "D2.aut")
    assert code == 2


def test_member(fx_dir, capsys):
    code, out = run(capsys, "member", "--automaton", fx_dir / "F2.aut", "--word", "ab(a)^w")
    assert code == 0 and "accepted" in out
    code, out = run(capsys, "member", "--automaton", fx_dir / "F2.aut", "--word", "(ab)^w")
    assert "rejected" in out
    code, out = run(capsys, "member", "--automaton", fx_dir / "Mod3-or.aut", "--word", "aaab")
    assert "accepted" in out


def test_member_bad_word_is_usage_error(fx_dir, capsys):
    code, _ = run(capsys, "member", "--automaton", fx_dir / "F2.aut", "--word", "abab")
    assert code == 2


def test_product_and_solve(fx_dir, tmp_path, capsys):
    arena = tmp_path / "g.arena"
    arena.write_text("arena g\nvertex u owner=A label=a\nvertex v owner=A label=b\n"
                     "edge u -> v\nedge v -> u\nroot u\n")
    code, out = run(capsys, "product", "--arena", arena, "--automaton", fx_dir / "F2.aut")
    assert code == 0
    game = tmp_path / "p.game"
    game.write_text(out)
    assert len(parse_arena(out)) > 2
    code, out = run(capsys, "solve", "--game", game)
    assert code == 0 and "winner from root: Adam" in out


def test_equiv_exit_codes(fx_dir, capsys):
    code, out = run(capsys, "equiv", "--left", fx_dir / "F2.aut", "--right", fx_dir / "F1.aut")
    assert code == 1 and "(ab)^w" in out
    code, _ = run(capsys, "equiv", "--left", fx_dir / "F3.aut", "--right", fx_dir / "F3.ref.aut")
    assert code == 0


def test_composition_test_command(fx_dir, capsys):
    code, out = run(capsys, "composition-test", *pair(fx_dir, "F2"), "--trials", 10)
    assert code == 1 and "two-player:" in out and "trial 0" in out
    code, out = run(capsys, "composition-test", *pair(fx_dir, "F1"), "--trials", 10)
    assert code == 0


def test_residual_check_command(fx_dir, capsys):
    code, out = run(capsys, "residual-check", *pair(fx_dir, "Mod4-or"))
    assert code == 0 and "minimal deterministic size 4" in out


def test_validate_and_parse_errors(tmp_path, fx_dir, capsys):
    code, out = run(capsys, "validate", "--automaton", fx_dir / "NoBB-alt.aut")
    assert code == 0 and "ok" in out
    broken = tmp_path / "broken.aut"
    broken.write_text((fx_dir / "F2.aut").read_text().replace("delta r b = r\n", ""))
    code, _ = run(capsys, "validate", "--automaton", broken)
    assert code == 2


def test_missing_file_is_usage_error(tmp_path, capsys):
    code, _ = run(capsys, "dualize", "--automaton", tmp_path / "nope.aut")
    assert code == 2


def test_module_entry_point(fx_dir):
    proc = subprocess.run([sys.executable, "-m", "gfgkit", "--json", "validate",
                           "--automaton", str(fx_dir / "F1.aut")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["problems"] == []
