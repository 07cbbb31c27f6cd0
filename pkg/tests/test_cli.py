import subprocess
import sys
from pathlib import Path

import pytest

from vankampen import cli
from vankampen import diagram as D
from vankampen import presgen as P
from vankampen import smap as SM

FIX = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def pres_file(tmp_path_factory, family4):
    path = tmp_path_factory.mktemp("pres") / "p4.txt"
    path.write_text(P.format_presentation(family4))
    return path


def test_gen_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert run(capsys, "gen", "--n-max", 1, "--out", a)[0] == cli.OK
    assert run(capsys, "gen", "--n-max", 1, "--out", b)[0] == cli.OK
    assert a.read_bytes() == b.read_bytes()
    fam = P.parse_presentation(a.read_text())
    assert fam.params[1].k == 4 and fam.params[1].M == 46


def test_gen_rejects_bad_n(capsys):
    assert run(capsys, "gen", "--n-max", 0)[0] == cli.USAGE


def test_check(capsys, pres_file):
    code, out, _ = run(capsys, "check", pres_file, "--floor")
    assert code == cli.OK and "FAIL" not in out
    assert run(capsys, "check", pres_file, "--conditions", "C99")[0] == cli.USAGE
    assert run(capsys, "check", "/nonexistent/file")[0] == cli.USAGE


def test_check_sabotaged_file(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    assert run(capsys, "gen", "--n-max", 3, "--force-m", 1, "--out", bad)[0] == cli.OK
    code, out, _ = run(capsys, "check", bad)
    assert code == cli.NEGATIVE
    failed = {line.split()[0] for line in out.splitlines() if "FAIL" in line}
    assert failed == {"C3", "C5", "C6"}


def test_check_malformed_file(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("not a presentation\n")
    assert run(capsys, "check", bad)[0] == cli.USAGE


def test_solve_word(capsys, pres_file, tmp_path):
    code, out, _ = run(capsys, "solve", "word", pres_file, "--word", "a")
    assert code == cli.NEGATIVE and out.startswith("nontrivial")
    cert = tmp_path / "cert.txt"
    code, out, _ = run(capsys, "solve", "word", pres_file, "--word", "", "--cert", cert)
    assert code == cli.OK and out.startswith("trivial")
    assert D.validate_diagram(D.parse_diagram(cert.read_text()))


def test_solve_conj(capsys, tmp_path):
    cert = tmp_path / "ann.txt"
    code, out, _ = run(capsys, "solve", "conj", "--empty", "--w1", "ab", "--w2", "ba", "--cert", cert)
    assert code == cli.OK and out.startswith("conjugate")
    d = D.parse_diagram(cert.read_text())
    assert [d.read(c) for c in d.map.contours] == ["ab", "AB"]
    code, out, _ = run(capsys, "solve", "conj", "--empty", "--w1", "a", "--w2", "b")
    assert code == cli.NEGATIVE and out.startswith("not-conjugate")


def test_solve_foreign_and_undecided(capsys):
    base = ["solve", "word", "--relators", "abAB", "--word", "aabAAB", "--area-cap", 8]
    code, out, _ = run(capsys, *base)
    assert code == cli.OK and "unsound-for-foreign" in out
    code, out, _ = run(capsys, *base, "--assert-isoperimetric")
    assert code == cli.OK and "unsound-for-foreign" not in out
    code, out, _ = run(capsys, *base, "--node-cap", 1)
    assert code == cli.UNDECIDED and out.startswith("undecided")


def test_solve_batch(capsys, tmp_path):
    batch = tmp_path / "jobs.txt"
    batch.write_text("# comment\nword aA\nconj ab ba\n\nword ab\n")
    code, out, _ = run(capsys, "solve", "batch", "--empty", "--batch", batch)
    assert code == cli.OK
    assert out.splitlines() == ["word aA : trivial area=0/1 faces=0 relators=-",
                                "conj ab ba : conjugate area=0/1 faces=0 relators=-",
                                "word ab : nontrivial relators=-"]
    batch.write_text("frobnicate\n")
    assert run(capsys, "solve", "batch", "--empty", "--batch", batch)[0] == cli.USAGE


def test_solve_usage_errors(capsys):
    assert run(capsys, "solve", "word", "--word", "a")[0] == cli.USAGE
    assert run(capsys, "solve", "word", "--empty", "--word", "xyz")[0] == cli.USAGE
    assert run(capsys, "solve", "word", "--empty", "--word", "a", "--area-cap", "-1")[0] == cli.USAGE
    assert run(capsys)[0] == cli.USAGE


@pytest.mark.parametrize("name, text", [
    ("torus", "orientable genus 1 (torus); cl<=1 sql<=3"),
    ("rp2", "non-orientable with 1 cross-cap (projective-plane); cl<=- sql<=1"),
])
def test_diagram_classify(capsys, name, text):
    code, out, _ = run(capsys, "diagram", "classify", FIX / f"{name}.txt")
    assert code == cli.OK and out.startswith("closure " + text)


def test_diagram_move_precondition(capsys):
    code, _, err = run(capsys, "diagram", "move", FIX / "torus.txt", "--e1", 1, "--e2", 1)
    assert code == cli.NEGATIVE and "precondition failed" in err


def test_diagram_regularize_golden(capsys):
    code, out, _ = run(capsys, "diagram", "regularize", FIX / "augmented.txt")
    assert code == cli.OK
    assert out == (FIX / "augmented_regularized.txt").read_text()


def test_diagram_validate_and_reduce(capsys, tmp_path):
    assert run(capsys, "diagram", "validate", FIX / "disc_abAB.txt")[0] == cli.OK
    out = tmp_path / "r.txt"
    code, _, err = run(capsys, "diagram", "reduce", FIX / "disc_abAB.txt", "--out", out)
    assert code == cli.OK and err.startswith("reduce")
    assert D.isomorphic(D.parse_diagram(out.read_text()),
                        D.parse_diagram((FIX / "disc_abAB.txt").read_text()))
    bad = tmp_path / "bad.txt"
    bad.write_text("diagram v1\nedge 1 1 2 label=a\n")
    assert run(capsys, "diagram", "validate", bad)[0] == cli.USAGE


def test_diagram_smap_check(capsys, tmp_path):
    pres, _ = SM.toy_presentation()
    f = tmp_path / "toy.txt"
    f.write_text(D.format_diagram(D.one_face_disc(pres.word(1), 1)))
    code, out, _ = run(capsys, "diagram", "smap-check", f, "--toy")
    assert code == cli.OK and "violated" not in out
    assert run(capsys, "diagram", "smap-check", f)[0] == cli.USAGE


def test_emitted_files_round_trip(capsys, tmp_path):
    for src in sorted(p for p in FIX.glob("*.txt") if p.name != "solver_suite.txt"):
        out = tmp_path / src.name
        assert run(capsys, "diagram", "regularize", src, "--out", out)[0] == cli.OK
        text = out.read_text()
        d = D.parse_diagram(text)
        assert D.validate_diagram(d) and D.format_diagram(d) == text


def test_match(capsys):
    code, out, _ = run(capsys, "match", "A=1,2; B=p,q; R=1:p,2:p,2:q")
    assert code == cli.OK and out.strip() == "assignment 1->p, 2->q"
    code, out, _ = run(capsys, "match", "A=1,2; B=p; R=1:p,2:p")
    assert code == cli.NEGATIVE and out.startswith("deficient")
    assert run(capsys, "match", "A=1; junk")[0] == cli.USAGE


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--relators", "abAB", "--word", "BAbaaA", "--radius", 1)
    assert code == cli.OK and out.startswith("trivial")
    code, out, _ = run(capsys, "oracle", "--empty", "--word", "ab")
    assert code == cli.NEGATIVE and out.startswith("nontrivial-within-radius")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "vankampen", "match", "A=1; B=p; R=1:p"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "assignment 1->p"
