import io
import subprocess
import sys

from gdtwist.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_expand():
    assert run("expand", "--genus", "1", "-N", "2", "[a1,b1]") == (0, "1 + [a1,b1]\n")
    assert run("expand", "") == (0, "1\n")


def test_expand_structured():
    code, text = run("expand", "-N", "2", "a1", "--format", "structured")
    assert text.splitlines() == [
        "degree=0 basis=1 num=1 den=1",
        "degree=1 basis=a1 num=1 den=1",
        "degree=2 basis=a1a1 num=1 den=2",
    ]


def test_parse_error(capsys):
    code, _ = run("expand", "a1 c1")
    assert code == 2
    assert "'c1'" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert run("twist", "--k", "2", "-N", "3", "[a1,b1]")[0] == 2
    assert run("tau", "a1")[0] == 2
    assert run("nonsense")[0] == 2
    assert run("twist", "--framing", "2", "[a1,b1]")[0] == 2


def test_phi_free_labels():
    code, text = run("phi", "[g1,[[g2,g3],g4]]", "h", "1")
    assert code == 0
    # [h, ([[g2,g3],g4]^-1)^g1], freely reduced
    assert text.split() == ("h g1 g4 g2 g3 g2^-1 g3^-1 g4^-1 g3 g2 g3^-1 g2^-1 g1^-1 h^-1 "
                            "g1 g2 g3 g2^-1 g3^-1 g4 g3 g2 g3^-1 g2^-1 g4^-1 g1^-1").split()


def test_phi_bound_labels():
    code, text = run("phi", "[x,y]", "h", "1", "--bind", "x=a1", "--bind", "y=b1", "--genus", "1")
    # Phi_1 = [h, (y^-1)^x]
    assert text.split() == "h a1 B1 A1 h^-1 a1 b1 A1".split()


def test_tau_single_and_pair():
    code, text = run("tau", "--k", "2", "[a1,b1]")
    assert code == 0
    assert text.startswith("routes agree: yes; integral: yes; value:\n")
    code, text = run("tau", "--genus", "2", "--k", "2", "[[a1,a2],b2][a1,b1]", "[a1,b1]")
    assert code == 0 and "routes agree: yes; integral: yes" in text


def test_glue():
    code, text = run("glue", "[a1,b1]", "[a1,b1]")
    assert text == "a1 ⊗ (-2 [[a1,b1],b1])\nb1 ⊗ (-2 [a1,[a1,b1]])\n"
    code, text = run("glue", "[a1,b1]", "[a1,b1]", "--format", "structured")
    assert text.splitlines()[0] == "degree=2 basis=a1(x)[[a1,b1],b1] num=-2 den=1"


def test_decompose_and_twist():
    code, text = run("decompose", "--k", "2", "--depth", "2", "[a1,[a1,b1]][[a1,b1],b1]")
    assert text == "[a1,(a1 b1 A1 B1)] * [(a1 b1 A1 B1),b1]\n"
    code, text = run("twist", "--k", "2", "[a1,b1]", "b1")
    assert code == 0 and "routes agree: yes" in text


def test_check_commands():
    code, text = run("check", "lemma2.2", "--genus", "2")
    assert code == 0 and text.count("PASS") == 4
    code, text = run("check", "crossroute", "--genus", "2", "--k", "2", "--count", "2")
    assert code == 0 and "FAIL" not in text


def test_check_unknown(capsys):
    code, _ = run("check", "unknown")
    assert code == 2
    err = capsys.readouterr().err
    assert "lemma2.2" in err and "crossroute" in err


def test_deterministic_output():
    args = ("check", "pruning", "--seed", "7", "--format", "structured")
    assert run(*args) == run(*args)


def test_expansion_dump_and_reuse(tmp_path):
    code, text = run("expansion", "--genus", "1", "-N", "5")
    p = tmp_path / "theta.txt"
    p.write_text(text)
    assert run("tau", "--expansion", str(p), "[a1,b1]") == run("tau", "[a1,b1]")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "gdtwist", "expand", "-N", "1", "a1 b1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "1 + (a1 + b1)\n"
