import pytest

from eqlf.cli import resolve, run, trace_render
from eqlf.kernel import TraceStep


def eqlf(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("sig_id", ["godel_t", "eq_type", "universes", "sigma_pos"])
def test_check_corpus(capsys, sig_id):
    code, out, _ = eqlf(capsys, "check", sig_id)
    assert code == 0 and out.startswith("ok")


def test_check_bundled_file(capsys):
    assert eqlf(capsys, "check", "godel_t.eqlf")[0] == 0


def test_type(capsys):
    code, out, _ = eqlf(capsys, "type", "-s", "godel_t.eqlf", "-e", "succ zero")
    assert (code, out) == (0, "el nat\n")


def test_eq_proven(capsys):
    code, out, _ = eqlf(capsys, "eq", "-s", "godel_t", "-s", "arith", "-e", "plus 2 2", "-e", "4", "-c", "el nat")
    assert (code, out) == (0, "proven-equal\n")


def test_eq_not_proven(capsys):
    code, out, _ = eqlf(capsys, "eq", "-s", "godel_t", "-e", "zero", "-e", "succ zero", "-c", "el nat")
    assert (code, out) == (1, "not-proven\n")


def test_eq_needs_two_exprs(capsys):
    assert eqlf(capsys, "eq", "-s", "godel_t", "-e", "zero", "-c", "el nat")[0] == 2


def test_fuel_exit_code_and_monotonicity(capsys):
    args = ["eq", "-s", "godel_t", "-s", "arith", "-e", "times 4 4", "-e", "16", "-c", "el nat"]
    assert eqlf(capsys, *args, "--fuel", "20")[0] == 3
    assert eqlf(capsys, *args, "--fuel", "2000")[0] == 0
    assert eqlf(capsys, *args, "--fuel", "20000")[0] == 0


def test_fuel_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("EQLF_FUEL", "20")
    args = ["eq", "-s", "godel_t", "-s", "arith", "-e", "times 4 4", "-e", "16", "-c", "el nat"]
    assert eqlf(capsys, *args)[0] == 3
    assert eqlf(capsys, *args, "--fuel", "5000")[0] == 0


def test_parse_error_exit(capsys):
    code, _, err = eqlf(capsys, "type", "-s", "godel_t", "-e", "succ (zero")
    assert code == 2 and "<expr>:1:" in err


def test_ill_formed_signature(tmp_path, capsys):
    f = tmp_path / "bad.eqlf"
    f.write_text("tp : Sort.\nel : tp -> Sort.\nx : el nat.\n", encoding="utf-8")
    code, out, err = eqlf(capsys, "check", str(f))
    assert code == 1 and out == ""
    assert f"{f}:3:1" in err and "nat" in err


def test_missing_file(capsys):
    assert eqlf(capsys, "check", "no/such.eqlf")[0] == 2


def test_ill_typed_expression(capsys):
    code, _, err = eqlf(capsys, "type", "-s", "godel_t", "-e", "succ nat")
    assert code == 1 and err


def test_context_flag(capsys):
    code, out, _ = eqlf(
        capsys, "eq", "-s", "godel_t",
        "-x", "A : tp. b : el A. s : el nat -> el A -> el A. x : el nat. h : Eq(el nat; x; zero).",
        "-e", "rec A b s x", "-e", "b", "-c", "el A",
    )
    assert code == 0


def test_no_eta(capsys):
    args = ["eq", "-s", "godel_t", "-x", "f : el nat -> el nat.", "-e", "f", "-e", "[y : el nat] f y",
            "-c", "el nat -> el nat"]
    assert eqlf(capsys, *args)[0] == 0
    assert eqlf(capsys, *args, "--no-eta")[0] == 1


def test_norm_and_trace(capsys):
    code, out, err = eqlf(capsys, "norm", "-s", "godel_t", "-e", "([x : el nat] succ x) zero", "--trace")
    assert (code, out) == (0, "succ zero\n")
    assert err == "app-lam @ root\n"
    code, out, err = eqlf(capsys, "norm", "-s", "godel_t", "-e", "zero", "--trace")
    assert err == ""
    code, out, err = eqlf(capsys, "norm", "-s", "godel_t", "-s", "arith", "-e", "plus 1 1", "--numerals", "--trace")
    assert out == "2\n"
    assert "plus_def @ root" in err and "nat_beta_s" in err


def test_trace_render():
    assert trace_render([]) == ""
    assert trace_render([TraceStep("nat_beta_s", (1, 2), None, None)]) == "nat_beta_s @ 1.2\n"


def test_corpus_listing(capsys):
    code, out, _ = eqlf(capsys, "corpus")
    assert code == 0 and len(out.splitlines()) == 7
    assert out.splitlines()[0].startswith("godel_t\tgodel_t\treduction=3\texpansion=1")


def test_meta(capsys):
    code, out, _ = eqlf(capsys, "meta", "--sig-id", "godel_t", "--seeds", "0", "--samples", "20")
    assert code == 0
    assert "godel_t presuppositions: pass=20 fail=0 inconclusive=0" in out


def test_resolve_prefers_paths(tmp_path):
    f = tmp_path / "godel_t"
    f.write_text("tp : Sort.", encoding="utf-8")
    assert resolve(str(f))[1] == "tp : Sort."
    assert "dependent" in resolve("eq_type")[1] or "pi" in resolve("eq_type")[1]
