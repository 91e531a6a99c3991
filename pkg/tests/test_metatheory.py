import pytest

from conftest import C, O, ctx
from eqlf import metatheory as mt
from eqlf.core import BULLET, Telescope, Var
from eqlf.evalt import numeral
from eqlf.metatheory import (
    DerivationSample,
    EnumBudget,
    Outcome,
    PreconditionError,
    check_functionality,
    check_presuppositions,
    check_substitution,
    check_weakening,
)

SMALL = EnumBudget(max_term_size=10, max_ctx_depth=4, sample_count=40)
EMPTY = Telescope(())


def sample(sig_id, context, obj, cls):
    return DerivationSample(sig_id, ctx(context), O(obj), C(cls))


def test_budget_validation():
    with pytest.raises(ValueError):
        EnumBudget(max_term_size=0)
    assert list(mt.enumerate("godel_t", EnumBudget(sample_count=0))) == []


def test_enumerate_is_deterministic():
    a = list(mt.enumerate("godel_t", SMALL, seed=2))
    b = list(mt.enumerate("godel_t", SMALL, seed=2))
    assert a == b and len(a) == SMALL.sample_count


def test_enumerate_finds_small_closed_and_open_samples():
    found = list(mt.enumerate("godel_t", EnumBudget(sample_count=300), seed=0))
    assert DerivationSample("godel_t", EMPTY, O("zero"), C("el nat")) in found
    assert any(
        len(s.context) and any(str(c).startswith("el ") for _, c in s.context) for s in found
    )
    assert all(check_presuppositions(s) is Outcome.PASS for s in found[:50])


def test_presuppositions():
    assert check_presuppositions(sample("godel_t", "", "zero", "el nat")) is Outcome.PASS
    dangling = DerivationSample("godel_t", EMPTY, Var("ghost"), C("el nat"))
    assert check_presuppositions(dangling) is Outcome.FAIL


def test_weakening():
    s = sample("godel_t", "x : el nat.", "succ x", "el nat")
    assert check_weakening(s, [("y", C("el nat"))]) is Outcome.PASS
    assert check_weakening(s, []) is Outcome.PASS
    assert check_weakening(s, [("h", C("Eq(el nat; x; zero)"))], position=1) is Outcome.PASS
    with pytest.raises(PreconditionError):
        check_weakening(s, [("y", C("el nope"))])
    wrong = sample("godel_t", "x : el nat.", "succ x", "tp")
    assert check_weakening(wrong, [("y", C("el nat"))]) is Outcome.FAIL


def test_substitution():
    s = sample("godel_t", "x : el nat.", "succ x", "el nat")
    assert check_substitution(s, "x", numeral(2)) is Outcome.PASS
    with pytest.raises(PreconditionError):
        check_substitution(s, "y", numeral(2))
    with pytest.raises(PreconditionError):
        check_substitution(s, "x", O("nat"))


def test_substitution_of_bullet_for_hypothesis():
    s = sample("godel_t", "h : Eq(el nat; 1; 1).", "h", "Eq(el nat; 1; 1)")
    assert check_substitution(s, "h", BULLET) is Outcome.PASS


def test_functionality():
    s = sample("godel_t", "A : tp. b : el A. s : el nat -> el A -> el A. x : el A.", "x", "el A")
    r1 = O("rec A b s zero")
    assert check_functionality(s, "x", r1, O("b")) is Outcome.PASS
    with pytest.raises(PreconditionError):
        check_functionality(s, "x", r1, O("s zero b"))


def test_functionality_negative_control():
    s = sample("godel_t", "x : el nat.", "succ x", "tp")
    assert check_functionality(s, "x", numeral(1), O("([y : el nat] y) 1")) is Outcome.FAIL


@pytest.mark.parametrize("sig_id", ["godel_t", "eq_type", "universes", "sigma_pos"])
def test_suite_smoke(sig_id):
    rep = mt.run_suite(sig_id, seed=0, budget=SMALL)
    assert rep.samples == SMALL.sample_count
    assert rep.failures == 0
    assert rep.tallies["substitution"].total > 0
    assert len(rep.lines()) == 4
