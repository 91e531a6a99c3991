import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import C, O
from eqlf import evalt, stdsigs
from eqlf.core import App, size
from eqlf.evalt import (
    PLUS,
    PLUS_DEP,
    TIMES,
    TIMES_DEP,
    Numeral,
    StepBudgetExceeded,
    Stuck,
    agreement,
    from_numeral,
    numeral,
    oracle_eval,
)
from eqlf.kernel import CheckConfig, FuelExhausted, Kernel


EL_NAT = C("el nat")


def call(f, m, n):
    return App(App(f, numeral(m)), numeral(n))


def test_numeral_examples():
    assert numeral(0) == O("zero")
    assert numeral(1) == O("succ zero")
    assert numeral(4) == O("succ (succ (succ (succ zero)))")


@given(st.integers(0, 60))
def test_from_numeral_inverts(n):
    assert from_numeral(numeral(n)) == n


def test_oracle_examples():
    assert oracle_eval(call(PLUS, 2, 2)) == Numeral(4)
    assert oracle_eval(O("rec nat (succ zero) ([p : el nat] [r : el nat] zero) zero")) == Numeral(1)
    assert oracle_eval(numeral(7)) == Numeral(7)


def test_oracle_stuck_and_budget():
    assert isinstance(oracle_eval(O("app nat nat f zero")), Stuck)
    with pytest.raises(StepBudgetExceeded):
        oracle_eval(call(TIMES, 5, 5), budget=10)


def test_oracle_arr_beta():
    prog = O("app nat nat (lam nat nat ([x : el nat] succ x)) 2")
    assert oracle_eval(prog) == Numeral(3)


def test_agreement_examples():
    sig = stdsigs.load("godel_t")
    assert agreement(sig, call(PLUS, 2, 2))
    assert agreement(sig, call(TIMES, 3, 3))
    with pytest.raises(ValueError):
        agreement(sig, O("succ x"))
    with pytest.raises(FuelExhausted):
        agreement(sig, call(TIMES, 3, 3), CheckConfig(fuel=3))


def test_plus_table():
    sig = stdsigs.load("godel_t")
    k = Kernel(sig)
    for m in range(9):
        for n in range(9):
            prog = call(PLUS, m, n)
            assert oracle_eval(prog) == Numeral(m + n)
            assert k.equal_objects(prog, numeral(m + n), O("el nat")).proven


def test_times_table():
    sig = stdsigs.load("godel_t")
    for m in range(6):
        for n in range(6):
            assert oracle_eval(call(TIMES, m, n)) == Numeral(m * n)
            assert agreement(sig, call(TIMES, m, n))


def test_dependent_variants():
    k = Kernel(stdsigs.load("dependent_t"))
    assert k.normalize(call(PLUS_DEP, 3, 4)) == numeral(7)
    assert k.normalize(call(TIMES_DEP, 2, 3)) == numeral(6)


def test_defined_constants_agree():
    k = Kernel(stdsigs.load("arith"))
    assert k.normalize(O("times 3 (plus 1 2)")) == numeral(9)
    k_dep = Kernel(stdsigs.load("arith_dep"))
    assert k_dep.normalize(O("times 3 (plus 1 2)")) == numeral(9)


def test_generated_programs():
    sig = stdsigs.load("godel_t")
    k = Kernel(sig)
    progs = evalt.programs(200, seed=0)
    assert len(progs) == 200 and len(set(progs)) == 200
    assert max(size(p) for p in progs) <= 12
    for p in progs:
        k.check(p, EL_NAT)
        assert agreement(sig, p)


def test_generation_is_deterministic():
    assert evalt.programs(20, seed=3) == evalt.programs(20, seed=3)
    assert evalt.programs(20, seed=3) != evalt.programs(20, seed=4)
