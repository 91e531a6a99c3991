import pytest

from conftest import C, O, ctx, kernel
from eqlf import stdsigs
from eqlf.core import BULLET, SORT, Incl, PiCls
from eqlf.evalt import numeral, oracle_eval
from eqlf.kernel import (
    ArgumentClassMismatch,
    CannotInferBullet,
    CheckConfig,
    ClassMismatch,
    DuplicateName,
    EndpointIllTyped,
    EqualityNotProven,
    FuelExhausted,
    Kernel,
    NotAFunction,
    NotASort,
    Outcome,
    UnboundVariable,
    check_class,
    check_context,
    check_object,
    equal_classes,
    equal_objects,
    infer_object,
    normalize,
)

REC_CTX = "A : tp. b : el A. s : el nat -> el A -> el A. x : el nat."


# -- check_context / check_class ----------------------------------------------


def test_godel_t_checks(godel_t):
    check_context(godel_t)


def test_unbound_in_context():
    with pytest.raises(UnboundVariable) as e:
        check_context((), ctx("x : nat."))
    assert e.value.name == "nat" and e.value.position == "x"


def test_dependent_context(godel_t):
    check_context(godel_t, ctx("A : tp. x : el A."))


def test_duplicate_name(godel_t):
    with pytest.raises(DuplicateName):
        check_context(godel_t, ctx("zero : el nat."))


def test_check_class_examples(godel_t):
    check_class(godel_t, (), SORT)
    check_class(godel_t, (), C("Eq(el nat; zero; zero)"))
    with pytest.raises(NotASort):
        check_class(godel_t, (), PiCls(SORT, SORT, "_"))


def test_endpoint_ill_typed(godel_t):
    with pytest.raises(EndpointIllTyped) as e:
        check_class(godel_t, (), C("Eq(el nat; zero; nat)"))
    assert e.value.side == "rhs"


def test_eq_sort_must_be_sort(godel_t):
    with pytest.raises(NotASort):
        check_class(godel_t, (), C("Eq(zero; zero; zero)"))


# -- inference and checking ------------------------------------------------------


def test_infer_examples(godel_t):
    assert infer_object(godel_t, (), O("zero")) == C("el nat")
    assert infer_object(godel_t, (), O("succ zero")) == C("el nat")
    with pytest.raises(CannotInferBullet):
        infer_object(godel_t, (), BULLET)


def test_infer_app_instantiates_codomain(godel_t):
    k = infer_object(godel_t, ctx(REC_CTX), O("rec A b s"))
    assert k == C("el nat -> el A")


def test_not_a_function(godel_t):
    with pytest.raises(NotAFunction):
        infer_object(godel_t, (), O("zero zero"))


def test_argument_mismatch(godel_t):
    with pytest.raises(ArgumentClassMismatch):
        infer_object(godel_t, (), O("succ nat"))


def test_lam_infers_pi(godel_t):
    assert infer_object(godel_t, (), O("[x : el nat] succ x")) == C("el nat -> el nat")


def test_pi_sort_is_a_sort():
    k = kernel("dependent_t")
    assert k.infer(O("{x : el nat} el nat")) == SORT
    # a Pi-sort used as a class exposes a Pi-class
    k2 = kernel("dependent_t", "f : ({x : el nat} el nat).")
    assert k2.infer(O("f zero")) == C("el nat")
    assert k2.whnf_class(C("({x : el nat} el nat)")) == C("{x : el nat} el nat")


def test_bullet_checks_rule_schema(godel_t):
    k = kernel("godel_t", "A : tp. b : el A. s : el nat -> el A -> el A.")
    k.check(BULLET, C("Eq(el A; rec A b s zero; b)"))


def test_bullet_rejected_when_not_provable(godel_t):
    with pytest.raises(EqualityNotProven):
        check_object(godel_t, (), BULLET, C("Eq(el nat; zero; succ zero)"))
    # independent witness: the two sides evaluate to different numerals
    assert oracle_eval(O("zero")) != oracle_eval(O("succ zero"))


def test_lam_domain_mismatch(godel_t):
    with pytest.raises(ClassMismatch):
        check_object(godel_t, (), O("[x : tp] zero"), C("el nat -> el nat"))


def test_bullet_against_non_equation(godel_t):
    with pytest.raises(ClassMismatch):
        check_object(godel_t, (), BULLET, C("el nat"))


def test_level_builtins():
    k = kernel("universes", "i : Lvl.")
    assert k.infer(O("lsuc i")) == Incl(O("Lvl"))
    assert k.infer(O("u (lsuc lzero)")) == C("tp")
    with pytest.raises(ClassMismatch):
        k.infer(O("lsuc zero"))


# -- equality -------------------------------------------------------------------


def test_equal_classes_examples():
    k = kernel("universes")
    assert k.equal_classes(SORT, SORT).proven
    assert k.equal_classes(C("ext lzero nat_bar"), C("nat")).proven
    v = equal_classes(stdsigs.load("godel_t"), (), C("nat"), C("Eq(el nat; zero; zero)"))
    assert v.outcome is Outcome.NOT_PROVEN


def test_whnf_class_examples():
    k = kernel("universes")
    assert k.whnf_class(C("ext lzero nat_bar")) == C("nat")
    eq = C("Eq(el nat; zero; zero)")
    assert k.whnf_class(eq) == eq
    pi = Incl(O("{x : el nat} el nat"))
    assert k.whnf_class(pi) == C("{x : el nat} el nat")


def test_rule_instance_proves(godel_t):
    v = equal_objects(godel_t, ctx(REC_CTX), O("rec A b s zero"), O("b"), O("el A"))
    assert v.proven


def test_beta_instance(godel_t):
    v = equal_objects(godel_t, ctx(REC_CTX), O("([y : el nat] y) x"), O("x"), O("el nat"))
    assert v.proven


def test_reflection_then_rewrite(godel_t):
    steps = []
    k = kernel("godel_t", REC_CTX + " h : Eq(el nat; x; zero).", trace_sink=steps.append)
    assert k.equal_objects(O("rec A b s x"), O("b"), O("el A")).proven
    # the derivation: rewrite x to zero by the hypothesis, then nat_beta_z
    rules = [s.rule for s in steps]
    assert rules == ["reflection", "nat_beta_z"]
    assert steps[0].redex == O("x") and steps[0].contractum == O("zero")
    assert all(k.replay(steps))
    no_h = kernel("godel_t", REC_CTX)
    assert no_h.equal_objects(O("rec A b s x"), O("b"), O("el A")).outcome is Outcome.NOT_PROVEN


def test_unicity(godel_t):
    k = kernel("godel_t", "p : Eq(el nat; zero; zero). q : Eq(el nat; zero; zero).")
    assert k.equal_objects(O("p"), O("q"), C("Eq(el nat; zero; zero)")).proven


def test_reflection_runs_both_ways():
    k = kernel("godel_t", "x : el nat. y : el nat. h : Eq(el nat; succ x; y).")
    assert k.equal_objects(O("y"), O("succ x"), O("el nat")).proven
    assert k.equal_objects(O("succ y"), O("succ (succ x)"), O("el nat")).proven


def test_eqref_feeds_reflection():
    k = kernel("eq_type", "A : tp. m : el A. n : el A. p : el (eq A m n).")
    assert k.equal_objects(O("m"), O("n"), O("el A")).proven
    assert k.equal_objects(O("p"), O("self A m"), O("el (eq A m n)")).proven


def test_eta_for_framework_functions():
    k = kernel("godel_t", "f : el nat -> el nat.")
    assert k.equal_objects(O("f"), O("[y : el nat] f y"), C("el nat -> el nat")).proven
    off = kernel("godel_t", "f : el nat -> el nat.", eta_enabled=False)
    assert not off.equal_objects(O("f"), O("[y : el nat] f y"), C("el nat -> el nat")).proven


def test_signature_eta_is_type_directed():
    k = kernel("godel_t", "f : el (arr nat nat).")
    eta = O("lam nat nat ([y : el nat] app nat nat f y)")
    assert k.equal_objects(eta, O("f"), O("el (arr nat nat)")).proven
    assert k.equal_objects(O("f"), eta, O("el (arr nat nat)")).proven


def test_sigma_eta():
    k = kernel("sigma_neg", "A : tp. B : el A -> tp. p : el (sig A B).")
    v = k.equal_objects(O("pair A B (fst A B p) (snd A B p)"), O("p"), O("el (sig A B)"))
    assert v.proven


# -- normalization and fuel ---------------------------------------------------------


PLUS = "([m : el nat] [n : el nat] rec nat n ([p : el nat] [r : el nat] succ r) m)"


def test_normalize_examples(godel_t):
    # expected value frozen from the independent evaluator
    assert oracle_eval(O(f"{PLUS} 2 2")).value == 4
    assert normalize(godel_t, (), O(f"{PLUS} 2 2")) == numeral(4)
    assert normalize(godel_t, (), numeral(3)) == numeral(3)


def test_nat_beta_s_single_step(godel_t):
    steps = []
    k = Kernel(godel_t, ctx(REC_CTX + " n : el nat."), CheckConfig(trace_sink=steps.append))
    k.whnf(O("rec A b s (succ n)"))
    assert [(s.rule, s.contractum) for s in steps] == [("nat_beta_s", O("s n (rec A b s n)"))]


def test_normalize_is_idempotent(godel_t):
    k = Kernel(godel_t)
    t = k.normalize(O(f"[k : el nat] {PLUS} k 2"))
    assert k.normalize(t) == t


def test_fuel_exhaustion(godel_t):
    k = Kernel(godel_t, (), CheckConfig(fuel=5))
    with pytest.raises(FuelExhausted) as e:
        k.normalize(O(f"{PLUS} 3 3"))
    assert e.value.steps_used == 5
    v = k.equal_objects(O(f"{PLUS} 3 3"), numeral(6), O("el nat"))
    assert v.outcome is Outcome.FUEL_EXHAUSTED and v.steps_used == 5


def test_fuel_must_be_positive():
    with pytest.raises(ValueError):
        CheckConfig(fuel=0)


def test_trace_replay_rejects_forged_steps(godel_t):
    steps = []
    k = Kernel(godel_t, (), CheckConfig(trace_sink=steps.append))
    k.normalize(O(f"{PLUS} 1 1"))
    assert steps and all(k.replay(steps))
    forged = [type(s)(s.rule, s.position, s.redex, O("zero")) for s in steps]
    assert not all(k.replay(forged))
