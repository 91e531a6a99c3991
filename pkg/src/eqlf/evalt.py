"""Arithmetic in Goedel's T, and an independent evaluator to check the kernel against.

The oracle below shares no reduction code with the kernel: it has its own
de Bruijn substitution and steps call-by-name by framework beta, the two
recursor equations and ``arr_beta`` only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Union

from eqlf.core import App, BVar, Lam, Object, Var, free_vars, lam, size
from eqlf.kernel import CheckConfig, Kernel
from eqlf.sigparse import parse_object

NAT = Var("nat")
ZERO = Var("zero")
SUCC = Var("succ")

PLUS_SRC = "[m : el nat] [n : el nat] rec nat n ([p : el nat] [r : el nat] succ r) m"
TIMES_SRC = (
    "[m : el nat] [n : el nat] rec nat zero"
    f" ([p : el nat] [r : el nat] ({PLUS_SRC}) n r) m"
)
# the same programs against dependent T, eliminating into a constant family
PLUS_DEP_SRC = "[m : el nat] [n : el nat] rec ([k : el nat] nat) n ([p : el nat] [r : el nat] succ r) m"
TIMES_DEP_SRC = (
    "[m : el nat] [n : el nat] rec ([k : el nat] nat) zero"
    f" ([p : el nat] [r : el nat] ({PLUS_DEP_SRC}) n r) m"
)

PLUS = parse_object(PLUS_SRC)
TIMES = parse_object(TIMES_SRC)
PLUS_DEP = parse_object(PLUS_DEP_SRC)
TIMES_DEP = parse_object(TIMES_DEP_SRC)

GODEL_T_CONSTANTS = frozenset({"nat", "arr", "zero", "succ", "rec", "lam", "app", "el", "tp"})
BUDGET = 10**6


def numeral(n: int) -> Object:
    if n < 0:
        raise ValueError("numerals are non-negative")
    t: Object = ZERO
    for _ in range(n):
        t = App(SUCC, t)
    return t


def from_numeral(t: Object) -> Optional[int]:
    """Inverse of ``numeral``; None for anything that is not a succ-chain."""
    n = 0
    while isinstance(t, App) and t.fun == SUCC:
        t, n = t.arg, n + 1
    return n if t == ZERO else None


@dataclass(frozen=True)
class Numeral:
    value: int

    def to_object(self) -> Object:
        return numeral(self.value)


@dataclass(frozen=True)
class Stuck:
    term: Object


class StepBudgetExceeded(Exception):
    def __init__(self, steps: int):
        super().__init__(f"no value after {steps} steps")
        self.steps = steps


@dataclass
class OracleState:
    term: Object
    steps: int = 0


# -- de Bruijn plumbing, deliberately separate from eqlf.core ---------------


def _shift(t: Object, d: int, cutoff: int = 0) -> Object:
    if isinstance(t, BVar):
        return BVar(t.index + d) if t.index >= cutoff else t
    if isinstance(t, App):
        return App(_shift(t.fun, d, cutoff), _shift(t.arg, d, cutoff))
    if isinstance(t, Lam):
        # domains are sorts; the oracle never inspects them
        return Lam(t.domain, _shift(t.body, d, cutoff + 1), t.binder)
    return t


def _beta(body: Object, arg: Object, depth: int = 0) -> Object:
    if isinstance(body, BVar):
        if body.index == depth:
            return _shift(arg, depth)
        return BVar(body.index - 1) if body.index > depth else body
    if isinstance(body, App):
        return App(_beta(body.fun, arg, depth), _beta(body.arg, arg, depth))
    if isinstance(body, Lam):
        return Lam(body.domain, _beta(body.body, arg, depth + 1), body.binder)
    return body


def _unspine(t: Object) -> tuple[Object, list[Object]]:
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def _spine(head: Object, args) -> Object:
    for a in args:
        head = App(head, a)
    return head


def _step(t: Object) -> Optional[Object]:
    """One call-by-name step at the head, or None if ``t`` is head-normal."""
    head, args = _unspine(t)
    if isinstance(head, Lam) and args:
        return _spine(_beta(head.body, args[0]), args[1:])
    if head == Var("rec") and len(args) >= 4:
        a, b, s, n = args[:4]
        rest = args[4:]
        nh, nargs = _unspine(n)
        if n == ZERO:
            return _spine(b, rest)
        if nh == SUCC and len(nargs) == 1:
            m = nargs[0]
            return _spine(s, [m, _spine(Var("rec"), [a, b, s, m])] + rest)
        n2 = _step(n)
        return None if n2 is None else _spine(head, [a, b, s, n2] + rest)
    if head == Var("app") and len(args) >= 4:
        a1, a2, f, x = args[:4]
        rest = args[4:]
        fh, fargs = _unspine(f)
        if fh == Var("lam") and len(fargs) == 3:
            return _spine(App(fargs[2], x), rest)
        f2 = _step(f)
        return None if f2 is None else _spine(head, [a1, a2, f2, x] + rest)
    return None


def oracle_eval(program: Object, budget: int = BUDGET) -> Union[Numeral, Stuck]:
    """Evaluate a closed program of class ``el nat`` to a numeral."""
    st = OracleState(program)
    value = 0
    while True:
        nxt = _step(st.term)
        if nxt is not None:
            st.steps += 1
            if st.steps > budget:
                raise StepBudgetExceeded(st.steps)
            st.term = nxt
            continue
        if st.term == ZERO:
            return Numeral(value)
        head, args = _unspine(st.term)
        if head == SUCC and len(args) == 1:
            value += 1
            st.term = args[0]
            continue
        return Stuck(st.term)


def agreement(sig, program: Object, cfg: Optional[CheckConfig] = None) -> bool:
    """Do kernel normalization and the oracle produce the same numeral?

    Raises ValueError for open programs and FuelExhausted if the kernel
    runs out of fuel.
    """
    stray = free_vars(program) - GODEL_T_CONSTANTS
    if stray:
        raise ValueError(f"program is not closed: {', '.join(sorted(stray))}")
    nf = Kernel(sig, (), cfg).normalize(program)
    res = oracle_eval(program)
    return isinstance(res, Numeral) and nf == res.to_object()


# -- random programs ---------------------------------------------------------


class ProgramGen:
    """Closed programs of class ``el nat`` over Goedel's T, seeded.

    Terms are built with named variables and closed by abstraction, so
    every output is locally closed.
    """

    EL_NAT = parse_object("el nat")

    def __init__(self, seed: int, max_size: int = 12):
        self.rng = random.Random(seed)
        self.max_size = max_size
        self.counter = 0

    def fresh(self) -> str:
        self.counter += 1
        return f"v{self.counter}"

    def nat(self, scope: list[str], fuel: int) -> Object:
        r = self.rng.random()
        if fuel <= 1 or r < 0.2:
            if scope and self.rng.random() < 0.5:
                return Var(self.rng.choice(scope))
            return ZERO
        if r < 0.45:
            return App(SUCC, self.nat(scope, fuel - 1))
        if r < 0.7:
            p, q = self.fresh(), self.fresh()
            b = self.nat(scope, fuel // 3)
            s = lam(p, self.EL_NAT, lam(q, self.EL_NAT, self.nat(scope + [p, q], fuel // 3)))
            n = self.nat(scope, fuel // 3)
            return _spine(Var("rec"), [NAT, b, s, n])
        if r < 0.85:
            x = self.fresh()
            f = lam(x, self.EL_NAT, self.nat(scope + [x], fuel // 2))
            return App(f, self.nat(scope, fuel // 2))
        x = self.fresh()
        f = lam(x, self.EL_NAT, self.nat(scope + [x], fuel // 2))
        return _spine(Var("app"), [NAT, NAT, _spine(Var("lam"), [NAT, NAT, f]), self.nat(scope, fuel // 2)])

    def program(self) -> Object:
        while True:
            t = self.nat([], self.rng.randint(1, 12))
            if size(t) <= self.max_size:
                return t


def programs(count: int = 200, seed: int = 0, max_size: int = 12) -> list[Object]:
    """``count`` distinct closed programs of size at most ``max_size``."""
    gen = ProgramGen(seed, max_size)
    out: list[Object] = []
    seen = set()
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 1000 * count:
            raise RuntimeError("could not find enough distinct programs")
        t = gen.program()
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out
