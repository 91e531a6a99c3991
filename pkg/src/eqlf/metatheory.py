"""Property checks for the structural metatheory of the kernel.

Samples are well-classed judgments ``ctx |- obj : cls`` found by random
type-directed generation, kept only if the kernel accepts them.  Each
lemma check re-runs the kernel on a transformed judgment:

* presuppositions: the context and the inferred class are well formed;
* weakening: inserting a fresh declaration preserves the class;
* substitution: replacing a context variable by an object of its class
  gives an object of the substituted class;
* functionality: substituting equal objects gives equal results.

Fuel exhaustion is reported as inconclusive, never as a failure.
"""

from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from eqlf import stdsigs
from eqlf.core import (
    BULLET,
    LVL,
    LZERO,
    SORT,
    App,
    Bullet,
    Class,
    EqCls,
    Incl,
    Lam,
    LSuc,
    Lvl,
    Object,
    PiCls,
    PiSort,
    SortCls,
    Telescope,
    Var,
    abstract,
    apply,
    free_vars,
    instantiate,
    size,
    spine,
    subst,
)
from eqlf.kernel import CheckConfig, FuelExhausted, Kernel, KernelError
from eqlf.kernel import Outcome as Verdicts
from eqlf.kernel.env import CTX
from eqlf.kernel.rules import is_equation


class Outcome(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


class PreconditionError(ValueError):
    """The inputs of a lemma check do not satisfy its hypotheses."""


@dataclass(frozen=True)
class EnumBudget:
    max_term_size: int = 10
    max_ctx_depth: int = 4
    sample_count: int = 500

    def __post_init__(self):
        if self.max_term_size < 1 or self.max_ctx_depth < 1:
            raise ValueError("term size and context depth bounds must be positive")
        if self.sample_count < 0:
            raise ValueError("sample count must be non-negative")


@dataclass(frozen=True)
class DerivationSample:
    signature_id: str
    context: Telescope
    object: Object
    inferred_class: Class


@lru_cache(maxsize=None)
def signature_kernel(sig_id: str, fuel: int = 10000) -> Kernel:
    """The corpus signature, checked once."""
    return Kernel.checked(stdsigs.load(sig_id), (), CheckConfig(fuel=fuel))


def _extend(k: Kernel, ctx: Telescope) -> Kernel:
    for name, cls in ctx:
        k = k.declare(name, cls, CTX)
    return k


# -- generation ---------------------------------------------------------------


@lru_cache(maxsize=4096)
def _codomain(cls: Class) -> tuple[tuple[tuple[str, Class], ...], Class]:
    """Open a Pi-telescope with placeholder names ``$0, $1, ...``."""
    tele = []
    while isinstance(cls, PiCls):
        name = f"${len(tele)}"
        tele.append((name, cls.domain))
        cls = instantiate(cls.body, Var(name))
    return tuple(tele), cls


def _solve(pat, t, holes, sigma) -> bool:
    """First-order matching of a codomain against a target; holes are ``$n``."""
    if isinstance(pat, Var) and pat.name in holes:
        old = sigma.get(pat.name)
        if old is None:
            sigma[pat.name] = t
            return True
        return old == t
    ph, pargs = spine(pat)
    if isinstance(ph, Var) and ph.name in holes:
        return True  # higher-order occurrence: no information
    th, targs = spine(t)
    if isinstance(ph, Var) and isinstance(th, Var):
        if ph != th or len(pargs) != len(targs):
            return False
        return all(_solve(p, a, holes, sigma) for p, a in zip(pargs, targs))
    if isinstance(pat, LSuc) and isinstance(t, LSuc):
        return _solve(pat.level, t.level, holes, sigma)
    return True


class Generator:
    """Random well-classed objects over a checked signature, seeded."""

    def __init__(self, sig_id: str, seed: int, budget: EnumBudget):
        self.sig_id = sig_id
        self.rng = random.Random(f"{sig_id}/{seed}")
        self.budget = budget
        self.base = signature_kernel(sig_id)
        self.counter = 0
        self.heads = [
            (n, c) for n, c in stdsigs.load(sig_id) if not is_equation(c) and not isinstance(c, SortCls)
        ]

    def fresh(self, hint="z") -> str:
        self.counter += 1
        return f"{hint}{self.counter}"

    # objects at a given class

    def at(self, k: Kernel, cls: Class, fuel: int, local: list[tuple[str, Class]]) -> Optional[Object]:
        try:
            cls = k.whnf_class(cls)
        except FuelExhausted:
            return None
        if isinstance(cls, EqCls):
            return BULLET
        if isinstance(cls, PiCls):
            same = [Var(n) for n, c in local if c == cls]
            if same and self.rng.random() < 0.4:
                return self.rng.choice(same)
            x = self.fresh()
            inner = k.declare(x, cls.domain)
            body = self.at(inner, instantiate(cls.body, Var(x)), fuel - 1, local + [(x, cls.domain)])
            return None if body is None else Lam(cls.domain, abstract(body, x), x)
        if isinstance(cls, SortCls):
            return self.sort(k, fuel, local)
        if isinstance(cls, Incl) and cls.obj == LVL:
            return self.level(fuel, local)
        if fuel > 3 and self.rng.random() < 0.08:
            # a beta redex at the same sort
            x = self.fresh()
            inner = k.declare(x, cls)
            body = self.at(inner, cls, fuel // 2, local + [(x, cls)])
            arg = self.at(k, cls, fuel // 2, local)
            if body is None or arg is None:
                return None
            return App(Lam(cls, abstract(body, x), x), arg)
        return self.neutral(k, cls, fuel, local)

    def level(self, fuel, local) -> Object:
        vars_ = [Var(n) for n, c in local if c == Incl(LVL)]
        r = self.rng.random()
        if vars_ and r < 0.4:
            return self.rng.choice(vars_)
        if fuel > 1 and r < 0.7:
            return LSuc(self.level(fuel - 1, local))
        return LZERO

    def sort(self, k: Kernel, fuel, local) -> Optional[Object]:
        if self.rng.random() < 0.1:
            return Lvl()
        if fuel > 4 and self.rng.random() < 0.1:
            dom = self.sort(k, fuel // 2, local)
            if dom is None:
                return None
            x = self.fresh()
            inner = k.declare(x, Incl(dom))
            body = self.sort(inner, fuel // 2, local + [(x, Incl(dom))])
            return None if body is None else PiSort(Incl(dom), abstract(body, x), x)
        return self.neutral(k, SORT, fuel, local)

    def neutral(self, k: Kernel, target: Class, fuel, local) -> Optional[Object]:
        cands = []
        for name, c in self.heads + list(local):
            tele, cod = _codomain(c)
            if len(tele) >= fuel and tele:
                continue
            sigma: dict[str, Object] = {}
            if isinstance(target, SortCls):
                ok = isinstance(cod, SortCls)
            elif isinstance(cod, Incl) and isinstance(target, Incl):
                ok = _solve(cod.obj, target.obj, {n for n, _ in tele}, sigma)
            else:
                ok = False
            if ok:
                cands.append((name, tele, sigma))
        if not cands:
            return None
        name, tele, sigma = self.rng.choice(cands)
        args: list[Object] = []
        share = max(1, (fuel - 1) // max(1, len(tele)))
        done: dict[str, Object] = {}
        for hole, dom in tele:
            dom = _fill(dom, done)
            a = sigma.get(hole)
            if a is None or self.rng.random() < 0.1:
                a = self.at(k, dom, share, local)
            if a is None:
                return None
            done[hole] = a
            args.append(a)
        return apply(Var(name), *args)

    # whole samples

    def context(self) -> Optional[Telescope]:
        k = self.base
        decls: list[tuple[str, Class]] = []
        depth = self.rng.randint(0, self.budget.max_ctx_depth)
        for i in range(depth):
            name = f"x{i}"
            try:
                cls = self.ctx_class(k, decls)
                if cls is None:
                    continue
                k = k.declare(name, cls)
            except KernelError:
                continue
            decls.append((name, cls))
        return Telescope(tuple(decls))

    def ctx_class(self, k: Kernel, local) -> Optional[Class]:
        r = self.rng.random()
        s = self.sort(k, 4, local)
        if s is None:
            return None
        if r < 0.55:
            return Incl(s)
        if r < 0.75:
            s2 = self.sort(k, 4, local)
            return None if s2 is None else PiCls(Incl(s), Incl(s2), "_")
        if r < 0.9:
            a = self.at(k, Incl(s), 3, local)
            b = self.at(k, Incl(s), 3, local)
            if a is None or b is None or isinstance(a, Bullet):
                return None
            return EqCls(Incl(s), a, b)
        if self.sig_id == "universes" and r < 0.97:
            return Incl(LVL)
        return SORT

    def sample(self) -> Optional[DerivationSample]:
        try:
            return self._sample()
        except KernelError:
            return None

    def _sample(self) -> Optional[DerivationSample]:
        ctx = self.context()
        k = _extend(self.base, ctx)
        local = list(ctx)
        fuel = self.budget.max_term_size
        if self.rng.random() < 0.5:
            # a head partially or fully applied, class left to inference
            name, c = self.rng.choice(self.heads + local)
            tele, _ = _codomain(c)
            n = self.rng.randint(0, len(tele))
            obj = Var(name)
            done: dict[str, Object] = {}
            for hole, dom in tele[:n]:
                a = self.at(k, _fill(dom, done), max(1, fuel // max(1, n)), local)
                if a is None:
                    return None
                done[hole] = a
                obj = App(obj, a)
        else:
            target = self.ctx_class(k, local)
            if target is None:
                return None
            obj = self.at(k, target, fuel, local)
            if obj is None or isinstance(obj, Bullet):
                return None
        if size(obj) > fuel:
            return None
        try:
            cls = k.infer(obj)
        except KernelError:
            return None
        return DerivationSample(self.sig_id, ctx, obj, cls)


def _fill(c, done: dict[str, Object]):
    for hole, a in done.items():
        c = subst(c, hole, a)
    return c


def enumerate(sig_id: str, budget: EnumBudget = EnumBudget(), seed: int = 0) -> Iterator[DerivationSample]:
    """Kernel-validated samples, deterministic in ``(sig_id, budget, seed)``."""
    gen = Generator(sig_id, seed, budget)
    produced = 0
    attempts = 0
    while produced < budget.sample_count and attempts < 50 * budget.sample_count:
        attempts += 1
        s = gen.sample()
        if s is not None:
            produced += 1
            yield s


# -- lemma checks ---------------------------------------------------------------


def _kernel_for(sample: DerivationSample) -> Kernel:
    return _extend(signature_kernel(sample.signature_id), sample.context)


def _same_class(k: Kernel, k1: Class, k2: Class) -> Outcome:
    if k1 == k2:
        return Outcome.PASS
    v = k.equal_classes(k1, k2)
    if v.proven:
        return Outcome.PASS
    return Outcome.INCONCLUSIVE if v.outcome is Verdicts.FUEL_EXHAUSTED else Outcome.FAIL


def _guarded(fn):
    def run(*args, **kw) -> Outcome:
        try:
            return fn(*args, **kw)
        except PreconditionError:
            raise
        except FuelExhausted:
            return Outcome.INCONCLUSIVE
        except KernelError:
            return Outcome.FAIL

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


@_guarded
def check_presuppositions(sample: DerivationSample) -> Outcome:
    """The context is well formed, the class is well formed, and the judgment holds."""
    k = _kernel_for(sample)
    k.check_class(sample.inferred_class)
    return _same_class(k, k.infer(sample.object), sample.inferred_class)


@_guarded
def check_weakening(sample: DerivationSample, insertion=(), position: Optional[int] = None) -> Outcome:
    """Insert declarations at ``position`` (default: the end) and re-infer."""
    insertion = list(insertion)
    ctx = list(sample.context)
    pos = len(ctx) if position is None else position
    taken = set(sample.context.names()) | set(n for n, _ in signature_kernel(sample.signature_id).env.roles.items())
    for name, cls in insertion:
        if name in taken:
            raise PreconditionError(f"{name} is not fresh")
        if free_vars(cls) & {n for n, _ in ctx[pos:]}:
            raise PreconditionError(f"{name} mentions a later declaration")
    try:
        k = _extend(signature_kernel(sample.signature_id), Telescope(tuple(ctx[:pos] + insertion)))
    except KernelError as e:
        raise PreconditionError(f"ill-formed insertion: {e}") from e
    k = _extend(k, Telescope(tuple(ctx[pos:])))
    return _same_class(k, k.infer(sample.object), sample.inferred_class)


def _split(sample: DerivationSample, var: str):
    names = sample.context.names()
    if var not in names:
        raise PreconditionError(f"{var} is not declared in the context")
    i = names.index(var)
    ctx = list(sample.context)
    return ctx[:i], ctx[i][1], ctx[i + 1 :]


def _substituted(sample, var, repl, prefix, suffix):
    k1 = _extend(signature_kernel(sample.signature_id), Telescope(tuple(prefix)))
    suffix2 = [(n, subst(c, var, repl)) for n, c in suffix]
    return _extend(k1, Telescope(tuple(suffix2)))


def _precheck(sample, var, *repls):
    prefix, cls, suffix = _split(sample, var)
    k1 = _extend(signature_kernel(sample.signature_id), Telescope(tuple(prefix)))
    for r in repls:
        try:
            k1.check(r, cls)
        except FuelExhausted:
            raise
        except KernelError as e:
            raise PreconditionError(f"replacement does not have class {cls}: {e}") from e
    return k1, prefix, cls, suffix


@_guarded
def check_substitution(sample: DerivationSample, var: str, replacement: Object) -> Outcome:
    k1, prefix, cls, suffix = _precheck(sample, var, replacement)
    first = check_presuppositions(sample)
    if first is not Outcome.PASS:
        return first
    k = _substituted(sample, var, replacement, prefix, suffix)
    # checking mode: a bullet substituted for a variable no longer infers
    k.check(subst(sample.object, var, replacement), subst(sample.inferred_class, var, replacement))
    return Outcome.PASS


@_guarded
def check_functionality(sample: DerivationSample, var: str, repl1: Object, repl2: Object) -> Outcome:
    k1, prefix, cls, suffix = _precheck(sample, var, repl1, repl2)
    v = k1.equal_objects(repl1, repl2, cls)
    if v.outcome is Verdicts.FUEL_EXHAUSTED:
        return Outcome.INCONCLUSIVE
    if not v.proven:
        raise PreconditionError("the two replacements are not provably equal")
    first = check_presuppositions(sample)
    if first is not Outcome.PASS:
        return first
    k = _substituted(sample, var, repl1, prefix, suffix)
    o1 = subst(sample.object, var, repl1)
    o2 = subst(sample.object, var, repl2)
    c1 = subst(sample.inferred_class, var, repl1)
    c2 = subst(sample.inferred_class, var, repl2)
    classes = _same_class(k, c1, c2)
    if classes is not Outcome.PASS:
        return classes
    v = k.equal_objects(o1, o2, c1)
    if v.proven:
        return Outcome.PASS
    return Outcome.INCONCLUSIVE if v.outcome is Verdicts.FUEL_EXHAUSTED else Outcome.FAIL


# -- suite driver ---------------------------------------------------------------


def equal_variant(k: Kernel, obj: Object, cls: Class, rng: random.Random) -> Object:
    """An object different from ``obj`` but provably equal to it at ``cls``."""
    w = k.whnf_class(cls)
    if isinstance(w, EqCls):
        return BULLET if obj != BULLET else obj
    if isinstance(w, PiCls):
        x = k.env.fresh("e")
        return Lam(w.domain, abstract(App(obj, Var(x)), x), "e")
    if isinstance(w, Incl):
        reduct = k.whnf(obj)
        if reduct != obj and rng.random() < 0.5:
            return reduct
        x = k.env.fresh("e")
        return App(Lam(w, abstract(Var(x), x), "e"), obj)
    return obj


@dataclass
class LemmaTally:
    counts: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)

    def add(self, outcome: Outcome, detail=None):
        self.counts[outcome] += 1
        if outcome is Outcome.FAIL:
            self.failures.append(detail)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


LEMMAS = ("presuppositions", "weakening", "substitution", "functionality")


@dataclass
class SuiteReport:
    tallies: dict[str, LemmaTally] = field(default_factory=lambda: {n: LemmaTally() for n in LEMMAS})
    samples: int = 0

    def merge(self, other: SuiteReport):
        self.samples += other.samples
        for n in LEMMAS:
            self.tallies[n].counts.update(other.tallies[n].counts)
            self.tallies[n].failures.extend(other.tallies[n].failures)

    @property
    def failures(self) -> int:
        return sum(t.counts[Outcome.FAIL] for t in self.tallies.values())

    @property
    def inconclusive(self) -> int:
        return sum(t.counts[Outcome.INCONCLUSIVE] for t in self.tallies.values())

    @property
    def checks(self) -> int:
        return sum(t.total for t in self.tallies.values())

    def lines(self) -> list[str]:
        out = []
        for n in LEMMAS:
            c = self.tallies[n].counts
            out.append(
                f"{n}: pass={c[Outcome.PASS]} fail={c[Outcome.FAIL]} inconclusive={c[Outcome.INCONCLUSIVE]}"
            )
        return out


def _replacement(gen: Generator, sample: DerivationSample) -> Optional[tuple[str, Object]]:
    names = sample.context.names()
    if not names:
        return None
    var = gen.rng.choice(names)
    prefix, cls, _ = _split(sample, var)
    k1 = _extend(gen.base, Telescope(tuple(prefix)))
    for _ in range(3):
        try:
            r = gen.at(k1, cls, 4, prefix)
            if r is None:
                continue
            k1.check(r, cls)
        except KernelError:
            continue
        return var, r
    return None


def run_suite(sig_id: str, seed: int = 0, budget: EnumBudget = EnumBudget()) -> SuiteReport:
    report = SuiteReport()
    gen = Generator(sig_id, seed + 1000, budget)
    for sample in enumerate(sig_id, budget, seed):
        report.samples += 1
        t = report.tallies
        t["presuppositions"].add(check_presuppositions(sample), sample)

        ctx = list(sample.context)
        pos = gen.rng.randint(0, len(ctx))
        k_prefix = _extend(gen.base, Telescope(tuple(ctx[:pos])))
        try:
            cls = gen.ctx_class(k_prefix, ctx[:pos])
            if cls is not None:
                k_prefix.check_class(cls)
        except KernelError:
            cls = None
        ins = [(gen.fresh("w"), cls)] if cls is not None else []
        t["weakening"].add(check_weakening(sample, ins, pos), (sample, ins, pos))

        chosen = _replacement(gen, sample)
        if chosen is None:
            continue
        var, repl = chosen
        t["substitution"].add(check_substitution(sample, var, repl), (sample, var, repl))
        prefix, vcls, _ = _split(sample, var)
        k1 = _extend(gen.base, Telescope(tuple(prefix)))
        try:
            repl2 = equal_variant(k1, repl, vcls, gen.rng)
            outcome = check_functionality(sample, var, repl, repl2)
        except FuelExhausted:
            outcome = Outcome.INCONCLUSIVE
        except PreconditionError:
            # not a counterexample: the variant itself was not provably equal
            continue
        t["functionality"].add(outcome, (sample, var, repl, repl2))
    return report
