"""Algorithmic reading of the framework's judgments.

Checking is bidirectional.  Equality is decided by a fuelled procedure:
unicity at equation classes, eta at Pi-classes, normalization by beta and
the signature's reduction rules, congruence closure over ground
hypotheses, type-directed use of expansion rules, and finally structural
comparison with type-directed descent into arguments.  Failing to find a
proof is not a disproof.
"""

from __future__ import annotations

from typing import Optional

from eqlf.core import (
    LVL,
    SORT,
    App,
    Bullet,
    Class,
    EqCls,
    Incl,
    Lam,
    LSuc,
    Lvl,
    LZero,
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
    subst_many,
)
from eqlf.kernel.congruence import GroundEqStore
from eqlf.kernel.env import CTX, SIG, Env
from eqlf.kernel.errors import (
    ArgumentClassMismatch,
    CannotInferBullet,
    CheckConfig,
    ClassMismatch,
    DuplicateName,
    EndpointIllTyped,
    EqualityNotProven,
    FuelExhausted,
    IllFormedClass,
    KernelError,
    NotAFunction,
    NotASort,
    Outcome,
    TraceStep,
    UnboundVariable,
    Verdict,
)
from eqlf.kernel.rules import RewriteRule, RuleKind

Pos = tuple[int, ...]


class _OutOfFuel(Exception):
    pass


class _Run:
    """Mutable state of one query: fuel, trace, and the per-query stores."""

    __slots__ = ("fuel", "used", "sink", "quiet", "stores")

    def __init__(self, cfg: CheckConfig):
        self.fuel = cfg.fuel
        self.used = 0
        self.sink = cfg.trace_sink
        self.quiet = 0
        self.stores: dict = {}

    def tick(self, rule: str, pos: Pos, before, after):
        if self.used >= self.fuel:
            raise _OutOfFuel
        self.used += 1
        if self.sink is not None and not self.quiet:
            self.sink(TraceStep(rule, pos, before, after))


class _Matcher:
    """Higher-order pattern matching against a subject that is reduced on demand.

    At the top spine of the redex (``wb`` set) subterms are head-normalized
    in place, so the reductions become part of the traced rewrite sequence.
    Under binders, reduction is a quiet side computation.
    """

    def __init__(self, kernel: Kernel, run: _Run, env: Env, pvars):
        self.k = kernel
        self.run = run
        self.env = env
        self.pvars = pvars
        self.sigma: dict[str, Object] = {}
        self.locals: dict[str, Class] = {}

    def bind(self, name: str, t: Object) -> bool:
        if self.locals and free_vars(t) & self.locals.keys():
            return False
        old = self.sigma.get(name)
        if old is None:
            self.sigma[name] = t
            return True
        return self.k._convertible(self.run, self.env, old, t)

    def bind_ho(self, name: str, args: list[Object], t: Object) -> bool:
        sol = t
        for a in reversed(args):
            if not isinstance(a, Var) or a.name not in self.locals:
                return False
            sol = Lam(self.locals[a.name], abstract(sol, a.name), a.name.split("#")[0])
        return self.bind(name, sol)

    def match(self, p: Object, t: Object, pos: Pos, wb: bool) -> tuple[bool, Object]:
        ph, pargs = spine(p)
        if isinstance(ph, Var) and ph.name in self.pvars:
            if not pargs:
                return self.bind(ph.name, t), t
            return self.bind_ho(ph.name, pargs, t), t
        ok, t2 = self.rigid(p, t, pos, wb)
        if ok is not None:
            return ok, t2
        t3 = self.reduce(t, pos, wb)
        if t3 == t:
            return False, t
        ok, t4 = self.rigid(p, t3, pos, wb)
        return bool(ok), t4

    def reduce(self, t: Object, pos: Pos, wb: bool) -> Object:
        if wb:
            return self.k._whnf(self.run, self.env, t, pos)
        self.run.quiet += 1
        try:
            return self.k._whnf(self.run, self.env, t, pos)
        finally:
            self.run.quiet -= 1

    def rigid(self, p: Object, t: Object, pos: Pos, wb: bool):
        """``(ok, subject)``, or ``(None, t)`` when the head shapes differ."""
        if isinstance(p, App):
            ph, pargs = spine(p)
            th, targs = spine(t)
            if th != ph or len(targs) != len(pargs):
                return None, t
            targs = list(targs)
            for i, pa in enumerate(pargs):
                ok, targs[i] = self.match(pa, targs[i], pos + (i + 1,), wb)
                if not ok:
                    return False, apply(th, *targs)
            return True, apply(th, *targs)
        if isinstance(p, LSuc):
            if not isinstance(t, LSuc):
                return None, t
            ok, lv = self.match(p.level, t.level, pos + (1,), wb)
            return ok, LSuc(lv)
        if isinstance(p, (Lam, PiSort)):
            if type(t) is not type(p):
                return None, t
            if not self.match_class(p.domain, t.domain):
                return False, t
            z = self.env.fresh(t.binder)
            self.locals[z] = t.domain
            try:
                ok, _ = self.match(instantiate(p.body, Var(z)), instantiate(t.body, Var(z)), pos, False)
            finally:
                del self.locals[z]
            return ok, t
        # constants, Bullet, levels
        return (True, t) if p == t else (None, t)

    def match_class(self, p: Class, c: Class) -> bool:
        if isinstance(p, Incl):
            return isinstance(c, Incl) and self.match(p.obj, c.obj, (), False)[0]
        if isinstance(p, SortCls):
            return isinstance(c, SortCls)
        if isinstance(p, EqCls):
            return (
                isinstance(c, EqCls)
                and self.match_class(p.sort, c.sort)
                and self.match(p.lhs, c.lhs, (), False)[0]
                and self.match(p.rhs, c.rhs, (), False)[0]
            )
        if isinstance(p, PiCls):
            if not isinstance(c, PiCls) or not self.match_class(p.domain, c.domain):
                return False
            z = self.env.fresh(c.binder)
            self.locals[z] = c.domain
            try:
                return self.match_class(instantiate(p.body, Var(z)), instantiate(c.body, Var(z)))
            finally:
                del self.locals[z]
        return False


class Kernel:
    """Judgments relative to a fixed signature and context."""

    def __init__(self, sig=(), ctx=(), cfg: Optional[CheckConfig] = None, env: Optional[Env] = None):
        self.cfg = cfg or CheckConfig()
        if env is None:
            env = Env()
            for name, cls in sig:
                env = env.declare(name, cls, SIG)
            for name, cls in ctx:
                env = env.declare(name, cls, CTX)
        self.env = env

    @classmethod
    def checked(cls, sig=(), ctx=(), cfg: Optional[CheckConfig] = None) -> Kernel:
        """Build a kernel, checking every declaration of ``sig`` then ``ctx``."""
        k = cls(cfg=cfg, env=Env())
        for role, tele in ((SIG, sig), (CTX, ctx)):
            for name, c in tele:
                k = k.declare(name, c, role)
        return k

    def declare(self, name: str, cls: Class, role: str = CTX) -> Kernel:
        if name in self.env:
            raise DuplicateName(name).at(name)
        try:
            self.check_class(cls)
        except KernelError as e:
            raise e.at(name)
        return Kernel(cfg=self.cfg, env=self.env.declare(name, cls, role))

    def with_config(self, cfg: CheckConfig) -> Kernel:
        return Kernel(cfg=cfg, env=self.env)

    # -- queries -------------------------------------------------------

    def _run(self) -> _Run:
        return _Run(self.cfg)

    def _guard(self, fn, *args):
        run = self._run()
        try:
            return fn(run, *args)
        except _OutOfFuel:
            raise FuelExhausted(run.used) from None

    def normalize(self, obj: Object) -> Object:
        return self._guard(self._nf, self.env, obj, ())

    def whnf(self, obj: Object) -> Object:
        return self._guard(self._whnf, self.env, obj, ())

    def whnf_class(self, cls: Class) -> Class:
        return self._guard(self._whnf_class, self.env, cls)

    def equal_objects(self, a: Object, b: Object, cls) -> Verdict:
        if isinstance(cls, Object):
            cls = Incl(cls)
        return self._verdict(self._conv, a, b, cls)

    def equal_classes(self, k1: Class, k2: Class) -> Verdict:
        return self._verdict(self._eq_cls, k1, k2)

    def _verdict(self, fn, *args) -> Verdict:
        run = self._run()
        try:
            ok = fn(run, self.env, *args)
        except _OutOfFuel:
            return Verdict(Outcome.FUEL_EXHAUSTED, run.used)
        return Verdict(Outcome.PROVEN_EQUAL if ok else Outcome.NOT_PROVEN, run.used)

    def infer(self, obj: Object) -> Class:
        return self._infer(self.env, obj)

    def check(self, obj: Object, cls: Class) -> None:
        self._check(self.env, obj, cls)

    def check_class(self, cls: Class) -> None:
        self._check_class(self.env, cls)

    def replay(self, steps) -> list[bool]:
        """Re-validate each traced step on its own, independently of the run that produced it."""
        return [self._replay_step(s) for s in steps]

    def _replay_step(self, step: TraceStep) -> bool:
        run = self._run()
        run.quiet += 1
        env = self.env
        redex, out = step.redex, step.contractum
        try:
            if step.rule == "app-lam":
                head, args = spine(redex)
                return (
                    isinstance(head, Lam)
                    and bool(args)
                    and out == apply(instantiate(head.body, args[0]), *args[1:])
                )
            if step.rule == "reflection":
                store = self._store(run, env)
                if store is None:
                    return False
                if store.equal(redex, out):
                    return True
                (h1, a1), (h2, a2) = spine(redex), spine(out)
                return a1 == a2 and store.equal(h1, h2)
            for rule in env.rules:
                if rule.name != step.rule:
                    continue
                m = _Matcher(self, run, env, rule.pvars)
                if rule.kind is RuleKind.EXPANSION:
                    m.sigma[rule.lhs.name] = redex
                    if m.match(rule.rhs, out, (), False)[0]:
                        return True
                    continue
                head, args = spine(redex)
                n = rule.arity
                if len(args) < n or _head_name(redex) != rule.head:
                    continue
                pargs = spine(rule.lhs)[1]
                if all(m.match(p, a, (), False)[0] for p, a in zip(pargs, args)):
                    if self._convertible(run, env, out, apply(subst_many(rule.rhs, m.sigma), *args[n:])):
                        return True
            return False
        except _OutOfFuel:
            return False

    # -- reduction -----------------------------------------------------

    def _whnf(self, run: _Run, env: Env, t: Object, pos: Pos) -> Object:
        while True:
            head, args = spine(t)
            if isinstance(head, Lam) and args:
                new = apply(instantiate(head.body, args[0]), *args[1:])
                run.tick("app-lam", pos, t, new)
                t = new
                continue
            if isinstance(head, Var):
                rules = env.rules_by_head.get(head.name)
                if rules:
                    t, fired = self._rewrite(run, env, head, args, rules, pos)
                    if fired:
                        continue
            store = self._store(run, env)
            if store is not None:
                rep = store.rep(t)
                if rep is None and isinstance(head, Var) and args:
                    hrep = store.rep(head)
                    if hrep is not None and hrep != head:
                        rep = apply(hrep, *spine(t)[1])
                if rep is not None and rep != t:
                    run.tick("reflection", pos, t, rep)
                    t = rep
                    continue
            return t

    def _rewrite(self, run, env, head, args, rules, pos) -> tuple[Object, bool]:
        args = list(args)
        for rule in rules:
            n = rule.arity
            if len(args) < n:
                continue
            m = _Matcher(self, run, env, rule.pvars)
            _, pargs = spine(rule.lhs)
            ok = True
            for i in range(n):
                ok, args[i] = m.match(pargs[i], args[i], pos + (i + 1,), True)
                if not ok:
                    break
            if ok:
                before = apply(head, *args)
                after = apply(subst_many(rule.rhs, m.sigma), *args[n:])
                run.tick(rule.name, pos, before, after)
                return after, True
        return apply(head, *args), False

    def _whnf_class(self, run: _Run, env: Env, k: Class) -> Class:
        if isinstance(k, Incl):
            o = self._whnf(run, env, k.obj, ())
            if isinstance(o, PiSort):
                return PiCls(o.domain, Incl(o.body), o.binder)
            return k if o is k.obj else Incl(o)
        return k

    def _nf(self, run: _Run, env: Env, t: Object, pos: Pos) -> Object:
        t = self._whnf(run, env, t, pos)
        if isinstance(t, App):
            head, args = spine(t)
            new = apply(head, *(self._nf(run, env, a, pos + (i + 1,)) for i, a in enumerate(args)))
        elif isinstance(t, (Lam, PiSort)):
            dom = self._nf_class(run, env, t.domain, pos + (1,))
            x, inner = env.bind(t.binder, t.domain)
            body = self._nf(run, inner, instantiate(t.body, x), pos + (2,))
            new = type(t)(dom, abstract(body, x.name), t.binder)
        elif isinstance(t, LSuc):
            new = LSuc(self._nf(run, env, t.level, pos + (1,)))
        else:
            return t
        if new != t and env.hyps:
            again = self._whnf(run, env, new, pos)
            if again != new:
                return self._nf(run, env, again, pos)
        return new

    def _nf_class(self, run: _Run, env: Env, k: Class, pos: Pos = ()) -> Class:
        if isinstance(k, Incl):
            return Incl(self._nf(run, env, k.obj, pos))
        if isinstance(k, PiCls):
            dom = self._nf_class(run, env, k.domain, pos + (1,))
            x, inner = env.bind(k.binder, k.domain)
            body = self._nf_class(run, inner, instantiate(k.body, x), pos + (2,))
            return PiCls(dom, abstract(body, x.name), k.binder)
        if isinstance(k, EqCls):
            return EqCls(
                self._nf_class(run, env, k.sort, pos + (1,)),
                self._nf(run, env, k.lhs, pos + (2,)),
                self._nf(run, env, k.rhs, pos + (3,)),
            )
        return k

    def _quiet_nf(self, run, env, t):
        run.quiet += 1
        try:
            return self._nf(run, env, t, ())
        finally:
            run.quiet -= 1

    def _convertible(self, run, env, a, b) -> bool:
        return a == b or self._quiet_nf(run, env, a) == self._quiet_nf(run, env, b)

    # -- ground equations ---------------------------------------------

    def _weight(self, env: Env):
        roles = env.roles

        def weight(t):
            hyp = sum(1 for _ in _var_occurrences(t) if roles.get(_) == CTX)
            return (hyp, size(t), repr(t))

        return weight

    def _ground_pairs(self, run, env) -> list[tuple[Object, Object]]:
        pairs = []
        run.quiet += 1
        try:
            for name, cls in env.hyps:
                k = self._whnf_class(run, env, cls)
                if isinstance(k, EqCls):
                    pairs.append((k.lhs, k.rhs))
                elif isinstance(k, Incl):
                    for r in env.reflection:
                        m = _Matcher(self, run, env, r.pvars)
                        if m.match_class(r.premise, k):
                            pairs.append((subst_many(r.lhs, m.sigma), subst_many(r.rhs, m.sigma)))
        finally:
            run.quiet -= 1
        return pairs

    def _store(self, run: _Run, env: Env) -> Optional[GroundEqStore]:
        if not env.hyps:
            return None
        key = env.hyps
        if key in run.stores:
            return run.stores[key]
        run.stores[key] = None  # sides are normalized without the store first
        raw = self._ground_pairs(run, env)
        seen: list[tuple[Object, Object]] = []
        store = None
        run.quiet += 1
        try:
            for _ in range(4):
                fresh = []
                for a, b in raw:
                    na, nb = self._nf(run, env, a, ()), self._nf(run, env, b, ())
                    if na != nb and (na, nb) not in seen:
                        fresh.append((na, nb))
                if not fresh:
                    break
                seen.extend(fresh)
                store = GroundEqStore(self._weight(env))
                for a, b in seen:
                    store.merge(a, b)
                run.stores[key] = store
        finally:
            run.quiet -= 1
        run.stores[key] = store
        return store

    # -- equality ------------------------------------------------------

    def _conv(self, run: _Run, env: Env, a: Object, b: Object, k: Class) -> bool:
        k = self._whnf_class(run, env, k)
        if isinstance(k, EqCls):
            return True
        if isinstance(k, PiCls) and self.cfg.eta_enabled:
            x, inner = env.bind(k.binder, k.domain)
            return self._conv(run, inner, App(a, x), App(b, x), instantiate(k.body, x))
        if isinstance(k, Incl) and self._irrelevant(run, env, k):
            return True
        na = self._nf(run, env, a, ())
        nb = self._nf(run, env, b, ())
        if na == nb:
            return True
        store = self._store(run, env)
        if store is not None and store.equal(na, nb):
            return True
        if isinstance(k, Incl) and self.cfg.eta_enabled and env.expansions:
            expanded = self._expand(run, env, na, nb, k)
            if expanded is not None:
                return expanded
        return self._structural(run, env, na, nb, k)

    def _irrelevant(self, run, env, k: Incl) -> bool:
        for r in env.irrelevance:
            run.quiet += 1
            try:
                if _Matcher(self, run, env, r.pvars).match_class(r.sort, k):
                    return True
            finally:
                run.quiet -= 1
        return False

    def _expand(self, run, env, a, b, k) -> Optional[bool]:
        for rule in env.expansions:
            run.quiet += 1
            try:
                m = _Matcher(self, run, env, rule.pvars)
                if not m.match_class(rule.sort, k):
                    continue
            finally:
                run.quiet -= 1
            a_intro = _head_name(a) == rule.intro
            b_intro = _head_name(b) == rule.intro
            if a_intro == b_intro:
                continue
            intro, other = (a, b) if a_intro else (b, a)
            expanded = self._expand_with(run, env, rule, m.sigma, other)
            return self._structural(run, env, intro, expanded, k)
        return None

    def _expand_with(self, run, env, rule: RewriteRule, sigma, t):
        mapping = dict(sigma)
        mapping[rule.lhs.name] = t
        new = subst_many(rule.rhs, mapping)
        run.tick(rule.name, (), t, new)
        return self._nf(run, env, new, ())

    def _structural(self, run: _Run, env: Env, a: Object, b: Object, k: Class) -> bool:
        if isinstance(a, Lam) and isinstance(b, Lam):
            k = self._whnf_class(run, env, k)
            if not isinstance(k, PiCls) or not self._eq_cls(run, env, a.domain, b.domain):
                return False
            x, inner = env.bind(a.binder, a.domain)
            return self._conv(
                run, inner, instantiate(a.body, x), instantiate(b.body, x), instantiate(k.body, x)
            )
        if isinstance(a, PiSort) and isinstance(b, PiSort):
            if not self._eq_cls(run, env, a.domain, b.domain):
                return False
            x, inner = env.bind(a.binder, a.domain)
            return self._conv(run, inner, instantiate(a.body, x), instantiate(b.body, x), SORT)
        if isinstance(a, LSuc) and isinstance(b, LSuc):
            return self._conv(run, env, a.level, b.level, Incl(LVL))
        ha, aa = spine(a)
        hb, ab = spine(b)
        if not isinstance(ha, Var) or ha != hb or len(aa) != len(ab):
            return a == b
        cls = env.lookup(ha.name)
        if cls is None:
            return False
        for x, y in zip(aa, ab):
            cls = self._whnf_class(run, env, cls)
            if not isinstance(cls, PiCls) or not self._conv(run, env, x, y, cls.domain):
                return False
            cls = instantiate(cls.body, x)
        return True

    def _eq_cls(self, run: _Run, env: Env, k1: Class, k2: Class) -> bool:
        k1 = self._whnf_class(run, env, k1)
        k2 = self._whnf_class(run, env, k2)
        if isinstance(k1, SortCls) and isinstance(k2, SortCls):
            return True
        if isinstance(k1, Incl) and isinstance(k2, Incl):
            return self._conv(run, env, k1.obj, k2.obj, SORT)
        if isinstance(k1, PiCls) and isinstance(k2, PiCls):
            if not self._eq_cls(run, env, k1.domain, k2.domain):
                return False
            x, inner = env.bind(k1.binder, k1.domain)
            return self._eq_cls(run, inner, instantiate(k1.body, x), instantiate(k2.body, x))
        if isinstance(k1, EqCls) and isinstance(k2, EqCls):
            return (
                self._eq_cls(run, env, k1.sort, k2.sort)
                and self._conv(run, env, k1.lhs, k2.lhs, k1.sort)
                and self._conv(run, env, k1.rhs, k2.rhs, k1.sort)
            )
        return False

    # -- classification ------------------------------------------------

    def _sort_domain(self, env: Env, dom: Class) -> None:
        if not isinstance(dom, Incl):
            raise NotASort(dom)
        try:
            self._check(env, dom.obj, SORT)
        except ClassMismatch:
            raise NotASort(dom) from None

    def _check_class(self, env: Env, k: Class) -> None:
        if isinstance(k, SortCls):
            return
        if isinstance(k, Incl):
            try:
                self._check(env, k.obj, SORT)
            except ClassMismatch as e:
                raise NotASort(k.obj) from e
            return
        if isinstance(k, PiCls):
            self._sort_domain(env, k.domain)
            x, inner = env.bind(k.binder, k.domain)
            self._check_class(inner, instantiate(k.body, x))
            return
        if isinstance(k, EqCls):
            self._sort_domain(env, k.sort)
            for side, o in (("lhs", k.lhs), ("rhs", k.rhs)):
                try:
                    self._check(env, o, k.sort)
                except (UnboundVariable, FuelExhausted):
                    raise
                except KernelError as e:
                    raise EndpointIllTyped(side, e) from e
            return
        raise IllFormedClass(k, "unknown class form")

    def _infer(self, env: Env, o: Object) -> Class:
        if isinstance(o, Var):
            k = env.lookup(o.name)
            if k is None:
                raise UnboundVariable(o.name)
            return k
        if isinstance(o, Lvl):
            return SORT
        if isinstance(o, LZero):
            return Incl(LVL)
        if isinstance(o, LSuc):
            self._check(env, o.level, Incl(LVL))
            return Incl(LVL)
        if isinstance(o, Bullet):
            raise CannotInferBullet()
        if isinstance(o, PiSort):
            self._sort_domain(env, o.domain)
            x, inner = env.bind(o.binder, o.domain)
            self._check(inner, instantiate(o.body, x), SORT)
            return SORT
        if isinstance(o, Lam):
            self._sort_domain(env, o.domain)
            x, inner = env.bind(o.binder, o.domain)
            body = self._infer(inner, instantiate(o.body, x))
            return PiCls(o.domain, abstract(body, x.name), o.binder)
        if isinstance(o, App):
            fk = self._query_whnf_class(env, self._infer(env, o.fun))
            if not isinstance(fk, PiCls):
                raise NotAFunction(o.fun, fk)
            try:
                self._check(env, o.arg, fk.domain)
            except ClassMismatch as e:
                raise ArgumentClassMismatch(e.inferred, e.expected) from e
            return instantiate(fk.body, o.arg)
        raise TypeError(o)

    def _query_whnf_class(self, env: Env, k: Class) -> Class:
        run = self._run()
        try:
            return self._whnf_class(run, env, k)
        except _OutOfFuel:
            raise FuelExhausted(run.used) from None

    def _query(self, fn, env, *args) -> bool:
        run = self._run()
        try:
            return fn(run, env, *args)
        except _OutOfFuel:
            raise FuelExhausted(run.used) from None

    def _check(self, env: Env, o: Object, k: Class) -> None:
        if isinstance(o, Bullet):
            kw = self._query_whnf_class(env, k)
            if not isinstance(kw, EqCls):
                raise ClassMismatch("an equation class", k)
            if not self._query(self._conv, env, kw.lhs, kw.rhs, kw.sort):
                raise EqualityNotProven(kw.lhs, kw.rhs)
            return
        if isinstance(o, Lam):
            kw = self._query_whnf_class(env, k)
            if isinstance(kw, PiCls):
                self._sort_domain(env, o.domain)
                if not self._query(self._eq_cls, env, o.domain, kw.domain):
                    raise ClassMismatch(o.domain, kw.domain)
                x, inner = env.bind(o.binder, kw.domain)
                self._check(inner, instantiate(o.body, x), instantiate(kw.body, x))
                return
        inferred = self._infer(env, o)
        if not self._query(self._eq_cls, env, inferred, k):
            raise ClassMismatch(inferred, k)


def _head_name(t: Object) -> Optional[str]:
    h, _ = spine(t)
    return h.name if isinstance(h, Var) else None


def _var_occurrences(t):
    if isinstance(t, Var):
        yield t.name
    elif isinstance(t, App):
        yield from _var_occurrences(t.fun)
        yield from _var_occurrences(t.arg)
    elif isinstance(t, (Lam, PiSort, PiCls)):
        yield from _var_occurrences(t.domain)
        yield from _var_occurrences(t.body)
    elif isinstance(t, Incl):
        yield from _var_occurrences(t.obj)
    elif isinstance(t, EqCls):
        for x in (t.sort, t.lhs, t.rhs):
            yield from _var_occurrences(x)
    elif isinstance(t, LSuc):
        yield from _var_occurrences(t.level)


# -- functional interface -------------------------------------------------


def _tele(x) -> Telescope:
    return x if isinstance(x, Telescope) else Telescope.of(x or ())


def check_context(sig, ctx=(), cfg: Optional[CheckConfig] = None) -> Kernel:
    """Check ``sig`` then ``ctx`` declaration by declaration; raise on failure."""
    return Kernel.checked(_tele(sig), _tele(ctx), cfg)


def check_class(sig, ctx, cls: Class, cfg: Optional[CheckConfig] = None) -> None:
    Kernel(_tele(sig), _tele(ctx), cfg).check_class(cls)


def infer_object(sig, ctx, obj: Object, cfg: Optional[CheckConfig] = None) -> Class:
    return Kernel(_tele(sig), _tele(ctx), cfg).infer(obj)


def check_object(sig, ctx, obj: Object, cls: Class, cfg: Optional[CheckConfig] = None) -> None:
    Kernel(_tele(sig), _tele(ctx), cfg).check(obj, cls)


def equal_classes(sig, ctx, k1: Class, k2: Class, cfg: Optional[CheckConfig] = None) -> Verdict:
    return Kernel(_tele(sig), _tele(ctx), cfg).equal_classes(k1, k2)


def equal_objects(sig, ctx, a: Object, b: Object, sort, cfg: Optional[CheckConfig] = None) -> Verdict:
    return Kernel(_tele(sig), _tele(ctx), cfg).equal_objects(a, b, sort)


def normalize(sig, ctx, obj: Object, cfg: Optional[CheckConfig] = None) -> Object:
    return Kernel(_tele(sig), _tele(ctx), cfg).normalize(obj)


def whnf_class(sig, ctx, cls: Class, cfg: Optional[CheckConfig] = None) -> Class:
    return Kernel(_tele(sig), _tele(ctx), cfg).whnf_class(cls)
