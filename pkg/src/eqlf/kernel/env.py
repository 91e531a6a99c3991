from __future__ import annotations

from typing import Optional

from eqlf.core import Class, EqCls, Incl, Lam, Var, spine
from eqlf.kernel.rules import (
    IrrelevanceRule,
    ReflectionRule,
    RewriteRule,
    RuleKind,
    classify,
)

SIG, CTX = "sig", "ctx"


class Env:
    """Signature and context concatenated, with the principles derived from them.

    Treat as immutable: ``declare`` returns a new environment.
    """

    __slots__ = (
        "types",
        "roles",
        "rules_by_head",
        "expansions",
        "irrelevance",
        "reflection",
        "warnings",
        "hyps",
    )

    def __init__(self):
        self.types: dict[str, Class] = {}
        self.roles: dict[str, str] = {}
        self.rules_by_head: dict[str, tuple[RewriteRule, ...]] = {}
        self.expansions: tuple[RewriteRule, ...] = ()
        self.irrelevance: tuple[IrrelevanceRule, ...] = ()
        self.reflection: tuple[ReflectionRule, ...] = ()
        self.warnings: tuple[str, ...] = ()
        # declarations that may feed the ground equation store
        self.hyps: tuple[tuple[str, Class], ...] = ()

    def _copy(self) -> Env:
        e = Env.__new__(Env)
        for s in Env.__slots__:
            setattr(e, s, getattr(self, s))
        return e

    def __contains__(self, name: str) -> bool:
        return name in self.types

    def lookup(self, name: str) -> Optional[Class]:
        return self.types.get(name)

    @property
    def rules(self) -> list[RewriteRule]:
        seen = [r for rs in self.rules_by_head.values() for r in rs]
        return seen + list(self.expansions)

    def fresh(self, hint: str) -> str:
        base = (hint or "x").split("#")[0] or "x"
        n = len(self.types)
        name = f"{base}#{n}"
        while name in self.types:
            n += 1
            name = f"{base}#{n}"
        return name

    def declare(self, name: str, cls: Class, role: str = SIG) -> Env:
        e = self._copy()
        e.types = {**self.types, name: cls}
        e.roles = {**self.roles, name: role}
        if role == CTX and isinstance(cls, EqCls):
            # ground hypothesis: used by congruence in both directions
            e.hyps = e.hyps + ((name, cls),)
            return e
        item = classify(name, cls)
        if isinstance(item, RewriteRule):
            if item.kind is RuleKind.REDUCTION:
                rs = e.rules_by_head.get(item.head, ())
                e.rules_by_head = {**e.rules_by_head, item.head: rs + (item,)}
            else:
                e.expansions = e.expansions + (item,)
        elif isinstance(item, IrrelevanceRule):
            e.irrelevance = e.irrelevance + (item,)
        elif isinstance(item, ReflectionRule):
            e.reflection = e.reflection + (item,)
        elif isinstance(item, str):
            e.warnings = e.warnings + (item,)
            if isinstance(cls, EqCls):
                # ground but unorientable: still usable by congruence
                e.hyps = e.hyps + ((name, cls),)
        elif role == CTX and self._may_feed_store(cls):
            e.hyps = e.hyps + ((name, cls),)
        return e

    def bind(self, hint: str, cls: Class) -> tuple[Var, Env]:
        name = self.fresh(hint)
        return Var(name), self.declare(name, cls, CTX)

    def _may_feed_store(self, cls: Class) -> bool:
        if isinstance(cls, EqCls):
            return True
        if not isinstance(cls, Incl) or not self.reflection:
            return False
        return any(self._skeleton(r.premise.obj, cls.obj, r.pvars) for r in self.reflection)

    def _skeleton(self, pat, t, pvars) -> bool:
        """Cheap syntactic pre-filter for reflection premises."""
        ph, pargs = spine(pat)
        if isinstance(ph, Var) and ph.name in pvars:
            return True
        th, targs = spine(t)
        if isinstance(th, Var) and th.name in self.rules_by_head:
            return True
        if isinstance(th, Lam) or (isinstance(th, Var) and self.roles.get(th.name) == CTX):
            return True
        if type(ph) is not type(th):
            return False
        if isinstance(ph, Var):
            if ph.name != th.name or len(pargs) != len(targs):
                return False
            return all(self._skeleton(p, a, pvars) for p, a in zip(pargs, targs))
        return True
