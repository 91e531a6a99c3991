"""Turning equation-classed declarations into rewrite rules.

A declaration whose class is a Pi-telescope ending in ``Eq(S; l; r)`` is
opened with pattern variables (named ``?x`` so they can never clash with
user names) and classified:

* reduction: ``l`` is a rigid-headed higher-order pattern covering the
  variables of ``r`` and ``S``; used left to right.
* expansion: ``l`` is a bare pattern variable and ``S`` a pattern fixing
  every other variable of ``r`` (eta-like); used type-directed.
* irrelevance: ``l`` and ``r`` are two distinct variables of class ``S``;
  any two objects of a sort matching ``S`` are equal.
* reflection: the telescope has a premise ``p : P`` whose class pattern
  fixes ``l``, ``r`` and ``S``; any hypothesis matching ``P`` yields the
  ground equation ``l = r``.

Anything else yields a warning and no rule.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

from eqlf.core import (
    App,
    BVar,
    Class,
    EqCls,
    Incl,
    Lam,
    LSuc,
    Object,
    PiCls,
    PiSort,
    Telescope,
    Var,
    free_vars,
    instantiate,
    spine,
)


class RuleKind(enum.Enum):
    REDUCTION = "reduction"
    EXPANSION = "expansion"


@dataclass(frozen=True)
class RewriteRule:
    name: str
    televars: Telescope
    sort: Class
    lhs: Object
    rhs: Object
    kind: RuleKind

    @property
    def pvars(self) -> frozenset[str]:
        return frozenset(self.televars.names())

    @property
    def head(self) -> str:
        h, _ = spine(self.lhs)
        return h.name

    @property
    def arity(self) -> int:
        return len(spine(self.lhs)[1])

    @property
    def intro(self) -> Optional[str]:
        """Head constant of an expansion's right-hand side."""
        h, _ = spine(self.rhs)
        return h.name if isinstance(h, Var) else None


@dataclass(frozen=True)
class IrrelevanceRule:
    name: str
    televars: Telescope
    sort: Class

    @property
    def pvars(self) -> frozenset[str]:
        return frozenset(self.televars.names())


@dataclass(frozen=True)
class ReflectionRule:
    name: str
    televars: Telescope
    premise: Class
    lhs: Object
    rhs: Object

    @property
    def pvars(self) -> frozenset[str]:
        return frozenset(self.televars.names())


Principle = Union[RewriteRule, IrrelevanceRule, ReflectionRule]


@dataclass
class Extraction:
    rules: list[RewriteRule] = field(default_factory=list)
    irrelevance: list[IrrelevanceRule] = field(default_factory=list)
    reflection: list[ReflectionRule] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def reductions(self) -> list[RewriteRule]:
        return [r for r in self.rules if r.kind is RuleKind.REDUCTION]

    @property
    def expansions(self) -> list[RewriteRule]:
        return [r for r in self.rules if r.kind is RuleKind.EXPANSION]

    def add(self, item):
        if isinstance(item, RewriteRule):
            self.rules.append(item)
        elif isinstance(item, IrrelevanceRule):
            self.irrelevance.append(item)
        elif isinstance(item, ReflectionRule):
            self.reflection.append(item)
        elif isinstance(item, str):
            self.warnings.append(item)


def is_equation(cls: Class) -> bool:
    while isinstance(cls, PiCls):
        cls = cls.body
    return isinstance(cls, EqCls)


def open_telescope(cls: Class) -> tuple[list[tuple[str, Class]], Class]:
    """Strip leading Pi-classes, naming each binder as a pattern variable."""
    tele: list[tuple[str, Class]] = []
    taken: set[str] = set()
    while isinstance(cls, PiCls):
        base = "?" + (cls.binder if cls.binder and cls.binder != "_" else "p")
        name, i = base, 0
        while name in taken:
            i += 1
            name = f"{base}{i}"
        taken.add(name)
        tele.append((name, cls.domain))
        cls = instantiate(cls.body, Var(name))
    return tele, cls


def _miller(t, pvars: set[str], depth: int = 0) -> bool:
    """Each pattern variable is applied only to distinct bound variables."""
    if isinstance(t, (PiCls, Lam, PiSort)):
        return _miller(t.domain, pvars, depth) and _miller(t.body, pvars, depth + 1)
    if isinstance(t, Incl):
        return _miller(t.obj, pvars, depth)
    if isinstance(t, EqCls):
        return all(_miller(x, pvars, depth) for x in (t.sort, t.lhs, t.rhs))
    if isinstance(t, LSuc):
        return _miller(t.level, pvars, depth)
    if isinstance(t, App):
        head, args = spine(t)
        if isinstance(head, Var) and head.name in pvars:
            seen = set()
            for a in args:
                if not isinstance(a, BVar) or a.index >= depth:
                    return False
                level = depth - 1 - a.index
                if level in seen:
                    return False
                seen.add(level)
            return True
        return _miller(head, pvars, depth) and all(_miller(a, pvars, depth) for a in args)
    return True


def _rigid_head(t: Object, pvars) -> bool:
    head, _ = spine(t)
    return isinstance(head, Var) and head.name not in pvars


def _pv(t, pvars) -> set[str]:
    return free_vars(t) & pvars


def classify(name: str, cls: Class) -> Union[Principle, str, None]:
    """Classify one declaration; ``None`` if it is not an equation at all."""
    if not is_equation(cls):
        return None
    tele, eq = open_telescope(cls)
    pvars = {n for n, _ in tele}
    televars = Telescope(tuple(tele))
    sort, lhs, rhs = eq.sort, eq.lhs, eq.rhs
    in_lhs, in_rhs, in_sort = _pv(lhs, pvars), _pv(rhs, pvars), _pv(sort, pvars)

    if _rigid_head(lhs, pvars):
        if not _miller(lhs, pvars):
            return f"{name}: left-hand side is not a higher-order pattern"
        if not (in_rhs | in_sort) <= in_lhs:
            missing = sorted(v.lstrip("?") for v in (in_rhs | in_sort) - in_lhs)
            return f"{name}: variables {', '.join(missing)} do not occur on the left-hand side"
        return RewriteRule(name, televars, sort, lhs, rhs, RuleKind.REDUCTION)

    if isinstance(lhs, Var) and lhs.name in pvars:
        m = lhs.name
        sort_ok = isinstance(sort, Incl) and _rigid_head(sort.obj, pvars) and _miller(sort, pvars)
        if (
            sort_ok
            and m not in in_sort
            and m in in_rhs
            and in_rhs <= in_sort | {m}
            and _rigid_head(rhs, pvars)
        ):
            return RewriteRule(name, televars, sort, lhs, rhs, RuleKind.EXPANSION)
        if isinstance(rhs, Var) and rhs.name in pvars and rhs.name != m:
            r = rhs.name
            classes = dict(tele)
            if (
                sort_ok
                and not {m, r} & in_sort
                and classes[m] == sort
                and classes[r] == sort
                and pvars - {m, r} <= in_sort
            ):
                return IrrelevanceRule(name, televars, sort)
            for p, pcls in tele:
                if p in (m, r) or p in in_sort:
                    continue
                if not isinstance(pcls, Incl) or not _rigid_head(pcls.obj, pvars) or not _miller(pcls, pvars):
                    continue
                if pvars - {p} <= _pv(pcls, pvars):
                    return ReflectionRule(name, televars, pcls, lhs, rhs)
        return f"{name}: equation has a variable left-hand side and is not eta-shaped"
    return f"{name}: left-hand side has a flexible head"


def extract_rules(sig) -> Extraction:
    """Rewrite rules, native principles and warnings of a signature."""
    out = Extraction()
    for name, cls in sig:
        out.add(classify(name, cls))
    return out
