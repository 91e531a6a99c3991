"""Abstract syntax of the framework: objects, classes and telescopes.

Binding is locally nameless.  Bound variables are de Bruijn indices
(`BVar`), free variables are names (`Var`), and binder names are display
hints excluded from equality, so structural ``==`` is alpha-equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union


class Object:
    __slots__ = ()

    def __str__(self) -> str:
        from eqlf.sigparse import show

        return show(self)


class Class:
    __slots__ = ()

    def __str__(self) -> str:
        from eqlf.sigparse import show

        return show(self)


Term = Union[Object, Class]


def _as_class(x):
    if isinstance(x, Object):
        return Incl(x)
    if not isinstance(x, Class):
        raise TypeError(f"expected a class or object, got {x!r}")
    return x


# -- objects ---------------------------------------------------------------


@dataclass(frozen=True, slots=True, repr=False)
class Var(Object):
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, slots=True, repr=False)
class BVar(Object):
    index: int

    def __repr__(self):
        return f"BVar({self.index})"


@dataclass(frozen=True, slots=True)
class Bullet(Object):
    pass


@dataclass(frozen=True, slots=True)
class PiSort(Object):
    domain: Class
    body: Object
    binder: str = field(default="x", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "domain", _as_class(self.domain))


@dataclass(frozen=True, slots=True)
class Lam(Object):
    domain: Class
    body: Object
    binder: str = field(default="x", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "domain", _as_class(self.domain))


@dataclass(frozen=True, slots=True)
class App(Object):
    fun: Object
    arg: Object


@dataclass(frozen=True, slots=True)
class Lvl(Object):
    """The built-in sort of universe levels."""


@dataclass(frozen=True, slots=True)
class LZero(Object):
    pass


@dataclass(frozen=True, slots=True)
class LSuc(Object):
    level: Object


# -- classes ---------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SortCls(Class):
    pass


@dataclass(frozen=True, slots=True)
class PiCls(Class):
    domain: Class
    body: Class
    binder: str = field(default="x", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "domain", _as_class(self.domain))


@dataclass(frozen=True, slots=True)
class EqCls(Class):
    sort: Class
    lhs: Object
    rhs: Object

    def __post_init__(self):
        object.__setattr__(self, "sort", _as_class(self.sort))


@dataclass(frozen=True, slots=True)
class Incl(Class):
    obj: Object


SORT = SortCls()
BULLET = Bullet()
LVL = Lvl()
LZERO = LZero()


# -- binding ---------------------------------------------------------------


def instantiate(t, repl: Object, k: int = 0):
    """Replace the loose index ``k`` in ``t`` by the locally closed ``repl``."""
    if isinstance(t, BVar):
        return repl if t.index == k else t
    if isinstance(t, App):
        return App(instantiate(t.fun, repl, k), instantiate(t.arg, repl, k))
    if isinstance(t, (Var, Bullet, Lvl, LZero, SortCls)):
        return t
    if isinstance(t, Lam):
        return Lam(instantiate(t.domain, repl, k), instantiate(t.body, repl, k + 1), t.binder)
    if isinstance(t, PiSort):
        return PiSort(instantiate(t.domain, repl, k), instantiate(t.body, repl, k + 1), t.binder)
    if isinstance(t, PiCls):
        return PiCls(instantiate(t.domain, repl, k), instantiate(t.body, repl, k + 1), t.binder)
    if isinstance(t, Incl):
        return Incl(instantiate(t.obj, repl, k))
    if isinstance(t, EqCls):
        return EqCls(instantiate(t.sort, repl, k), instantiate(t.lhs, repl, k), instantiate(t.rhs, repl, k))
    if isinstance(t, LSuc):
        return LSuc(instantiate(t.level, repl, k))
    raise TypeError(t)


def abstract(t, name: str, k: int = 0):
    """Turn free occurrences of ``name`` into the index bound ``k`` levels up."""
    if isinstance(t, Var):
        return BVar(k) if t.name == name else t
    if isinstance(t, App):
        return App(abstract(t.fun, name, k), abstract(t.arg, name, k))
    if isinstance(t, (BVar, Bullet, Lvl, LZero, SortCls)):
        return t
    if isinstance(t, Lam):
        return Lam(abstract(t.domain, name, k), abstract(t.body, name, k + 1), t.binder)
    if isinstance(t, PiSort):
        return PiSort(abstract(t.domain, name, k), abstract(t.body, name, k + 1), t.binder)
    if isinstance(t, PiCls):
        return PiCls(abstract(t.domain, name, k), abstract(t.body, name, k + 1), t.binder)
    if isinstance(t, Incl):
        return Incl(abstract(t.obj, name, k))
    if isinstance(t, EqCls):
        return EqCls(abstract(t.sort, name, k), abstract(t.lhs, name, k), abstract(t.rhs, name, k))
    if isinstance(t, LSuc):
        return LSuc(abstract(t.level, name, k))
    raise TypeError(t)


def subst_many(t, mapping: Mapping[str, Object]):
    """Simultaneously replace free variables by locally closed objects."""
    if not mapping:
        return t
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, App):
        return App(subst_many(t.fun, mapping), subst_many(t.arg, mapping))
    if isinstance(t, (BVar, Bullet, Lvl, LZero, SortCls)):
        return t
    if isinstance(t, Lam):
        return Lam(subst_many(t.domain, mapping), subst_many(t.body, mapping), t.binder)
    if isinstance(t, PiSort):
        return PiSort(subst_many(t.domain, mapping), subst_many(t.body, mapping), t.binder)
    if isinstance(t, PiCls):
        return PiCls(subst_many(t.domain, mapping), subst_many(t.body, mapping), t.binder)
    if isinstance(t, Incl):
        return Incl(subst_many(t.obj, mapping))
    if isinstance(t, EqCls):
        return EqCls(subst_many(t.sort, mapping), subst_many(t.lhs, mapping), subst_many(t.rhs, mapping))
    if isinstance(t, LSuc):
        return LSuc(subst_many(t.level, mapping))
    raise TypeError(t)


def subst(t, var: str, replacement: Object):
    """Capture-avoiding substitution of ``replacement`` for the free ``var``."""
    if not is_locally_closed(replacement):
        raise ValueError("replacement has loose bound indices")
    return subst_many(t, {var: replacement})


subst_object = subst
subst_class = subst


def free_vars(t) -> set[str]:
    out: set[str] = set()
    _free(t, out)
    return out


def _free(t, out):
    while True:
        if isinstance(t, Var):
            out.add(t.name)
            return
        if isinstance(t, App):
            _free(t.fun, out)
            t = t.arg
        elif isinstance(t, (Lam, PiSort, PiCls)):
            _free(t.domain, out)
            t = t.body
        elif isinstance(t, Incl):
            t = t.obj
        elif isinstance(t, EqCls):
            _free(t.sort, out)
            _free(t.lhs, out)
            t = t.rhs
        elif isinstance(t, LSuc):
            t = t.level
        else:
            return


def occurs(name: str, t) -> bool:
    return name in free_vars(t)


def is_locally_closed(t, k: int = 0) -> bool:
    if isinstance(t, BVar):
        return t.index < k
    if isinstance(t, App):
        return is_locally_closed(t.fun, k) and is_locally_closed(t.arg, k)
    if isinstance(t, (Lam, PiSort, PiCls)):
        return is_locally_closed(t.domain, k) and is_locally_closed(t.body, k + 1)
    if isinstance(t, Incl):
        return is_locally_closed(t.obj, k)
    if isinstance(t, EqCls):
        return all(is_locally_closed(x, k) for x in (t.sort, t.lhs, t.rhs))
    if isinstance(t, LSuc):
        return is_locally_closed(t.level, k)
    return True


def alpha_equal(a, b) -> bool:
    return a == b


def size(t) -> int:
    if isinstance(t, App):
        return size(t.fun) + size(t.arg)
    if isinstance(t, (Lam, PiSort, PiCls)):
        return 1 + size(t.domain) + size(t.body)
    if isinstance(t, Incl):
        return size(t.obj)
    if isinstance(t, EqCls):
        return 1 + size(t.sort) + size(t.lhs) + size(t.rhs)
    if isinstance(t, LSuc):
        return 1 + size(t.level)
    return 1


# -- spines and named builders --------------------------------------------


def spine(t: Object) -> tuple[Object, list[Object]]:
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def apply(head: Object, *args: Object) -> Object:
    for a in args:
        head = App(head, a)
    return head


def lam(name: str, domain, body: Object) -> Lam:
    return Lam(domain, abstract(body, name), name)


def pi_sort(name: str, domain, body: Object) -> PiSort:
    return PiSort(domain, abstract(body, name), name)


def pi_cls(name: str, domain, body) -> PiCls:
    return PiCls(domain, abstract(_as_class(body), name), name)


def arrow(domain, body) -> PiCls:
    return PiCls(domain, _as_class(body), "_")


# -- telescopes ------------------------------------------------------------


@dataclass(frozen=True)
class Telescope:
    """Ordered ``name : class`` declarations; serves as both context and signature."""

    decls: tuple[tuple[str, Class], ...] = ()

    @classmethod
    def of(cls, decls: Iterable[tuple[str, Class]]) -> Telescope:
        return cls(tuple((n, _as_class(k)) for n, k in decls))

    def __iter__(self) -> Iterator[tuple[str, Class]]:
        return iter(self.decls)

    def __len__(self):
        return len(self.decls)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Telescope(self.decls[i])
        return self.decls[i]

    def __add__(self, other) -> Telescope:
        return Telescope(self.decls + tuple(other))

    def names(self) -> list[str]:
        return [n for n, _ in self.decls]

    def lookup(self, name: str) -> Class | None:
        for n, k in reversed(self.decls):
            if n == name:
                return k
        return None

    def index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.decls):
            if n == name:
                return i
        raise KeyError(name)

    def extend(self, name: str, cls) -> Telescope:
        return Telescope(self.decls + ((name, _as_class(cls)),))
