"""Congruence closure over ground objects.

Applications (and level successors) are the only function symbols; every
other object is an atom compared structurally.  Each class keeps its least
member under a caller-supplied weight, used as the rewrite target.
"""

from __future__ import annotations

from typing import Callable, Optional

from eqlf.core import App, LSuc, Object


class GroundEqStore:
    def __init__(self, weight: Callable[[Object], tuple]):
        self.weight = weight
        self.terms: list[Object] = []
        self.index: dict[Object, int] = {}
        self.parent: list[int] = []
        self.members: list[list[int]] = []
        self.uses: list[list[int]] = []
        self.best: list[int] = []
        self.sigs: dict[tuple, int] = {}
        self.equations: list[tuple[Object, Object]] = []

    def __len__(self):
        return len(self.terms)

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def _children(self, t: Object) -> tuple:
        if isinstance(t, App):
            return ("app", t.fun, t.arg)
        if isinstance(t, LSuc):
            return ("lsuc", t.level)
        return ()

    def _signature(self, i: int) -> Optional[tuple]:
        kids = self._children(self.terms[i])
        if not kids:
            return None
        return (kids[0],) + tuple(self.find(self.index[k]) for k in kids[1:])

    def add(self, t: Object) -> int:
        if t in self.index:
            return self.index[t]
        kids = self._children(t)
        for k in kids[1:]:
            self.add(k)
        i = len(self.terms)
        self.terms.append(t)
        self.index[t] = i
        self.parent.append(i)
        self.members.append([i])
        self.uses.append([])
        self.best.append(i)
        for k in kids[1:]:
            self.uses[self.find(self.index[k])].append(i)
        sig = self._signature(i)
        if sig is not None:
            other = self.sigs.get(sig)
            if other is None:
                self.sigs[sig] = i
            else:
                self._merge(i, other)
        return i

    def merge(self, a: Object, b: Object):
        self.equations.append((a, b))
        self._merge(self.add(a), self.add(b))

    def _merge(self, i: int, j: int):
        pending = [(i, j)]
        while pending:
            x, y = pending.pop()
            rx, ry = self.find(x), self.find(y)
            if rx == ry:
                continue
            if len(self.members[rx]) > len(self.members[ry]):
                rx, ry = ry, rx
            # rx is merged into ry
            self.parent[rx] = ry
            self.members[ry].extend(self.members[rx])
            self.members[rx] = []
            if self.weight(self.terms[self.best[rx]]) < self.weight(self.terms[self.best[ry]]):
                self.best[ry] = self.best[rx]
            moved, self.uses[rx] = self.uses[rx], []
            for u in moved:
                sig = self._signature(u)
                other = self.sigs.get(sig)
                if other is not None and self.find(other) != self.find(u):
                    pending.append((u, other))
                else:
                    self.sigs[sig] = u
            self.uses[ry].extend(moved)

    def equal(self, a: Object, b: Object) -> bool:
        return self.find(self.add(a)) == self.find(self.add(b))

    def rep(self, t: Object) -> Optional[Object]:
        """Least member of ``t``'s class, or None if ``t`` is unknown."""
        i = self.index.get(t)
        if i is None:
            return None
        return self.terms[self.best[self.find(i)]]

    def class_of(self, t: Object) -> list[Object]:
        i = self.index.get(t)
        if i is None:
            return [t]
        return [self.terms[m] for m in self.members[self.find(i)]]
