from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional


class KernelError(Exception):
    """A judgment could not be derived.

    ``position`` names the declaration being checked when the failure
    happened, if any.
    """

    position: Optional[str] = None

    def at(self, position: str) -> KernelError:
        if self.position is None:
            self.position = position
        return self

    def __str__(self):
        msg = self.describe()
        return f"{self.position}: {msg}" if self.position else msg

    def describe(self) -> str:
        return self.__class__.__name__


class UnboundVariable(KernelError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def describe(self):
        return f"unbound variable {self.name}"


class DuplicateName(KernelError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def describe(self):
        return f"{self.name} is already declared"


class IllFormedClass(KernelError):
    def __init__(self, cls=None, reason: str = ""):
        super().__init__(cls, reason)
        self.cls = cls
        self.reason = reason

    def describe(self):
        return f"ill-formed class {self.cls}: {self.reason}" if self.reason else f"ill-formed class {self.cls}"


class NotASort(IllFormedClass):
    def __init__(self, domain):
        super().__init__(domain, "not a sort")
        self.domain = domain

    def describe(self):
        return f"{self.domain} is not a sort"


class EndpointIllTyped(IllFormedClass):
    def __init__(self, side: str, cause: KernelError):
        super().__init__(None, str(cause))
        self.side = side
        self.cause = cause

    def describe(self):
        return f"{self.side} endpoint of equation is ill-typed: {self.cause.describe()}"


class IllTypedObject(KernelError):
    pass


class NotAFunction(IllTypedObject):
    def __init__(self, obj, cls):
        super().__init__(obj, cls)
        self.obj = obj
        self.cls = cls

    def describe(self):
        return f"{self.obj} is applied but has class {self.cls}"


class CannotInferBullet(IllTypedObject):
    def describe(self):
        return "the class of * cannot be inferred; it only checks against an equation"


class ClassMismatch(IllTypedObject):
    def __init__(self, inferred, expected):
        super().__init__(inferred, expected)
        self.inferred = inferred
        self.expected = expected

    def describe(self):
        return f"expected class {self.expected}, found {self.inferred}"


class ArgumentClassMismatch(ClassMismatch):
    def describe(self):
        return f"argument has class {self.inferred}, expected {self.expected}"


class EqualityNotProven(IllTypedObject):
    def __init__(self, lhs, rhs):
        super().__init__(lhs, rhs)
        self.lhs = lhs
        self.rhs = rhs

    def describe(self):
        return f"could not prove {self.lhs} = {self.rhs}"


class FuelExhausted(KernelError):
    def __init__(self, steps_used: int):
        super().__init__(steps_used)
        self.steps_used = steps_used

    def describe(self):
        return f"fuel exhausted after {self.steps_used} steps"


class Outcome(enum.Enum):
    PROVEN_EQUAL = "proven-equal"
    NOT_PROVEN = "not-proven"
    FUEL_EXHAUSTED = "fuel-exhausted"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    steps_used: int = 0

    @property
    def proven(self) -> bool:
        return self.outcome is Outcome.PROVEN_EQUAL

    def __str__(self):
        if self.outcome is Outcome.FUEL_EXHAUSTED:
            return f"{self.outcome.value} ({self.steps_used} steps)"
        return self.outcome.value


@dataclass(frozen=True)
class TraceStep:
    rule: str
    position: tuple[int, ...]
    redex: object
    contractum: object

    def render(self) -> str:
        where = ".".join(map(str, self.position)) or "root"
        return f"{self.rule} @ {where}"


@dataclass(frozen=True)
class CheckConfig:
    fuel: int = 10000
    eta_enabled: bool = True
    trace_sink: Optional[Callable[[TraceStep], None]] = None

    def __post_init__(self):
        if self.fuel < 1:
            raise ValueError("fuel must be at least 1")
