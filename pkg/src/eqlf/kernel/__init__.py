"""Type checking and equality for the framework."""

from eqlf.kernel.checker import (
    Kernel,
    check_class,
    check_context,
    check_object,
    equal_classes,
    equal_objects,
    infer_object,
    normalize,
    whnf_class,
)
from eqlf.kernel.congruence import GroundEqStore
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
    IllTypedObject,
    KernelError,
    NotAFunction,
    NotASort,
    Outcome,
    TraceStep,
    UnboundVariable,
    Verdict,
)
from eqlf.kernel.rules import (
    Extraction,
    IrrelevanceRule,
    ReflectionRule,
    RewriteRule,
    RuleKind,
    extract_rules,
)

__all__ = [
    "ArgumentClassMismatch",
    "CannotInferBullet",
    "CheckConfig",
    "ClassMismatch",
    "DuplicateName",
    "EndpointIllTyped",
    "EqualityNotProven",
    "Extraction",
    "FuelExhausted",
    "GroundEqStore",
    "IllFormedClass",
    "IllTypedObject",
    "IrrelevanceRule",
    "Kernel",
    "KernelError",
    "NotAFunction",
    "NotASort",
    "Outcome",
    "ReflectionRule",
    "RewriteRule",
    "RuleKind",
    "TraceStep",
    "UnboundVariable",
    "Verdict",
    "check_class",
    "check_context",
    "check_object",
    "equal_classes",
    "equal_objects",
    "extract_rules",
    "infer_object",
    "normalize",
    "whnf_class",
]
