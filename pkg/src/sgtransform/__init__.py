"""Numerical semigroup transforms, the trees they induce, and Wilf checks."""

from .sgcore import (
    ClosureViolation,
    DomainError,
    InvariantReport,
    MissingZero,
    NotCofinite,
    NotMinimalGenerator,
    NotSpecialGap,
    NumericalSemigroup,
    SemigroupError,
    almost_ordinary,
    from_gaps,
    from_generators,
    from_small_elements,
)
from .transforms import TransformKind, TransformTrace, f1, f2, f3, iterate, transform_a, transform_b
from .trees import SemigroupTree, TreeKind, build_tree, census, children_a, children_b, is_leaf
from .wilf import eliahou_number, leaf_reduction_check, scan, wilf_check

__version__ = "0.1.0"
