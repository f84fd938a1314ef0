"""Semigroup transforms and their iteration.

Five transforms are provided:

* ``f1``: fill in the Frobenius number (the classical semigroup-tree parent).
* ``f2``: ordinarization, ``(S ∪ {F}) \\ {m}``.
* ``f3``: irreducibility step, add the largest gap ``x`` with ``F - x`` a gap.
* ``transform_a``: ``(S ∪ {h}) \\ {m}`` with ``h`` the largest special gap
  below ``F``; defined on non-special semigroups.
* ``transform_b``: ``(S \\ {m}) ∪ {u}`` with ``u`` the second largest gap;
  defined on semigroups that are neither ordinary nor almost-ordinary.

``transform_a`` and ``transform_b`` keep F, g and n fixed while the
multiplicity strictly grows, so iterating either one ends at the
almost-ordinary semigroup with the same genus and left count.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from typing import Callable, Optional

from .sgcore import DomainError, NumericalSemigroup

# Re-validate closure of every transform output; cheap and catches bugs early.
DEBUG = os.environ.get("SGTRANSFORM_DEBUG", "1") != "0"


class InternalError(RuntimeError):
    pass


class TransformKind(enum.Enum):
    CLASSICAL = "f1"
    ORDINARIZATION = "f2"
    IRREDUCIBILITY = "f3"
    A = "a"
    B = "b"

    @classmethod
    def parse(cls, tag: str) -> "TransformKind":
        tag = tag.lower()
        aliases = {"classical": "f1", "ordinarization": "f2", "irreducibility": "f3"}
        return cls(aliases.get(tag, tag))

    def domain_violation(self, s: NumericalSemigroup) -> Optional[str]:
        """Why ``s`` lies outside this transform's domain, or None."""
        if self is TransformKind.CLASSICAL:
            return "naturals" if s.conductor == 0 else None
        if self is TransformKind.ORDINARIZATION:
            return "ordinary" if s.is_ordinary else None
        if self is TransformKind.IRREDUCIBILITY:
            return "irreducible" if s.is_irreducible else None
        if self is TransformKind.A:
            return special_reason(s)
        if s.is_ordinary:
            return "ordinary"
        if s.is_almost_ordinary:
            return "almost-ordinary"
        return None

    def apply(self, s: NumericalSemigroup) -> NumericalSemigroup:
        return _APPLY[self](s)


def special_reason(s: NumericalSemigroup) -> Optional[str]:
    """Which special shape ``s`` has, or None when it is not special."""
    if not s.is_special:
        return None
    if s.is_ordinary:
        return "ordinary"
    if s.is_irreducible:
        return "irreducible"
    if s.is_almost_ordinary:
        return "almost-ordinary"
    return "special"


def _validated(s: NumericalSemigroup) -> NumericalSemigroup:
    if DEBUG:
        return NumericalSemigroup._checked(s.conductor, s.bits)
    return s


def _set(s: NumericalSemigroup, add: int | None = None, remove: int | None = None) -> NumericalSemigroup:
    c = s.conductor
    if remove is not None:
        c = max(c, remove + 1)
    bits = s.mask(c)
    if remove is not None:
        bits &= ~(1 << remove)
    if add is not None:
        bits |= 1 << add
    return _validated(NumericalSemigroup._raw(c, bits))


def f1(s: NumericalSemigroup) -> NumericalSemigroup:
    if s.conductor == 0:
        raise DomainError("the classical transform is undefined on N", "naturals")
    return _set(s, add=s.frobenius)


def f2(s: NumericalSemigroup) -> NumericalSemigroup:
    if s.is_ordinary:
        raise DomainError("ordinarization is undefined on ordinary semigroups", "ordinary")
    return _set(s, add=s.frobenius, remove=s.multiplicity)


def _irreducibility_candidates(s: NumericalSemigroup) -> list[int]:
    f = s.frobenius
    return [x for x in s.gaps if (f - x) not in s and 2 * x != f]


def f3(s: NumericalSemigroup) -> NumericalSemigroup:
    if s.is_irreducible:
        raise DomainError("the irreducibility transform is undefined on irreducible semigroups", "irreducible")
    return _set(s, add=max(_irreducibility_candidates(s)))


def max_special_gap_below_frobenius(s: NumericalSemigroup) -> int:
    """Largest special gap other than F.

    Equals the largest gap ``x`` with ``F - x`` a gap and ``2x != F``; both are
    computed and compared when DEBUG is on.
    """
    if s.is_irreducible:
        raise DomainError("irreducible semigroups have no special gap besides F", "irreducible")
    f = s.frobenius
    h = max(x for x in s.special_gaps if x != f)
    if DEBUG:
        other = max(_irreducibility_candidates(s))
        if other != h or 2 * h <= f:
            raise InternalError(f"special-gap formulas disagree on {s!r}: {h} vs {other}")
    return h


def transform_a(s: NumericalSemigroup) -> NumericalSemigroup:
    reason = special_reason(s)
    if reason is not None:
        raise DomainError(f"input is special: {reason}", reason)
    h = max_special_gap_below_frobenius(s)
    return _set(s, add=h, remove=s.multiplicity)


def transform_b(s: NumericalSemigroup) -> NumericalSemigroup:
    reason = TransformKind.B.domain_violation(s)
    if reason is not None:
        raise DomainError(f"input is {reason}", reason)
    # remove m first; S ∪ {u} need not be closed
    return _set(s, add=s.sub_frobenius, remove=s.multiplicity)


_APPLY: dict[TransformKind, Callable[[NumericalSemigroup], NumericalSemigroup]] = {
    TransformKind.CLASSICAL: f1,
    TransformKind.ORDINARIZATION: f2,
    TransformKind.IRREDUCIBILITY: f3,
    TransformKind.A: transform_a,
    TransformKind.B: transform_b,
}


@dataclass
class Step:
    added: Optional[int]
    removed: Optional[int]
    e_before: int
    e_after: int

    def to_json(self) -> dict:
        return {"h": self.added, "removed_m": self.removed, "e_before": self.e_before, "e_after": self.e_after}


@dataclass
class TransformTrace:
    kind: TransformKind
    steps: list[NumericalSemigroup]
    annotations: list[Step] = field(default_factory=list)

    @property
    def terminal(self) -> NumericalSemigroup:
        return self.steps[-1]

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "steps": [s.to_json() for s in self.steps],
            "annotations": [a.to_json() for a in self.annotations],
        }


def _diff(before: NumericalSemigroup, after: NumericalSemigroup) -> Step:
    top = max(before.conductor, after.conductor)
    b, a = before.mask(top), after.mask(top)
    added = (a & ~b).bit_length() - 1
    removed = (b & ~a).bit_length() - 1
    return Step(
        added if added >= 0 else None,
        removed if removed >= 0 else None,
        before.embedding_dimension,
        after.embedding_dimension,
    )


def iterate(s: NumericalSemigroup, kind: TransformKind | str, max_steps: Optional[int] = None) -> TransformTrace:
    """Apply ``kind`` until the result leaves its domain.

    ``max_steps`` truncates the trace early (``None`` runs to the end).
    """
    if isinstance(kind, str):
        kind = TransformKind.parse(kind)
    trace = TransformTrace(kind, [s])
    # every transform here changes one monotone quantity bounded by g
    limit = s.genus + 2
    while kind.domain_violation(trace.terminal) is None:
        if max_steps is not None and len(trace.annotations) >= max_steps:
            break
        if len(trace.annotations) > limit:
            raise InternalError(f"{kind.value} did not terminate within {limit} steps from {s!r}")
        nxt = kind.apply(trace.terminal)
        trace.annotations.append(_diff(trace.terminal, nxt))
        trace.steps.append(nxt)
    return trace
