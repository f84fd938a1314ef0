"""Canonical numerical semigroups and their invariants.

A numerical semigroup is stored as its conductor ``c`` together with an
integer bitmask of the members below ``c``; every integer ``>= c`` is an
implicit member.  The encoding is canonical: ``c - 1`` is always a gap, so two
semigroups are equal exactly when their ``(conductor, bits)`` pairs are.

Bit arithmetic on Python ints does the heavy lifting.  For a set ``A`` encoded
as a mask, ``A << s`` is the translate ``A + s``, so closure, special-gap and
minimal-generator questions reduce to a handful of shifts and ands per element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Iterator, Optional


class SemigroupError(ValueError):
    """Base class for invalid semigroup input or out-of-domain requests."""


class ClosureViolation(SemigroupError):
    pass


class MissingZero(SemigroupError):
    pass


class NotCofinite(SemigroupError):
    pass


class NotSpecialGap(SemigroupError):
    pass


class NotMinimalGenerator(SemigroupError):
    pass


class DomainError(SemigroupError):
    """Raised when an operation is applied outside its domain.

    ``reason`` is a short machine-friendly tag such as ``"ordinary"`` or
    ``"almost-ordinary"``.
    """

    def __init__(self, message: str, reason: str = "") -> None:
        super().__init__(message)
        self.reason = reason


def _low(n: int) -> int:
    """Mask with bits ``0 .. n-1`` set."""
    return (1 << n) - 1 if n > 0 else 0


def _bits_of(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _is_closed(bits: int, conductor: int) -> Optional[tuple[int, int]]:
    """Return a pair ``(a, b)`` of members with ``a + b`` missing, or None."""
    if conductor == 0:
        return None
    full = _low(conductor)
    holes = full & ~bits
    nonzero = bits & ~1
    for a in _bits_of(nonzero):
        if 2 * a >= conductor:
            break
        bad = (nonzero << a) & holes
        if bad:
            b = (bad & -bad).bit_length() - 1 - a
            return a, b
    return None


@dataclass(frozen=True, order=True)
class NumericalSemigroup:
    """A cofinite additive submonoid of the naturals.

    ``bits`` has bit ``i`` set iff ``i`` is a member, for ``0 <= i < conductor``.
    Use the constructors below rather than instantiating directly; they
    normalize and validate.
    """

    conductor: int
    bits: int

    # ---- construction -------------------------------------------------

    @classmethod
    def _raw(cls, conductor: int, bits: int) -> "NumericalSemigroup":
        """Normalize the conductor without checking closure."""
        bits &= _low(conductor)
        while conductor > 0 and (bits >> (conductor - 1)) & 1:
            conductor -= 1
        return cls(conductor, bits & _low(conductor))

    @classmethod
    def _checked(cls, conductor: int, bits: int) -> "NumericalSemigroup":
        s = cls._raw(conductor, bits)
        if s.conductor and not s.bits & 1:
            raise MissingZero("0 must be a member")
        bad = _is_closed(s.bits, s.conductor)
        if bad is not None:
            a, b = bad
            raise ClosureViolation(f"{a} + {b} = {a + b} is not a member")
        return s

    @classmethod
    def naturals(cls) -> "NumericalSemigroup":
        return cls(0, 0)

    @classmethod
    def ordinary(cls, conductor: int) -> "NumericalSemigroup":
        """The semigroup ``{0, c, ->}``."""
        if conductor < 0:
            raise SemigroupError("conductor must be nonnegative")
        return cls._raw(conductor, 1)

    @classmethod
    def from_members(cls, members: Iterable[int], conductor: int) -> "NumericalSemigroup":
        """Build from an unordered collection of members below ``conductor``."""
        bits = 0
        for x in members:
            if x < 0:
                raise SemigroupError(f"negative member {x}")
            if x < conductor:
                bits |= 1 << x
        if conductor > 0 and not bits & 1:
            raise MissingZero("0 must be a member")
        return cls._checked(conductor, bits)

    @classmethod
    def from_gaps(cls, gaps: Iterable[int]) -> "NumericalSemigroup":
        gaps = sorted(set(gaps))
        if gaps and gaps[0] <= 0:
            raise MissingZero("gaps must be positive integers")
        conductor = gaps[-1] + 1 if gaps else 0
        bits = _low(conductor)
        for h in gaps:
            bits &= ~(1 << h)
        return cls._checked(conductor, bits)

    # ---- membership ---------------------------------------------------

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, int) or x < 0:
            return False
        return x >= self.conductor or bool((self.bits >> x) & 1)

    def mask(self, limit: int) -> int:
        """Members in ``[0, limit)`` as a bitmask."""
        if limit <= self.conductor:
            return self.bits & _low(limit)
        return self.bits | (_low(limit) & ~_low(self.conductor))

    def members_below(self, limit: int) -> list[int]:
        return list(_bits_of(self.mask(limit)))

    def small_elements(self) -> list[int]:
        """Members below the conductor (``[0]`` for the naturals)."""
        return list(_bits_of(self.bits)) or [0]

    # ---- invariants ---------------------------------------------------

    @cached_property
    def gaps(self) -> list[int]:
        return list(_bits_of(_low(self.conductor) & ~self.bits))

    @property
    def genus(self) -> int:
        return self.conductor - self.bits.bit_count() if self.conductor else 0

    @property
    def frobenius(self) -> int:
        return self.conductor - 1

    @cached_property
    def multiplicity(self) -> int:
        rest = self.bits & ~1
        if not rest:
            return max(self.conductor, 1)
        return (rest & -rest).bit_length() - 1

    @property
    def left(self) -> int:
        """Number of members below the Frobenius number (1 for the naturals)."""
        if self.conductor == 0:
            return 1
        return self.frobenius + 1 - self.genus

    @cached_property
    def _generator_mask(self) -> int:
        m = self.multiplicity
        # x >= c + m splits as m + (x - m) with x - m >= c > 0; N needs c = 1
        window = max(self.conductor, 1) + m
        nonzero = self.mask(window) & ~1
        sums = 0
        for a in _bits_of(nonzero):
            if 2 * a >= window:
                break
            sums |= nonzero << a
        return nonzero & ~sums & _low(window)

    @cached_property
    def minimal_generators(self) -> list[int]:
        return list(_bits_of(self._generator_mask))

    @property
    def embedding_dimension(self) -> int:
        return self._generator_mask.bit_count()

    def is_minimal_generator(self, x: int) -> bool:
        return x > 0 and bool((self._generator_mask >> x) & 1)

    def is_special_gap(self, h: int) -> bool:
        if h < 0 or h in self:
            return False
        if 2 * h not in self:
            return False
        c = self.conductor
        nonzero = self.bits & ~1
        # h + s for s >= c is automatically a member
        return not ((nonzero << h) & _low(c) & ~self.bits)

    @cached_property
    def special_gaps(self) -> list[int]:
        return [h for h in self.gaps if self.is_special_gap(h)]

    @property
    def sub_frobenius(self) -> int:
        """Second largest gap."""
        gaps = self.gaps
        if len(gaps) < 2 or self.is_ordinary:
            raise DomainError("sub-Frobenius number needs a non-ordinary semigroup", "ordinary")
        return gaps[-2]

    # ---- predicates ---------------------------------------------------

    @property
    def is_ordinary(self) -> bool:
        return self.bits <= 1

    @property
    def gaps_above_multiplicity(self) -> int:
        m = self.multiplicity
        return sum(1 for h in self.gaps if h > m)

    @property
    def is_almost_ordinary(self) -> bool:
        return self.gaps_above_multiplicity == 1

    @property
    def is_symmetric(self) -> bool:
        return 2 * self.genus == self.frobenius + 1

    @property
    def is_pseudo_symmetric(self) -> bool:
        return 2 * self.genus == self.frobenius + 2

    @property
    def is_irreducible(self) -> bool:
        return self.special_gaps == ([self.frobenius] if self.conductor else [])

    @property
    def is_special(self) -> bool:
        m, f = self.multiplicity, self.frobenius
        return not any(h > m and h != f for h in self.special_gaps)

    # ---- elementary moves ---------------------------------------------

    def add_special_gap(self, h: int) -> "NumericalSemigroup":
        if not self.is_special_gap(h):
            raise NotSpecialGap(f"{h} is not a special gap")
        return NumericalSemigroup._raw(self.conductor, self.bits | (1 << h))

    def remove_minimal_generator(self, x: int) -> "NumericalSemigroup":
        if not self.is_minimal_generator(x):
            raise NotMinimalGenerator(f"{x} is not a minimal generator")
        c = max(self.conductor, x + 1)
        return NumericalSemigroup._raw(c, self.mask(c) & ~(1 << x))

    def with_member(self, x: int) -> "NumericalSemigroup":
        """``S ∪ {x}``, validated."""
        return NumericalSemigroup._checked(self.conductor, self.bits | (1 << x))

    def without_member(self, x: int) -> "NumericalSemigroup":
        """``S \\ {x}``, validated."""
        c = max(self.conductor, x + 1)
        return NumericalSemigroup._checked(c, self.mask(c) & ~(1 << x))

    # ---- misc ---------------------------------------------------------

    def key(self) -> tuple[int, int]:
        return (self.conductor, self.bits)

    def __repr__(self) -> str:
        small = self.small_elements() if self.conductor else []
        inner = ",".join(map(str, small + [self.conductor])) if self.conductor else "0"
        return f"NumericalSemigroup({{{inner},->}})"

    def report(self) -> "InvariantReport":
        return InvariantReport.of(self)

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "gaps": self.gaps,
            "min_generators": self.minimal_generators,
            "frobenius": self.frobenius,
            "genus": self.genus,
            "multiplicity": self.multiplicity,
            "left": self.left,
            "embedding_dimension": self.embedding_dimension,
            "special_gaps": self.special_gaps,
        }


@dataclass(frozen=True)
class InvariantReport:
    frobenius: int
    genus: int
    multiplicity: int
    left: int
    embedding_dimension: int
    gaps: list[int]
    min_generators: list[int]
    special_gaps: list[int]
    sub_frobenius: Optional[int]

    @classmethod
    def of(cls, s: NumericalSemigroup) -> "InvariantReport":
        u = None if s.is_ordinary else s.sub_frobenius
        return cls(
            frobenius=s.frobenius,
            genus=s.genus,
            multiplicity=s.multiplicity,
            left=s.left,
            embedding_dimension=s.embedding_dimension,
            gaps=list(s.gaps),
            min_generators=list(s.minimal_generators),
            special_gaps=list(s.special_gaps),
            sub_frobenius=u,
        )


# ---- module-level constructors and accessors ----------------------------


def from_small_elements(members_below: Iterable[int], conductor: int) -> NumericalSemigroup:
    """Semigroup with the given members below ``conductor`` and everything above.

    A trailing run of consecutive members is absorbed into the conductor.
    """
    members = sorted(set(members_below))
    if not members or members[0] != 0:
        raise MissingZero("the member list must start with 0")
    if members != [0] and members[-1] >= conductor:
        raise SemigroupError("listed members must lie below the conductor")
    if conductor < 0:
        raise SemigroupError("conductor must be nonnegative")
    return NumericalSemigroup.from_members(members, conductor)


def from_gaps(gaps: Iterable[int]) -> NumericalSemigroup:
    return NumericalSemigroup.from_gaps(gaps)


def from_generators(gens: Iterable[int]) -> NumericalSemigroup:
    """Smallest numerical semigroup containing ``gens``."""
    gens = sorted({int(x) for x in gens if x != 0})
    if not gens:
        raise NotCofinite("need at least one positive generator")
    if gens[0] < 0:
        raise SemigroupError("generators must be positive")
    if reduce(math.gcd, gens) != 1:
        raise NotCofinite(f"gcd of {gens} is not 1; the complement is infinite")
    m = gens[0]
    window = 2 * (gens[-1] + m)
    while True:
        full = _low(window)
        reach = 1
        while True:
            grown = reach
            for x in gens:
                if x >= window:
                    break
                grown |= reach << x
            grown &= full
            if grown == reach:
                break
            reach = grown
        missing = full & ~reach
        conductor = missing.bit_length()
        # a run of m members below the window edge certifies everything above
        if window - conductor >= m:
            return NumericalSemigroup._raw(conductor, reach)
        window *= 2


def contains(s: NumericalSemigroup, x: int) -> bool:
    return x in s


def gaps(s: NumericalSemigroup) -> list[int]:
    return list(s.gaps)


def genus(s: NumericalSemigroup) -> int:
    return s.genus


def frobenius(s: NumericalSemigroup) -> int:
    return s.frobenius


def multiplicity(s: NumericalSemigroup) -> int:
    return s.multiplicity


def left_count(s: NumericalSemigroup) -> int:
    return s.left


def minimal_generators(s: NumericalSemigroup) -> list[int]:
    return list(s.minimal_generators)


def embedding_dimension(s: NumericalSemigroup) -> int:
    return s.embedding_dimension


def special_gaps(s: NumericalSemigroup) -> list[int]:
    return list(s.special_gaps)


def sub_frobenius(s: NumericalSemigroup) -> int:
    return s.sub_frobenius


def is_ordinary(s: NumericalSemigroup) -> bool:
    return s.is_ordinary


def is_almost_ordinary(s: NumericalSemigroup) -> bool:
    return s.is_almost_ordinary


def is_irreducible(s: NumericalSemigroup) -> bool:
    return s.is_irreducible


def is_symmetric(s: NumericalSemigroup) -> bool:
    return s.is_symmetric


def is_pseudo_symmetric(s: NumericalSemigroup) -> bool:
    return s.is_pseudo_symmetric


def is_special(s: NumericalSemigroup) -> bool:
    return s.is_special


def almost_ordinary(g: int, n: int) -> NumericalSemigroup:
    """``{0, g, g+1, ..., g+n-2, g+n, ->}``: genus g, n left elements.

    ``g = 2`` is accepted (only with ``n = 2``), giving ``<2, 5>``.
    """
    if g < 2 or not 2 <= n <= g:
        raise DomainError(f"almost-ordinary semigroup needs g >= 2 and 2 <= n <= g, got g={g}, n={n}", "range")
    return from_small_elements([0, *range(g, g + n - 1)], g + n)


def add_special_gap(s: NumericalSemigroup, h: int) -> NumericalSemigroup:
    return s.add_special_gap(h)


def remove_minimal_generator(s: NumericalSemigroup, x: int) -> NumericalSemigroup:
    return s.remove_minimal_generator(x)
