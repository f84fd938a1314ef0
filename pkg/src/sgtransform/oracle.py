"""Slow reference implementations used as ground truth in tests.

Everything here works on explicit member sets over a finite window and
evaluates definitions literally, with no bound tricks.  Nothing in this
module imports the fast code paths.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator


class WindowTooSmall(AssertionError):
    """A query fell outside the window of a NaiveSemigroup."""


class NotCofinite(ValueError):
    pass


@dataclass(frozen=True)
class NaiveSemigroup:
    members: frozenset[int]
    window: int

    def has(self, x: int) -> bool:
        if x < 0:
            return False
        if x > self.window:
            raise WindowTooSmall(f"query {x} beyond window {self.window}")
        return x in self.members

    @property
    def gaps(self) -> list[int]:
        return [x for x in range(self.window + 1) if x not in self.members]

    @property
    def frobenius(self) -> int:
        g = self.gaps
        return g[-1] if g else -1

    @property
    def conductor(self) -> int:
        return self.frobenius + 1

    @property
    def genus(self) -> int:
        return len(self.gaps)

    @property
    def multiplicity(self) -> int:
        return min(x for x in self.members if x > 0)

    @property
    def left(self) -> int:
        f = self.frobenius
        if f < 0:
            return 1
        return len([x for x in self.members if x < f])

    def small_elements(self) -> list[int]:
        c = self.conductor
        return sorted(x for x in self.members if x < c) or [0]

    def nonzero(self) -> list[int]:
        return sorted(x for x in self.members if x > 0)


def default_window(conductor: int, multiplicity: int) -> int:
    return 2 * (conductor + multiplicity) + 2


def naive_closure(gens: Iterable[int], window: int) -> NaiveSemigroup:
    """All N-linear combinations of ``gens`` in ``[0, window]``."""
    gens = sorted(set(gens))
    if not gens or reduce(math.gcd, gens) != 1:
        raise NotCofinite(f"generators {gens} do not have gcd 1")
    reach = [False] * (window + 1)
    reach[0] = True
    for x in range(1, window + 1):
        reach[x] = any(x - a >= 0 and reach[x - a] for a in gens)
    members = frozenset(x for x in range(window + 1) if reach[x])
    s = NaiveSemigroup(members, window)
    # the window must hold a full run of multiplicity-many members past F
    if window - s.frobenius < 2 * min(gens):
        raise WindowTooSmall(f"window {window} too small for generators {gens}")
    return s


def from_small(small: Iterable[int], conductor: int, window: int | None = None) -> NaiveSemigroup:
    small = [x for x in small if x < conductor]
    m = min([x for x in small if x > 0] + [max(conductor, 1)])
    if window is None:
        window = default_window(conductor, m)
    members = frozenset(small) | frozenset(range(conductor, window + 1)) | {0}
    return NaiveSemigroup(members, window)


def naive_min_generators(s: NaiveSemigroup) -> list[int]:
    """Nonzero members that are not a sum of two nonzero members."""
    nz = s.nonzero()
    limit = max(s.conductor, 1) + s.multiplicity
    out = []
    for x in nz:
        if x >= limit:
            # x - m >= c, so x = m + (x - m) is decomposable; still verify
            assert s.has(x - s.multiplicity)
            continue
        if not any(s.has(a) and s.has(x - a) for a in range(1, x)):
            out.append(x)
    return out


def naive_special_gaps(s: NaiveSemigroup) -> list[int]:
    """Gaps h with 2h in S and h + s in S for every nonzero member s."""
    out = []
    for h in s.gaps:
        if not s.has(2 * h):
            continue
        if all(s.has(h + t) for t in s.nonzero() if h + t <= s.window):
            out.append(h)
    return out


def naive_is_semigroup(members: set[int], window: int) -> bool:
    if 0 not in members:
        return False
    for a in members:
        for b in members:
            if a + b <= window and a + b not in members:
                return False
    return True


def naive_is_irreducible(s: NaiveSemigroup) -> bool:
    """Every gap x other than F/2 has F - x in S."""
    f = s.frobenius
    if f < 0:
        return True
    return all(s.has(f - x) for x in s.gaps if 2 * x != f)


def naive_embedding_dimension(s: NaiveSemigroup) -> int:
    return len(naive_min_generators(s))


def naive_children(s: NaiveSemigroup) -> list[NaiveSemigroup]:
    """Children in the classical semigroup tree: drop a generator above F."""
    out = []
    f = s.frobenius
    for x in naive_min_generators(s):
        if x > f:
            members = set(s.members) - {x}
            c = x + 1
            m = min(y for y in members if y > 0)
            w = default_window(c, m)
            members |= set(range(s.window + 1, w + 1))
            out.append(NaiveSemigroup(frozenset(y for y in members if y <= w), w))
    return out


def enumerate_all(genus_max: int) -> dict[int, list[NaiveSemigroup]]:
    """All numerical semigroups of genus <= genus_max, keyed by genus."""
    naturals = NaiveSemigroup(frozenset(range(0, 5)), 4)
    population = {0: [naturals]}
    for g in range(1, genus_max + 1):
        layer = []
        for parent in population[g - 1]:
            layer.extend(naive_children(parent))
        population[g] = layer
    return population


def iter_population(genus_max: int) -> Iterator[NaiveSemigroup]:
    for layer in enumerate_all(genus_max).values():
        yield from layer


def dump_population(genus_max: int, fp) -> None:
    """Write one JSON line per semigroup: genus, conductor, small elements."""
    for s in iter_population(genus_max):
        fp.write(json.dumps({"genus": s.genus, "conductor": s.conductor, "small": s.small_elements()}) + "\n")
