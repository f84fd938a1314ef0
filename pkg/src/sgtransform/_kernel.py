"""Compiled depth-first walk of the classical semigroup tree.

Each node carries ``dec[y]``, the number of pairs ``a <= b`` of members with
``a + b = y``.  ``y`` is a member iff ``dec[y] > 0`` and a minimal generator
iff ``dec[y] == 1`` (only ``0 + y``).  Removing a generator ``x`` above the
Frobenius number decrements ``dec[y]`` for every ``y`` with ``y - x`` a member,
which is the whole child update.  Arrays are sized ``3 * gmax + 2``: every
semigroup of genus ``g`` has ``c + m <= 3g + 1``.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# per-genus counter columns
COUNT = 0
WILF_FAIL = 1
E_NEGATIVE = 2
E_INCONSISTENT = 3
NCOLS = 4


def array_size(gmax: int) -> int:
    return 3 * gmax + 2


@njit(cache=True)
def decompositions(member, size):
    dec = np.zeros(size, dtype=np.int16)
    for y in range(size):
        k = 0
        for a in range(y // 2 + 1):
            if member[a] and member[y - a]:
                k += 1
        dec[y] = k
    return dec


@njit(cache=True)
def _visit(dec, c, m, g, counts, wit_genus, wit_cond, wit_members, nwit):
    counts[g, COUNT] += 1
    if c == 0:
        return
    e = 0
    below = 0
    for y in range(m, c + m):
        if dec[y] == 1:
            e += 1
            if y < c:
                below += 1
    n = c - g
    wilf_ok = e * n >= c
    q = (c + m - 1) // m
    rho = q * m - c
    d = m - (e - below)
    big_e = below * n - q * d + rho
    if not wilf_ok:
        counts[g, WILF_FAIL] += 1
    if big_e < 0:
        counts[g, E_NEGATIVE] += 1
    if big_e >= 0 and not wilf_ok:
        counts[g, E_INCONSISTENT] += 1
    if big_e < 0 or not wilf_ok:
        nwit[1] += 1
    if (big_e < 0 or not wilf_ok) and nwit[0] < wit_genus.shape[0]:
        k = nwit[0]
        wit_genus[k] = g
        wit_cond[k] = c
        for y in range(c):
            wit_members[k, y] = 1 if dec[y] > 0 else 0
        nwit[0] = k + 1


@njit(cache=True)
def walk(member, c0, m0, g0, gmax, counts, wit_genus, wit_cond, wit_members, nwit):
    """Visit the subtree rooted at the given semigroup down to genus ``gmax``.

    ``member`` marks the members of the root in ``[0, size)``.
    """
    size = member.shape[0]
    levels = gmax - g0 + 1
    decs = np.zeros((levels, size), dtype=np.int16)
    decs[0] = decompositions(member, size)
    cs = np.zeros(levels, dtype=np.int64)
    ms = np.zeros(levels, dtype=np.int64)
    nxt = np.zeros(levels, dtype=np.int64)
    cs[0] = c0
    ms[0] = m0
    nxt[0] = max(c0, 1)
    _visit(decs[0], c0, m0, g0, counts, wit_genus, wit_cond, wit_members, nwit)
    level = 0
    while level >= 0:
        if g0 + level >= gmax:
            level -= 1
            continue
        dec = decs[level]
        c = cs[level]
        m = ms[level]
        x = nxt[level]
        top = max(c, 1) + m
        while x < top and dec[x] != 1:
            x += 1
        if x >= top:
            level -= 1
            continue
        nxt[level] = x + 1
        child = decs[level + 1]
        child[:] = dec
        for y in range(x, size):
            if dec[y - x] > 0:
                child[y] -= 1
        cs[level + 1] = x + 1
        ms[level + 1] = m + 1 if x == m else m
        nxt[level + 1] = x + 1
        level += 1
        _visit(child, x + 1, ms[level], g0 + level, counts, wit_genus, wit_cond, wit_members, nwit)


def run_shard(members: list[int], conductor: int, multiplicity: int, genus: int, gmax: int, max_witnesses: int = 64):
    """Walk one subtree; returns ``(counts, witnesses, overflowed)``.

    ``counts`` has shape ``(gmax + 1, NCOLS)``; witnesses are
    ``(genus, conductor, small_elements)`` triples.
    """
    size = array_size(gmax)
    member = np.zeros(size, dtype=np.uint8)
    member[conductor:] = 1
    for x in members:
        member[x] = 1
    counts = np.zeros((gmax + 1, NCOLS), dtype=np.int64)
    wit_genus = np.zeros(max_witnesses, dtype=np.int64)
    wit_cond = np.zeros(max_witnesses, dtype=np.int64)
    wit_members = np.zeros((max_witnesses, size), dtype=np.uint8)
    nwit = np.zeros(2, dtype=np.int64)
    walk(member, conductor, multiplicity, genus, gmax, counts, wit_genus, wit_cond, wit_members, nwit)
    witnesses = []
    for k in range(int(nwit[0])):
        c = int(wit_cond[k])
        witnesses.append((int(wit_genus[k]), c, [y for y in range(c) if wit_members[k, y]]))
    return counts, witnesses, int(nwit[1]) > len(witnesses)
