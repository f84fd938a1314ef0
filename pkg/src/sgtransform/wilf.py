"""Wilf's inequality, Eliahou numbers, leaf reductions and exhaustive scans."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

from .sgcore import DomainError, NumericalSemigroup, from_small_elements
from .transforms import transform_a
from .trees import TreeKind, build_tree


@dataclass(frozen=True)
class EliahouRecord:
    E: int
    q: int
    rho: int
    Q_size: int
    D_size: int
    Q: tuple[int, ...] = ()
    D: tuple[int, ...] = ()


@dataclass(frozen=True)
class WilfRecord:
    e: int
    n: int
    F: int
    g: int
    wilf_holds: bool
    eliahou: Optional[EliahouRecord]


def eliahou(s: NumericalSemigroup) -> EliahouRecord:
    """Decomposition ``E = |Q| n - q |D| + rho`` with ``F + 1 = q m - rho``.

    ``Q`` holds the minimal generators below F, ``D`` the members of
    ``[F+1, F+m]`` that are not minimal generators, and ``0 <= rho < m``.
    """
    if s.conductor == 0:
        raise DomainError("the Eliahou number is not defined for N", "naturals")
    f, m, n = s.frobenius, s.multiplicity, s.left
    q = -(-(f + 1) // m)
    rho = q * m - (f + 1)
    gens = s.minimal_generators
    Q = tuple(x for x in gens if x < f)
    D = tuple(x for x in range(f + 1, f + m + 1) if not s.is_minimal_generator(x))
    return EliahouRecord(len(Q) * n - q * len(D) + rho, q, rho, len(Q), len(D), Q, D)


def eliahou_number(s: NumericalSemigroup) -> int:
    return eliahou(s).E


def wilf_check(s: NumericalSemigroup) -> WilfRecord:
    e, n, f, g = s.embedding_dimension, s.left, s.frobenius, s.genus
    holds = e * n >= f + 1
    # (e - 1) n >= g is the same inequality once n = F + 1 - g
    if s.conductor and holds != ((e - 1) * n >= g):
        raise AssertionError(f"the two forms of Wilf's inequality disagree on {s!r}")
    return WilfRecord(e, n, f, g, holds, eliahou(s) if s.conductor else None)


def full_interval(s: NumericalSemigroup) -> bool:
    """True when ``[F - m + 1, F)`` lies inside ``s``."""
    f, m = s.frobenius, s.multiplicity
    return all(x in s for x in range(f - m + 1, f))


def precertified(g: int, n: int) -> Optional[str]:
    """Known reasons why every semigroup with these invariants satisfies Wilf."""
    if n <= 12:
        return "n <= 12"
    if 3 * n >= g:
        return "3n >= g"
    return None


def finding(s: NumericalSemigroup) -> dict:
    rec = wilf_check(s)
    return {
        "genus": rec.g,
        "left": rec.n,
        "generators": s.minimal_generators,
        "e": rec.e,
        "n": rec.n,
        "F": rec.F,
        "E": rec.eliahou.E if rec.eliahou else None,
        "wilf_holds": rec.wilf_holds,
    }


# ---- leaf reductions ------------------------------------------------------


@dataclass
class LeafReport:
    kind: str
    genus: int
    left: int
    node_count: int
    leaves_checked: int
    images_checked: int
    violations: list[dict]
    certified: bool
    precertified: Optional[str]
    brute_force: Optional[bool] = None

    @property
    def consistent(self) -> Optional[bool]:
        if self.brute_force is None:
            return None
        return self.brute_force == self.certified

    def to_json(self) -> dict:
        out = asdict(self)
        out["consistent"] = self.consistent
        return out


def leaf_reduction_check(kind: TreeKind | str, g: int, n: int, verify_limit: int = 14) -> LeafReport:
    """Check Wilf on the leaves of a tree and certify the whole (g, n) class.

    For A-trees the images ``A(S)`` of leaves with ``[F-m+1, F)`` inside ``S``
    are checked as well.  B never lowers the embedding dimension, so leaves
    suffice there.  When ``g <= verify_limit`` every vertex is also checked
    directly and the result stored in ``brute_force``.
    """
    kind = TreeKind.parse(kind)
    tree = build_tree(kind, g, n)
    violations = []
    leaves = tree.leaves()
    images = 0
    for leaf in leaves:
        if not wilf_check(leaf).wilf_holds:
            violations.append(finding(leaf))
        if kind is TreeKind.A and leaf != tree.root and full_interval(leaf):
            images += 1
            image = transform_a(leaf)
            if not wilf_check(image).wilf_holds:
                violations.append(finding(image))
    report = LeafReport(
        kind=kind.value,
        genus=g,
        left=n,
        node_count=tree.node_count,
        leaves_checked=len(leaves),
        images_checked=images,
        violations=violations,
        certified=not violations,
        precertified=precertified(g, n),
    )
    if g <= verify_limit:
        report.brute_force = all(wilf_check(s).wilf_holds for s in tree.nodes)
    return report


# ---- exhaustive scans -----------------------------------------------------


@dataclass
class GenusStats:
    genus: int
    count: int = 0
    wilf_violations: int = 0
    eliahou_negative: int = 0
    inconsistent: int = 0


@dataclass
class ScanResult:
    max_genus: int
    stats: list[GenusStats] = field(default_factory=list)
    findings: list[dict] = field(default_factory=list)
    truncated: bool = False
    strategy: str = "exhaustive"
    skipped_classes: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def wilf_violations(self) -> int:
        return sum(s.wilf_violations for s in self.stats)

    @property
    def eliahou_negative(self) -> int:
        return sum(s.eliahou_negative for s in self.stats)

    def smallest_negative_genus(self) -> Optional[int]:
        return next((s.genus for s in self.stats if s.eliahou_negative), None)

    def summary_lines(self) -> list[str]:
        lines = [json.dumps(asdict(s)) for s in self.stats]
        lines.append(f"{self.wilf_violations} violations")
        lines.append(f"{self.eliahou_negative} semigroups with E < 0")
        if self.truncated:
            lines.append("witness buffer overflowed; rerun with a larger buffer for the full list")
        return lines


def _classical_layer(k: int) -> list[NumericalSemigroup]:
    layer = [NumericalSemigroup.naturals()]
    for _ in range(k):
        nxt = []
        for s in layer:
            for x in s.minimal_generators:
                if x > s.frobenius:
                    nxt.append(s.remove_minimal_generator(x))
        layer = nxt
    return layer


def _shard_job(args):
    from . import _kernel

    small, conductor, m, g, gmax, cap = args
    counts, witnesses, over = _kernel.run_shard(small, conductor, m, g, gmax, cap)
    return counts.tolist(), witnesses, over


def _shards(max_genus: int, split: int, cap: int) -> list[tuple]:
    jobs = [([0], 0, 1, 0, split - 1, cap)] if split > 0 else []
    for s in _classical_layer(split):
        jobs.append((s.small_elements(), s.conductor, s.multiplicity, split, max_genus, cap))
    return jobs


def scan(
    max_genus: int,
    eliahou_only: bool = False,
    leaf_strategy: bool = False,
    threads: int = 1,
    split_genus: int = 10,
    max_witnesses: int = 64,
    checkpoint: Optional[str] = None,
) -> ScanResult:
    """Check Wilf's inequality and the sign of E on every semigroup up to ``max_genus``.

    The classical tree is cut at ``split_genus``; each subtree below the cut
    is one shard, walked by the compiled kernel.  Shard results are summed in
    shard order, so the output does not depend on ``threads``.  ``checkpoint``
    names a JSON-lines file of finished shards that is appended to and, on a
    rerun, used to skip work already done.

    ``eliahou_only`` drops Wilf findings from the report (both quantities are
    computed regardless).  ``leaf_strategy`` switches to :func:`leaf_scan`.
    """
    if max_genus < 1:
        raise DomainError("scan needs max_genus >= 1", "range")
    if leaf_strategy:
        return leaf_scan(max_genus)
    split = min(split_genus, max_genus)
    jobs = _shards(max_genus, split, max_witnesses)
    done: dict[int, tuple] = {}
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint) as fp:
            for line in fp:
                rec = json.loads(line)
                if rec.get("max_genus") == max_genus and rec.get("split") == split:
                    done[rec["shard"]] = (rec["counts"], [tuple(w) for w in rec["witnesses"]], rec["truncated"])
    todo = [i for i in range(len(jobs)) if i not in done]

    def record(i: int, res) -> None:
        done[i] = res
        if checkpoint:
            with open(checkpoint, "a") as fp:
                counts, wit, over = res
                fp.write(json.dumps({"max_genus": max_genus, "split": split, "shard": i, "counts": counts, "witnesses": wit, "truncated": over}) + "\n")

    if threads > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for i, res in zip(todo, pool.map(_shard_job, [jobs[i] for i in todo], chunksize=1)):
                record(i, res)
    else:
        for i in todo:
            record(i, _shard_job(jobs[i]))

    result = ScanResult(max_genus, [GenusStats(g) for g in range(max_genus + 1)])
    witnesses = set()
    for i in range(len(jobs)):
        counts, wit, over = done[i]
        for g, row in enumerate(counts):
            st = result.stats[g]
            st.count += row[0]
            st.wilf_violations += row[1]
            st.eliahou_negative += row[2]
            st.inconsistent += row[3]
        witnesses.update((g, c, tuple(small)) for g, c, small in wit)
        result.truncated |= over
    for g, c, small in sorted(witnesses):
        s = from_small_elements(list(small) or [0], c)
        f = finding(s)
        if eliahou_only and f["E"] is not None and f["E"] >= 0:
            continue
        result.findings.append(f)
    return result


def leaf_scan(max_genus: int) -> ScanResult:
    """Scan using the B-tree leaf reduction and the known precertified ranges.

    Classes with ``n <= 12`` or ``3n >= g`` are skipped; for the rest only the
    leaves of the B-tree are checked.
    """
    result = ScanResult(max_genus, strategy="leaves")
    for g in range(1, max_genus + 1):
        st = GenusStats(g)
        for n in range(1, g + 1):
            reason = precertified(g, n)
            if reason is not None or g <= 3 or n < 2:
                result.skipped_classes.append((g, n, reason or "small"))
                continue
            rep = leaf_reduction_check(TreeKind.B, g, n, verify_limit=0)
            st.count += rep.leaves_checked
            st.wilf_violations += len(rep.violations)
            result.findings.extend(rep.violations)
        result.stats.append(st)
    return result


def reference_scan(max_genus: int, population: Iterable[NumericalSemigroup]) -> ScanResult:
    """Slow scan over an explicit population, for cross-checking the kernel."""
    result = ScanResult(max_genus, [GenusStats(g) for g in range(max_genus + 1)], strategy="reference")
    for s in population:
        st = result.stats[s.genus]
        st.count += 1
        if s.conductor == 0:
            continue
        rec = wilf_check(s)
        st.wilf_violations += not rec.wilf_holds
        st.eliahou_negative += rec.eliahou.E < 0
        st.inconsistent += rec.eliahou.E >= 0 and not rec.wilf_holds
        if not rec.wilf_holds or rec.eliahou.E < 0:
            result.findings.append(finding(s))
    return result
