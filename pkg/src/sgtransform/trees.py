"""Rooted trees of semigroups with fixed genus and left count.

For ``g > 3`` the transform A arranges the non-special semigroups with genus
``g`` and ``n`` left elements (plus the almost-ordinary root ``S_{g,n}``) into
a rooted tree, and B does the same for *all* semigroups with those invariants.
Children are generated directly by inverting the transform, and distinct
parents have disjoint child sets, so a plain depth-first walk visits every
vertex exactly once without any visited set.
"""

from __future__ import annotations

import enum
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import oracle
from .sgcore import DomainError, NumericalSemigroup, almost_ordinary
from .transforms import DEBUG, InternalError, transform_a, transform_b


class LimitExceeded(RuntimeError):
    def __init__(self, message: str, partial: "SemigroupTree") -> None:
        super().__init__(message)
        self.partial = partial


class TreeKind(enum.Enum):
    A = "A"
    B = "B"

    @classmethod
    def parse(cls, tag: "TreeKind | str") -> "TreeKind":
        return tag if isinstance(tag, TreeKind) else cls(tag.upper())

    def check_range(self, g: int, n: int) -> None:
        top = g - 2 if self is TreeKind.A else g
        if g <= 3 or not 2 <= n <= top:
            raise DomainError(
                f"tree {self.value} needs g > 3 and 2 <= n <= {'g-2' if self is TreeKind.A else 'g'}; got g={g}, n={n}",
                "range",
            )

    @property
    def edge_labels(self) -> tuple[str, str]:
        return ("h", "y") if self is TreeKind.A else ("y", "h")


# ---- child generation -----------------------------------------------------


def _removal_floor(u: NumericalSemigroup, f: int) -> float:
    """Generators of ``u`` strictly above this value (and below F) may be removed."""
    if u.is_irreducible:
        return f / 2
    return max(x for x in u.special_gaps if x != f)


def children_a(t: NumericalSemigroup) -> list[tuple[NumericalSemigroup, int, int]]:
    """Children of ``t`` in the A-tree, as ``(child, h, y)`` in ascending order."""
    out = []
    m, f = t.multiplicity, t.frobenius
    for h in t.special_gaps:
        if h >= m:
            break
        u = t.add_special_gap(h)
        floor = _removal_floor(u, f)
        for y in u.minimal_generators:
            if y >= f:
                break
            if y != h and y > floor:
                out.append((u.remove_minimal_generator(y), h, y))
    return out


def children_b(t: NumericalSemigroup) -> list[tuple[NumericalSemigroup, int, int]]:
    """Children of ``t`` in the B-tree, as ``(child, y, h)`` in ascending order."""
    out = []
    m, f = t.multiplicity, t.frobenius
    u = t.sub_frobenius
    for y in t.minimal_generators:
        if y <= u:
            continue
        if y >= f:
            break
        v = t.remove_minimal_generator(y)
        for h in v.special_gaps:
            if h >= m:
                break
            out.append((v.add_special_gap(h), y, h))
    return out


def _leaf_by_rule_a(t: NumericalSemigroup) -> bool:
    m, f = t.multiplicity, t.frobenius
    for h in t.special_gaps:
        if h > m:
            continue
        u = t.add_special_gap(h)
        for y in u.minimal_generators:
            if y == h or y >= f:
                continue
            if u.is_irreducible:
                if not 2 * y < f:
                    return False
            elif not y < max(x for x in u.special_gaps if x != f):
                return False
    return True


def _leaf_by_rule_b(t: NumericalSemigroup) -> bool:
    m, f, u = t.multiplicity, t.frobenius, t.sub_frobenius
    for y in t.minimal_generators:
        if not u <= y <= f:
            continue
        # h = y = m(T) is always a special gap of T \ {y}; it is not a child
        if any(h < m for h in t.remove_minimal_generator(y).special_gaps):
            return False
    return True


def children(t: NumericalSemigroup, kind: TreeKind | str) -> list[tuple[NumericalSemigroup, int, int]]:
    return children_a(t) if TreeKind.parse(kind) is TreeKind.A else children_b(t)


def is_leaf(t: NumericalSemigroup, kind: TreeKind | str) -> bool:
    kind = TreeKind.parse(kind)
    leaf = not children(t, kind)
    if DEBUG:
        by_rule = _leaf_by_rule_a(t) if kind is TreeKind.A else _leaf_by_rule_b(t)
        if by_rule != leaf:
            raise InternalError(f"leaf characterization disagrees on {t!r}")
    return leaf


def parent(t: NumericalSemigroup, kind: TreeKind | str) -> NumericalSemigroup:
    return transform_a(t) if TreeKind.parse(kind) is TreeKind.A else transform_b(t)


# ---- trees ----------------------------------------------------------------


@dataclass
class SemigroupTree:
    """A tree stored in depth-first preorder.

    ``parents[i]`` is the index of the parent of ``nodes[i]`` (``-1`` for the
    root), and ``edges[i]`` the pair of integers labelling the edge into it.
    """

    kind: TreeKind
    genus: int
    left: int
    nodes: list[NumericalSemigroup] = field(default_factory=list)
    parents: list[int] = field(default_factory=list)
    edges: list[Optional[tuple[int, int]]] = field(default_factory=list)
    depths: list[int] = field(default_factory=list)
    complete: bool = True

    @property
    def root(self) -> NumericalSemigroup:
        return self.nodes[0]

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.nodes) - 1

    @property
    def depth(self) -> int:
        return max(self.depths, default=0)

    def child_indices(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in self.nodes]
        for i, p in enumerate(self.parents):
            if p >= 0:
                kids[p].append(i)
        return kids

    def leaf_indices(self) -> list[int]:
        has_child = set(self.parents)
        return [i for i in range(len(self.nodes)) if i not in has_child]

    def leaves(self) -> list[NumericalSemigroup]:
        return [self.nodes[i] for i in self.leaf_indices()]

    @property
    def leaf_count(self) -> int:
        return len(self.leaf_indices())

    def edge_pairs(self) -> list[tuple[NumericalSemigroup, NumericalSemigroup]]:
        """``(child, parent)`` pairs."""
        return [(self.nodes[i], self.nodes[p]) for i, p in enumerate(self.parents) if p >= 0]

    # ---- export -------------------------------------------------------

    def to_json(self, leaves_only: bool = False) -> dict:
        a, b = self.kind.edge_labels
        kids = self.child_indices()

        def node(i: int) -> dict:
            e = self.edges[i]
            return {
                "semigroup": self.nodes[i].to_json(),
                "edge": None if e is None else {a: e[0], b: e[1]},
                "children": [node(j) for j in kids[i]],
            }

        out = {
            "kind": self.kind.value,
            "genus": self.genus,
            "left": self.left,
            "node_count": self.node_count,
            "leaf_count": self.leaf_count,
        }
        if leaves_only:
            out["leaves"] = [self.nodes[i].to_json() for i in self.leaf_indices()]
        else:
            out["root"] = node(0)
        return out

    def to_dot(self, label: str = "gaps", leaves_only: bool = False) -> str:
        a, b = self.kind.edge_labels
        lines = [f"digraph T_{self.kind.value}_{self.genus}_{self.left} {{"]
        shown = set(self.leaf_indices()) if leaves_only else set(range(len(self.nodes)))
        for i, s in enumerate(self.nodes):
            if i not in shown:
                continue
            if label == "gens":
                text = "<" + ",".join(map(str, s.minimal_generators)) + ">"
            else:
                text = "N\\\\{" + ",".join(map(str, s.gaps)) + "}"
            lines.append(f'  n{i} [label="{text}"];')
        if not leaves_only:
            for i, p in enumerate(self.parents):
                if p >= 0:
                    e = self.edges[i]
                    lines.append(f'  n{p} -> n{i} [label="{a}={e[0]},{b}={e[1]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def walk(kind: TreeKind | str, root: NumericalSemigroup) -> Iterator[tuple[NumericalSemigroup, int, Optional[tuple[int, int]], int]]:
    """Preorder walk from ``root``: yields ``(node, parent_index, edge, depth)``."""
    kind = TreeKind.parse(kind)
    gen = children_a if kind is TreeKind.A else children_b
    stack: list[tuple[NumericalSemigroup, int, Optional[tuple[int, int]], int]] = [(root, -1, None, 0)]
    index = 0
    while stack:
        node, par, edge, depth = stack.pop()
        yield node, par, edge, depth
        me = index
        index += 1
        for child, a, b in reversed(gen(node)):
            stack.append((child, me, (a, b), depth + 1))


def _subtree_records(args: tuple[str, int, int, tuple[int, int]]) -> list[tuple[int, int, int, tuple[int, int] | None, int]]:
    kind, conductor, bits, edge = args
    root = NumericalSemigroup(conductor, bits)
    out = []
    for node, par, e, depth in walk(kind, root):
        out.append((node.conductor, node.bits, par, e if par >= 0 else edge, depth))
    return out


def build_tree(
    kind: TreeKind | str,
    g: int,
    n: int,
    max_nodes: Optional[int] = None,
    threads: int = 1,
) -> SemigroupTree:
    """Build the whole tree rooted at ``S_{g,n}``.

    With ``threads > 1`` the subtrees hanging off the root are built in
    worker processes and concatenated in child order, which reproduces the
    serial preorder exactly.
    """
    kind = TreeKind.parse(kind)
    kind.check_range(g, n)
    root = almost_ordinary(g, n)
    tree = SemigroupTree(kind, g, n)

    def add(node, par, edge, depth) -> None:
        tree.nodes.append(node)
        tree.parents.append(par)
        tree.edges.append(edge)
        tree.depths.append(depth)
        if max_nodes is not None and len(tree.nodes) > max_nodes:
            tree.complete = False
            raise LimitExceeded(f"tree exceeds {max_nodes} nodes", tree)

    if threads <= 1:
        for node, par, edge, depth in walk(kind, root):
            add(node, par, edge, depth)
        return tree

    add(root, -1, None, 0)
    tops = children(root, kind)
    jobs = [(kind.value, c.conductor, c.bits, (a, b)) for c, a, b in tops]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for records in pool.map(_subtree_records, jobs):
            offset = len(tree.nodes)
            for conductor, bits, par, edge, depth in records:
                add(NumericalSemigroup(conductor, bits), 0 if par < 0 else par + offset, edge, depth + 1)
    return tree


# ---- censuses -------------------------------------------------------------


@dataclass
class CensusSummary:
    genus: int
    counts: dict[str, dict[int, int]] = field(default_factory=dict)
    leaves: dict[int, int] = field(default_factory=dict)

    def total(self, method: str) -> int:
        return sum(self.counts[method].values())

    @property
    def agree(self) -> Optional[bool]:
        if len(self.counts) < 2:
            return None
        first, *rest = self.counts.values()
        return all(r == first for r in rest)

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "counts": {k: {str(n): c for n, c in sorted(v.items())} for k, v in self.counts.items()},
            "totals": {k: self.total(k) for k in self.counts},
            "leaves": {str(n): c for n, c in sorted(self.leaves.items())},
            "agree": self.agree,
        }


METHODS = ("b_trees", "classical_oracle")


def _by_left(items) -> dict[int, int]:
    out: dict[int, int] = {}
    for n in items:
        out[n] = out.get(n, 0) + 1
    return dict(sorted(out.items()))


def census(g: int, method: str = "b_trees", threads: int = 1) -> CensusSummary:
    """Count the semigroups of genus ``g`` partitioned by left count.

    ``method`` is ``"b_trees"``, ``"classical_oracle"`` or ``"both"``.
    """
    if g < 1:
        raise DomainError("census needs g >= 1", "range")
    methods = METHODS if method == "both" else (method,)
    summary = CensusSummary(g)
    for meth in methods:
        if meth == "classical_oracle" or (meth == "b_trees" and g <= 3):
            layer = oracle.enumerate_all(g)[g]
            summary.counts[meth] = _by_left(s.left for s in layer)
        elif meth == "b_trees":
            counts = {1: 1}
            for n in range(2, g + 1):
                tree = build_tree(TreeKind.B, g, n, threads=threads)
                counts[n] = tree.node_count
                summary.leaves[n] = tree.leaf_count
            summary.counts[meth] = counts
        else:
            raise ValueError(f"unknown census method {meth!r}")
    return summary


def all_of_genus(g: int, threads: int = 1) -> Iterator[NumericalSemigroup]:
    """Every semigroup of genus ``g``, via the B-trees (oracle for g <= 3)."""
    if g <= 3:
        for s in oracle.enumerate_all(g)[g]:
            yield NumericalSemigroup.from_members(s.small_elements(), s.conductor)
        return
    yield NumericalSemigroup.ordinary(g + 1)
    for n in range(2, g + 1):
        if threads > 1:
            yield from build_tree(TreeKind.B, g, n, threads=threads).nodes
        else:
            for node, *_ in walk(TreeKind.B, almost_ordinary(g, n)):
                yield node


# ---- experiments ----------------------------------------------------------


def experiment_child_edim(g: int, n: int) -> dict:
    """Does every non-leaf of the A-tree have a child with no larger e?"""
    tree = build_tree(TreeKind.A, g, n)
    kids = tree.child_indices()
    rows = []
    for i, s in enumerate(tree.nodes):
        if not kids[i]:
            continue
        e = s.embedding_dimension
        child_e = [tree.nodes[j].embedding_dimension for j in kids[i]]
        rows.append({"node": s.small_elements() + [s.conductor], "e": e, "child_e": child_e, "holds": min(child_e) <= e})
    counter = [r for r in rows if not r["holds"]]
    return {"genus": g, "left": n, "internal_nodes": len(rows), "rows": rows, "counterexamples": counter, "holds": not counter}


def experiment_leaf_overlap(g: int, n: int) -> dict:
    """Compare the leaf sets of the A- and B-trees for the same (g, n)."""
    if not 2 <= n <= g - 2 or g <= 3:
        return {"genus": g, "left": n, "skipped": True, "note": "A-tree undefined for this (g, n)"}
    la = set(build_tree(TreeKind.A, g, n).leaves())
    lb = set(build_tree(TreeKind.B, g, n).leaves())
    return {
        "genus": g,
        "left": n,
        "skipped": False,
        "leaves_a": len(la),
        "leaves_b": len(lb),
        "common": len(la & lb),
        "a_subset_b": la <= lb,
        "b_subset_a": lb <= la,
        "equal": la == lb,
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=None, separators=(",", ":"))
