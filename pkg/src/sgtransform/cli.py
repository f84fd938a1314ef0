"""Command line interface.

Exit status: 0 on success, 1 on usage or domain errors, 2 when a scan finds a
semigroup violating Wilf's inequality.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import trees, wilf
from .sgcore import NumericalSemigroup, SemigroupError, from_gaps, from_generators, from_small_elements
from .transforms import TransformKind, iterate
from .trees import LimitExceeded, TreeKind

STRETCH_GENUS = 43
DEFAULT_SCAN_CAP = 30


def _ints(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}")


def _small(text: str) -> tuple[list[int], int]:
    if ":" not in text:
        raise argparse.ArgumentTypeError("--small takes 'members:conductor', e.g. 0,5,7,10:12")
    members, conductor = text.rsplit(":", 1)
    return _ints(members), int(conductor)


def _semigroup(args) -> NumericalSemigroup:
    if args.gens is not None:
        return from_generators(args.gens)
    if args.gaps is not None:
        return from_gaps(args.gaps)
    return from_small_elements(*args.small)


def _add_input(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--gens", type=_ints, help="generators, e.g. 6,11,13,15,16")
    g.add_argument("--gaps", type=_ints, help="gap list, e.g. 1,2,3,4,6,8,9,11")
    g.add_argument("--small", type=_small, help="small elements and conductor, e.g. 0,5,7,10:12")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _fmt_list(xs) -> str:
    return "{" + ",".join(map(str, xs)) + "}"


def cmd_info(args) -> int:
    s = _semigroup(args)
    rep = s.to_json()
    rep["sub_frobenius"] = None if s.is_ordinary else s.sub_frobenius
    if args.json:
        print(_dump(rep))
        return 0
    flags = [
        name
        for name, on in [
            ("ordinary", s.is_ordinary),
            ("almost-ordinary", s.is_almost_ordinary),
            ("symmetric", s.is_symmetric),
            ("pseudo-symmetric", s.is_pseudo_symmetric),
            ("irreducible", s.is_irreducible),
            ("special", s.is_special),
        ]
        if on
    ]
    rows = [
        ("small elements", _fmt_list(s.small_elements()) + " ->" if s.conductor else "N"),
        ("gaps", _fmt_list(s.gaps)),
        ("minimal generators", _fmt_list(s.minimal_generators)),
        ("special gaps", _fmt_list(s.special_gaps)),
        ("conductor", s.conductor),
        ("Frobenius F", s.frobenius),
        ("genus g", s.genus),
        ("multiplicity m", s.multiplicity),
        ("left n", s.left),
        ("embedding dim e", s.embedding_dimension),
        ("sub-Frobenius u", rep["sub_frobenius"] if rep["sub_frobenius"] is not None else "-"),
        ("properties", ", ".join(flags) or "-"),
    ]
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k:<{width}}  {v}")
    return 0


def cmd_transform(args) -> int:
    s = _semigroup(args)
    kind = TransformKind.parse(args.kind)
    steps = None if args.steps == "all" else int(args.steps)
    reason = kind.domain_violation(s)
    if reason is not None:
        raise SemigroupError(f"input is outside the domain of {kind.value}: {reason}")
    trace = iterate(s, kind, max_steps=steps)
    if args.json:
        print(_dump(trace.to_json()))
        return 0
    print(f"0: {_fmt_list(trace.steps[0].small_elements())} c={trace.steps[0].conductor}")
    for i, (t, a) in enumerate(zip(trace.steps[1:], trace.annotations), 1):
        print(f"{i}: {_fmt_list(t.small_elements())} c={t.conductor}  added={a.added} removed={a.removed} e {a.e_before}->{a.e_after}")
    return 0


def cmd_tree(args) -> int:
    try:
        tree = trees.build_tree(args.kind, args.genus, args.left, max_nodes=args.max_nodes, threads=args.threads)
    except LimitExceeded as exc:
        print(f"error: {exc}; partial tree has {exc.partial.node_count} nodes", file=sys.stderr)
        return 1
    if args.format == "dot":
        sys.stdout.write(tree.to_dot(label=args.label, leaves_only=args.leaves_only))
    elif args.format == "json":
        print(_dump(tree.to_json(leaves_only=args.leaves_only)))
    else:
        print(f"nodes {tree.node_count} edges {tree.edge_count} leaves {tree.leaf_count} depth {tree.depth}")
    return 0


def cmd_census(args) -> int:
    method = "both" if args.check else args.method
    summary = trees.census(args.genus, method=method, threads=args.threads)
    if args.json:
        print(_dump(summary.to_json()))
    else:
        methods = list(summary.counts)
        ns = sorted({n for c in summary.counts.values() for n in c})
        print("n\t" + "\t".join(methods) + ("\tleaves" if summary.leaves else ""))
        for n in ns:
            cells = [str(summary.counts[m].get(n, 0)) for m in methods]
            if summary.leaves:
                cells.append(str(summary.leaves.get(n, "-")))
            print(f"{n}\t" + "\t".join(cells))
        print("total\t" + "\t".join(str(summary.total(m)) for m in methods))
        if summary.agree is not None:
            print("methods agree" if summary.agree else "METHODS DISAGREE")
    if summary.agree is False:
        return 1
    return 0


def cmd_wilf(args) -> int:
    if args.max_genus is None and not args.stretch_43:
        if args.genus is None or args.left is None:
            raise SemigroupError("wilf needs either --max-genus or --kind/--genus/--left")
        rep = wilf.leaf_reduction_check(args.kind, args.genus, args.left)
        if args.json:
            print(_dump(rep.to_json()))
        else:
            print(f"tree {rep.kind} g={rep.genus} n={rep.left}: {rep.node_count} nodes, {rep.leaves_checked} leaves checked, {rep.images_checked} images checked")
            if rep.precertified:
                print(f"class already covered by known results ({rep.precertified})")
            print("certified" if rep.certified else f"{len(rep.violations)} violations")
            if rep.brute_force is not None:
                print(f"brute force over all nodes: {'holds' if rep.brute_force else 'fails'}")
        return 2 if rep.violations else 0

    max_genus = STRETCH_GENUS if args.stretch_43 else args.max_genus
    if max_genus > DEFAULT_SCAN_CAP and not args.stretch_43:
        raise SemigroupError(f"scans beyond genus {DEFAULT_SCAN_CAP} take hours; pass --stretch-43 to opt in")
    result = wilf.scan(
        max_genus,
        eliahou_only=args.eliahou,
        leaf_strategy=args.leaf_strategy,
        threads=args.threads,
        checkpoint=args.checkpoint,
    )
    for line in result.summary_lines():
        print(line)
    if args.findings:
        with open(args.findings, "w", encoding="utf-8") as fp:
            for f in result.findings:
                fp.write(_dump(f) + "\n")
    else:
        for f in result.findings:
            print(_dump(f))
    return 2 if result.wilf_violations else 0


def cmd_experiment(args) -> int:
    fn = trees.experiment_child_edim if args.name == "child-edim" else trees.experiment_leaf_overlap
    if args.max_genus is not None:
        reports = [fn(g, n) for g in range(4, args.max_genus + 1) for n in range(2, g - 1)]
    else:
        if args.genus is None or args.left is None:
            raise SemigroupError("experiment needs --genus and --left, or --max-genus")
        TreeKind.A.check_range(args.genus, args.left)
        reports = [fn(args.genus, args.left)]
    for rep in reports:
        if not args.verbose:
            rep = {k: v for k, v in rep.items() if k != "rows"}
        print(_dump(rep))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sgtransform", description="Numerical semigroup transforms, trees and Wilf checks")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker processes")

    p = sub.add_parser("info", help="invariants of one semigroup")
    _add_input(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("transform", help="apply or iterate a transform")
    _add_input(p)
    p.add_argument("--kind", required=True, choices=["f1", "f2", "f3", "a", "b", "A", "B"])
    p.add_argument("--steps", default="1", help="number of steps or 'all'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("tree", parents=[common], help="build the A- or B-tree for (g, n)")
    p.add_argument("--kind", required=True, choices=["A", "B", "a", "b"])
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--left", type=int, required=True)
    p.add_argument("--format", choices=["dot", "json", "count"], default="count")
    p.add_argument("--label", choices=["gaps", "gens"], default="gaps")
    p.add_argument("--leaves-only", action="store_true")
    p.add_argument("--max-nodes", type=int)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("census", parents=[common], help="count semigroups of one genus by left count")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--method", choices=list(trees.METHODS), default="b_trees")
    p.add_argument("--check", action="store_true", help="run both methods and compare")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("wilf", parents=[common], help="leaf reduction for one class, or an exhaustive scan")
    p.add_argument("--kind", choices=["A", "B", "a", "b"], default="B")
    p.add_argument("--genus", type=int)
    p.add_argument("--left", type=int)
    p.add_argument("--max-genus", type=int)
    p.add_argument("--eliahou", action="store_true", help="report only semigroups with negative Eliahou number")
    p.add_argument("--leaf-strategy", action="store_true", help="skip precertified classes and check B-tree leaves only")
    p.add_argument("--stretch-43", action="store_true", help="opt in to the multi-hour scan up to genus 43")
    p.add_argument("--findings", help="write findings as JSON lines to this file")
    p.add_argument("--checkpoint", help="resumable shard log for long scans")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_wilf)

    p = sub.add_parser("experiment", help="exploratory reports on A-trees")
    p.add_argument("name", choices=["child-edim", "leaf-overlap"])
    p.add_argument("--genus", type=int)
    p.add_argument("--left", type=int)
    p.add_argument("--max-genus", type=int, help="aggregate over 4 <= g <= max-genus")
    p.add_argument("--verbose", action="store_true", help="include per-node rows")
    p.set_defaults(func=cmd_experiment)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except SemigroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    main()
