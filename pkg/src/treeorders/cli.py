"""Command line front end: ``treeorders <command> FILE [options]``.

Every command reads one file holding one or more documents (see
:mod:`treeorders.textio`) and prints its result.  Exit status is 0 on
success, 1 on a domain error and 2 on a parse error.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import approx, brto, diag, grading, metric, roadspace, wstree
from .common import DomainError, ParseError, Point, fmt_q, parse_point, parse_q
from .jumps import continuize
from .randgen import sample_comparable_pairs
from .ordinal import format_ordinal
from .textio import emit_dot, parse_documents, serialize


class _Input:
    def __init__(self, docs):
        self.docs = docs

    def take(self, *kinds, optional=False):
        for d in self.docs:
            if d.kind in kinds:
                return d.value
        if optional:
            return None
        raise DomainError(f"input needs a {' or '.join(kinds)} document")

    def all(self, kind):
        return [d.value for d in self.docs if d.kind == kind]


def _segtree(inp: _Input) -> brto.SegmentTree:
    X = inp.take("segtree")
    problems = brto.validate(X)
    if problems:
        raise DomainError("invalid segment tree: " + "; ".join(problems))
    return X


def _point(text: str):
    try:
        return parse_point(text)
    except ValueError as e:
        raise ParseError(0, f"bad point {text!r}: {e}") from None


def _points(args, default):
    return [_point(t) for t in args.points] if args.points else default


def _out(lines):
    lines = list(lines)
    return "\n".join(lines) + ("\n" if lines else "")


# -- well-stratified trees ---------------------------------------------------


def cmd_rank(inp, args):
    T = inp.take("wstree")
    return _out(f"{p} {format_ordinal(wstree.rank(T, T.check(p)))}" for p in _points(args, T.points()))


def cmd_pad(inp, args):
    return serialize(wstree.pad(inp.take("wstree")))


def cmd_succ(inp, args):
    return serialize(wstree.succ_subtree(inp.take("wstree")))


def cmd_iso(inp, args):
    trees = inp.all("wstree")
    if len(trees) != 2:
        raise DomainError(f"iso needs two wstree documents, got {len(trees)}")
    return "true\n" if wstree.iso_check(*trees) else "false\n"


def cmd_meet(inp, args):
    if len(args.points) != 2:
        raise DomainError("meet needs exactly two points")
    p, q = (_point(t) for t in args.points)
    T = inp.take("wstree", "segtree")
    if isinstance(T, wstree.OrdinalTree):
        return f"{wstree.meet_w(T, p, q)}\n"
    X = _segtree(inp)
    return f"{brto.meet_s(X, p, q)}\n"


def cmd_grade_rank(inp, args):
    T = inp.take("wstree")
    return serialize(grading.rank_qgrading(T, _points(args, None) or None))


def cmd_cover(inp, args):
    T = inp.take("wstree")
    g = inp.take("grading")
    c = grading.cover_from_qgrading(T, g)
    return _out(
        f"{n}: " + " ".join(str(p) for p in sorted(cls, key=lambda p: p.sort_key()))
        for n, cls in enumerate(c.classes, start=1)
    )


def cmd_rgrade(inp, args):
    T = inp.take("wstree")
    c = grading.cover_from_qgrading(T, inp.take("grading"))
    return serialize(grading.rgrading_from_cover(T, c))


def cmd_qgrade_succ(inp, args):
    T = inp.take("wstree")
    return serialize(grading.succ_qgrading_from_r(T, inp.take("grading")))


def cmd_extend_branch(inp, args):
    T = inp.take("wstree")
    c = grading.cover_from_qgrading(T, inp.take("grading"))
    return serialize(grading.extend_branch_grading(T, c))


def cmd_road(inp, args):
    return serialize(roadspace.road(inp.take("wstree")).space)


# -- segment trees -----------------------------------------------------------


def cmd_arclen(inp, args):
    X = _segtree(inp)
    g = metric.arc_length_grading(X)
    return serialize({p: g.value(X, p) for p in _points(args, X.points(3))})


def cmd_metric(inp, args):
    X = _segtree(inp)
    d = metric.railroad(X, metric.arc_length_grading(X))
    pts = _points(args, [Point(v) for v in X.dfs() if X.contains(Point(v))])
    return _out(f"{p} {q} {fmt_q(d(p, q))}" for p, q in brto.all_pairs(pts))


def cmd_check_metric(inp, args):
    X = _segtree(inp)
    d = metric.railroad(X, metric.arc_length_grading(X))
    pts = X.points(3)
    if args.seed is not None:
        rng = random.Random(args.seed)
        for e in X.edges():
            L = X.length[e]
            t = L * Fraction(rng.randint(1, 99), 100)
            pts.append(Point(e, t))
    rep = metric.check_metric(pts, d)
    if rep.ok:
        return f"ok {rep.points} points\n"
    lines = [f"{kind} {' '.join(map(str, where))}" for kind, where, _ in rep.failures]
    raise DomainError("metric check failed:\n" + "\n".join(lines))


def cmd_continuize(inp, args):
    f = inp.take("jumpfn")
    target = parse_q(args.target) if args.target is not None else None
    return serialize(continuize(f, target))


def cmd_decompose(inp, args):
    X = _segtree(inp)
    d = approx.branch_decomposition(X)
    lines = []
    for a, b in enumerate(d.branches):
        lo, hi, lc, hc = b.interval
        iv = f"{'[' if lc else '('}{fmt_q(lo)},{fmt_q(hi)}{']' if hc else ')'}"
        base = b.base if b.base is not None else "-"
        lines.append(f"branch {a} leaf={b.leaf} base={base} length={fmt_q(b.total)} image={iv}")
    return _out(lines)


def _stage(args) -> int:
    if args.n is None:
        raise DomainError("this command needs --n")
    return args.n


def cmd_subtree(inp, args):
    X = _segtree(inp)
    T = approx.subtree_Tn(approx.branch_decomposition(X), _stage(args))
    return _out(f"{p} {T.parent[p] if T.parent[p] is not None else '-'}" for p in T.points)


def cmd_density(inp, args):
    X = _segtree(inp)
    n = _stage(args)
    d = approx.branch_decomposition(X)
    if args.points:
        pts = [_point(t) for t in args.points]
        if len(pts) % 2:
            raise DomainError("density needs points in pairs")
        pairs = list(zip(pts[::2], pts[1::2]))
    else:
        pairs = sorted(
            set(approx_pairs(X, args.seed or 0)), key=lambda pq: (pq[0].sort_key(), pq[1].sort_key())
        )
    res = approx.check_density(d, n, pairs)
    lines = []
    for (p, q), hit in zip(pairs, res):
        lines.append(f"{p} {q} " + (f"{hit[0]} {hit[1]}" if hit else "none"))
    return _out(lines)


def approx_pairs(X, seed):
    return sample_comparable_pairs(random.Random(seed), X, 50)


def cmd_combine(inp, args):
    X = _segtree(inp)
    n = _stage(args)
    d = approx.branch_decomposition(X)
    stages = []
    for k in range(n + 1):
        T = approx.subtree_Tn(d, k)
        stages.append((T, approx.depth_grading(X, T)))
    f = approx.combine_gradings(X, stages, n)
    return serialize({p: f(p) for p in _points(args, X.points(3))})


def cmd_inject(inp, args):
    X = _segtree(inp)
    if args.points:
        pts = [_point(t) for t in args.points]
    else:
        pts = approx.subtree_Tn(approx.branch_decomposition(X), _stage(args)).points
    s = approx.branching_injection(X, pts)
    return _out(f"{x} {s[x]}" for x in sorted(s, key=lambda p: p.sort_key()))


def cmd_validate(inp, args):
    X = inp.take("segtree")
    problems = brto.validate(X)
    if problems:
        raise DomainError("\n".join(problems))
    return "ok\n"


def cmd_wispy(inp, args):
    b, t = brto.wispiness(_segtree(inp))
    return f"branching {b} twigs {t}\n"


def cmd_width(inp, args):
    return f"{brto.width(_segtree(inp))}\n"


def cmd_reroot(inp, args):
    X = _segtree(inp)
    if args.root is None:
        raise DomainError("reroot needs --root")
    return serialize(brto.reroot(X, _point(args.root)))


def cmd_convex(inp, args):
    X = _segtree(inp)
    return "true\n" if brto.is_convex(X, inp.take("region")) else "false\n"


def cmd_dot(inp, args):
    T = inp.take("wstree", "segtree")
    if isinstance(T, brto.SegmentTree):
        T = _segtree(inp)
    return emit_dot(T, inp.take("grading", optional=True))


# -- diagonalization -----------------------------------------------------------


def cmd_diag(inp, args):
    fam = inp.take("family")
    st = diag.diag_run(fam)
    lines = []
    for r in st.trace:
        word = "(" + ",".join(map(str, r.word)) + ")"
        lines.append(f"stage {r.n} word={word} promise={r.promise} {'fired' if r.fired else 'blocked'}")
    problems = diag.check_state(st, fam)
    if problems:
        raise DomainError("; ".join(problems))
    return _out(lines)


COMMANDS = {
    "rank": cmd_rank,
    "pad": cmd_pad,
    "succ": cmd_succ,
    "iso": cmd_iso,
    "meet": cmd_meet,
    "grade-rank": cmd_grade_rank,
    "cover": cmd_cover,
    "rgrade": cmd_rgrade,
    "qgrade-succ": cmd_qgrade_succ,
    "extend-branch": cmd_extend_branch,
    "road": cmd_road,
    "arclen": cmd_arclen,
    "metric": cmd_metric,
    "check-metric": cmd_check_metric,
    "continuize": cmd_continuize,
    "decompose": cmd_decompose,
    "subtree": cmd_subtree,
    "density": cmd_density,
    "combine": cmd_combine,
    "inject": cmd_inject,
    "diag": cmd_diag,
    "validate": cmd_validate,
    "wispy": cmd_wispy,
    "width": cmd_width,
    "reroot": cmd_reroot,
    "convex": cmd_convex,
    "dot": cmd_dot,
}


def _natural(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a natural number")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treeorders", description="Finitely presented tree orders.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("file", nargs="?", help="input document (or use --input)")
        p.add_argument("points", nargs="*", help="points such as a or a@1/2")
        p.add_argument("--input", help="input document path")
        p.add_argument("--n", type=_natural, help="approximation stage")
        p.add_argument("--root", help="new root point (reroot)")
        p.add_argument("--seed", type=_natural, help="seed for sampled checks")
        if name == "continuize":
            p.add_argument("--target", help="infimum of the result")
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    args, extra = ap.parse_known_args(argv)
    # points may also follow the options
    bad = [t for t in extra if t.startswith("--")]
    if bad:
        ap.error(f"unrecognized arguments: {' '.join(bad)}")
    args.points = list(args.points) + extra
    path = args.input or args.file
    if args.input and args.file:
        # with --input the positional slot holds the first point
        args.points = [args.file] + list(args.points)
    try:
        if path is None or path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        out = COMMANDS[args.command](_Input(parse_documents(text)), args)
    except ParseError as e:
        print(f"parse error: {e}", file=stderr)
        return 2
    except DomainError as e:
        print(f"error: {e}", file=stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=stderr)
        return 1
    stdout.write(out)
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
