"""Gradings of segment trees, the railroad-track metric, and jump removal."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping, Sequence

import numpy as np

from .brto import SegmentTree, meet_s
from .common import DomainError, Point
from .jumps import JumpFunction, continuize


@dataclass(frozen=True)
class TreeGrading:
    """A grading of a segment tree: a root value and, per edge, a
    :class:`JumpFunction` of the normalised edge parameter ``t / length``."""

    root_value: Fraction
    edges: Mapping[str, JumpFunction]

    def value(self, X: SegmentTree, p: Point) -> Fraction:
        X.check(p)
        if X.parent[p.node] is None:
            return Fraction(self.root_value)
        fn = self.edges[p.node]
        if p.pos is None:
            return fn(1)
        return fn(p.pos / X.length[p.node])

    def vertex_value(self, X: SegmentTree, v: str) -> Fraction:
        if X.parent[v] is None:
            return Fraction(self.root_value)
        return self.edges[v](1)

    def __call__(self, X, p):
        return self.value(X, p)


def grading_problems(X: SegmentTree, g: TreeGrading) -> list[str]:
    """Why ``g`` fails to be strictly monotone along root paths."""
    out = []
    for e in X.edges():
        if e not in g.edges:
            out.append(f"edge {e!r} has no grading")
            continue
        below = g.vertex_value(X, X.parent[e])
        if g.edges[e].infimum < below:
            out.append(f"edge {e!r} starts at {g.edges[e].infimum}, below {below}")
    return out


def continuity_problems(X: SegmentTree, g: TreeGrading) -> list[str]:
    out = grading_problems(X, g)
    for e in X.edges():
        if e not in g.edges:
            continue
        fn = g.edges[e]
        inner = [x for x, _ in fn.jumps() if x < 1 or not X.is_open(e)]
        if inner:
            out.append(f"edge {e!r} jumps at {', '.join(map(str, inner))}")
        below = g.vertex_value(X, X.parent[e])
        if fn.infimum != below:
            out.append(f"edge {e!r} starts at {fn.infimum}, not at {below}")
    return out


def arc_length_grading(X: SegmentTree) -> TreeGrading:
    edges = {}
    for e in X.edges():
        base = X.depth_of(X.parent[e])
        edges[e] = JumpFunction.affine(base, base + X.length[e])
    return TreeGrading(Fraction(0), edges)


def railroad_metric(X: SegmentTree, g: TreeGrading, p: Point, q: Point, *, checked=False) -> Fraction:
    """``d(p, q) = g(p) + g(q) - 2 g(p ^ q)``."""
    if not checked:
        problems = continuity_problems(X, g)
        if problems:
            raise DomainError("not a continuous grading: " + "; ".join(problems))
    m = meet_s(X, p, q)
    return g.value(X, p) + g.value(X, q) - 2 * g.value(X, m)


def railroad(X: SegmentTree, g: TreeGrading) -> Callable[[Point, Point], Fraction]:
    """The metric as a two-argument function (grading checked once)."""
    problems = continuity_problems(X, g)
    if problems:
        raise DomainError("not a continuous grading: " + "; ".join(problems))
    cache: dict = {}

    def value(p):
        if p not in cache:
            cache[p] = g.value(X, p)
        return cache[p]

    def d(p, q):
        return value(p) + value(q) - 2 * value(meet_s(X, p, q))

    return d


@dataclass
class MetricReport:
    points: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _integer_matrix(D: list[list[Fraction]]):
    den = 1
    for row in D:
        for x in row:
            den = math.lcm(den, x.denominator)
    M = [[int(x * den) for x in row] for row in D]
    big = max((abs(x) for row in M for x in row), default=0)
    if big > 2**60:
        return None
    return np.array(M, dtype=np.int64).reshape(len(D), len(D))


def check_metric(sample: Sequence[Point], dist: Callable, *, max_failures: int = 20) -> MetricReport:
    """Exhaustively check positivity, symmetry, the triangle inequality and
    the four-point condition over ``sample``; failures carry witnesses."""
    pts = list(dict.fromkeys(sample))
    n = len(pts)
    report = MetricReport(n)
    D = [[Fraction(dist(a, b)) for b in pts] for a in pts]
    fails = report.failures

    for i in range(n):
        if D[i][i] != 0:
            fails.append(("identity", (pts[i],), D[i][i]))
        for j in range(i + 1, n):
            if D[i][j] <= 0:
                fails.append(("positivity", (pts[i], pts[j]), D[i][j]))
            if D[i][j] != D[j][i]:
                fails.append(("symmetry", (pts[i], pts[j]), (D[i][j], D[j][i])))
    if n < 3:
        return report

    M = _integer_matrix(D)
    if M is None:
        _check_slow(pts, D, fails, max_failures)
        return report
    # triangle: d(i,k) <= d(i,j) + d(j,k)
    tri = M[:, :, None] + M[None, :, :] - M[:, None, :]  # [i, j, k]
    bad = np.argwhere(tri < 0)
    for i, j, k in bad[:max_failures]:
        fails.append(("triangle", (pts[i], pts[j], pts[k]), (D[i][k], D[i][j], D[j][k])))
    if n >= 4:
        quads = np.array(list(combinations(range(n), 4)), dtype=np.int64)
        a, b, c, d = quads.T
        s = np.stack([M[a, b] + M[c, d], M[a, c] + M[b, d], M[a, d] + M[b, c]], axis=1)
        s.sort(axis=1)
        bad = np.nonzero(s[:, 2] != s[:, 1])[0]
        for r in bad[:max_failures]:
            q = tuple(pts[x] for x in quads[r])
            fails.append(("four-point", q, tuple(Fraction(int(x)) for x in s[r])))
    return report


def _check_slow(pts, D, fails, max_failures):
    n = len(pts)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if D[i][k] > D[i][j] + D[j][k] and len(fails) < max_failures:
                    fails.append(("triangle", (pts[i], pts[j], pts[k]), (D[i][k], D[i][j], D[j][k])))
    for a, b, c, d in combinations(range(n), 4):
        s = sorted((D[a][b] + D[c][d], D[a][c] + D[b][d], D[a][d] + D[b][c]))
        if s[2] != s[1] and len(fails) < max_failures:
            fails.append(("four-point", (pts[a], pts[b], pts[c], pts[d]), tuple(s)))


def full_continuization(X: SegmentTree, f: TreeGrading) -> TreeGrading:
    """Turn an R-grading into a continuous grading below it.

    Edges are handled in depth-first order; each edge function is continuized
    and shifted so that it starts at the (already final) value of its lower
    vertex.  The root keeps its value.
    """
    problems = grading_problems(X, f)
    if problems:
        raise DomainError("not a grading: " + "; ".join(problems))
    out: dict[str, JumpFunction] = {}
    done = TreeGrading(Fraction(f.root_value), out)
    for e in X.edges():
        below = done.vertex_value(X, X.parent[e])
        out[e] = continuize(f.edges[e], below)
    return done
