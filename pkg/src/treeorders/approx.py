"""Branch decompositions of segment trees and the approximating
well-stratified subtrees built from rational chart points."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterator, Mapping, Optional, Sequence

from .brto import SegmentTree, branching_nodes, leq, lt, meet_all
from .common import DomainError, Point


def rationals01() -> Iterator[Fraction]:
    """``0, 1, 1/2, 1/3, 2/3, 1/4, 3/4, ...``: reduced fractions in [0, 1]
    by ascending denominator, then numerator."""
    yield Fraction(0)
    yield Fraction(1)
    d = 2
    while True:
        for k in range(1, d):
            if math.gcd(k, d) == 1:
                yield Fraction(k, d)
        d += 1


def first_rationals(n: int) -> list[Fraction]:
    """``q_0, ..., q_n``."""
    return list(islice(rationals01(), n + 1))


def rational_index(q: Fraction) -> int:
    """Position of ``q`` in :func:`rationals01`."""
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise ValueError(f"{q} is outside [0, 1]")
    if q == 0:
        return 0
    if q == 1:
        return 1
    d = q.denominator
    before = 2 + sum(_totient(k) for k in range(2, d))
    return before + sum(1 for k in range(1, q.numerator) if math.gcd(k, d) == 1)


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n) if math.gcd(k, n) == 1)


@dataclass(frozen=True)
class Branch:
    """The final segment ``F`` of one root-to-leaf branch, charted by
    normalised arc length onto ``I``.

    ``base`` is the vertex just below ``F`` (excluded), or None when ``F``
    starts at the root (included).
    """

    leaf: str
    base: Optional[str]
    edges: tuple
    start: Fraction
    total: Fraction
    top_closed: bool

    @property
    def interval(self) -> tuple:
        """``(lo, hi, lo_closed, hi_closed)`` of the chart image."""
        if self.total == 0:
            return (Fraction(1), Fraction(1), True, True)
        return (Fraction(0), Fraction(1), self.base is None, self.top_closed)

    def in_image(self, q: Fraction) -> bool:
        lo, hi, lc, hc = self.interval
        return (lo < q or (lc and q == lo)) and (q < hi or (hc and q == hi))


@dataclass(frozen=True)
class BranchDecomposition:
    tree: SegmentTree
    branches: tuple
    owner: Mapping[str, int]  # vertex (edge top, or the root) -> branch index

    def branch_of(self, p: Point) -> int:
        return self.owner[p.node]

    def chart(self, p: Point) -> Fraction:
        X = self.tree
        X.check(p)
        b = self.branches[self.branch_of(p)]
        if b.total == 0:
            return Fraction(1)
        if p.pos is None:
            depth = X.depth_of(p.node)
        else:
            depth = X.depth_of(X.parent[p.node]) + p.pos
        return (depth - b.start) / b.total

    def chart_inverse(self, alpha: int, q) -> Point:
        X = self.tree
        b = self.branches[alpha]
        q = Fraction(q)
        if not b.in_image(q):
            raise DomainError(f"{q} is not in the chart image of branch {alpha}")
        if b.total == 0:
            return Point(X.root)
        target = b.start + q * b.total
        if b.base is None and q == 0:
            return Point(X.root)
        for e in b.edges:
            top = X.depth_of(e)
            if target < top:
                return Point(e, target - (top - X.length[e]))
            if target == top:
                return Point(e)
        raise AssertionError("chart target beyond the branch")

    def breakpoints(self) -> list[tuple]:
        """``(alpha, q)`` for every vertex of ``X`` by its chart image."""
        out = []
        X = self.tree
        for v in X.dfs():
            if X.contains(Point(v)):
                out.append((self.owner[v], self.chart(Point(v))))
        return out


def branch_decomposition(X: SegmentTree) -> BranchDecomposition:
    """Branches in depth-first order (children by identifier); each branch
    keeps only the part not covered by earlier ones."""
    root = X.root
    if root is None:
        raise DomainError("tree has no root")
    leaves = [v for v in X.dfs() if not X.children(v)]
    covered = {root}
    owner = {root: 0}
    branches = []
    if leaves == [root]:
        return BranchDecomposition(X, (Branch(root, None, (), Fraction(0), Fraction(0), True),), owner)
    for alpha, leaf in enumerate(leaves):
        path = []
        u = leaf
        while u not in covered:
            path.append(u)
            u = X.parent[u]
        path.reverse()
        base = None if alpha == 0 else u
        start = X.depth_of(u)
        total = X.depth_of(leaf) - start
        for v in path:
            owner[v] = alpha
            covered.add(v)
        branches.append(Branch(leaf, base, tuple(path), start, total, not X.is_open(leaf)))
    return BranchDecomposition(X, tuple(branches), owner)


@dataclass(frozen=True)
class FiniteSubtree:
    """A finite subset of a segment tree with its induced tree structure."""

    tree: SegmentTree
    points: tuple
    parent: Mapping[Point, Optional[Point]]

    @classmethod
    def from_points(cls, X: SegmentTree, pts) -> "FiniteSubtree":
        pts = sorted(set(pts), key=Point.sort_key)
        if not pts:
            raise DomainError("empty subset")
        for p in pts:
            X.check(p)
        on_edge = _by_edge(X, pts)
        parent = {}
        minima = []
        for p in pts:
            lst = on_edge[p.node]
            i = lst.index(p)
            below = lst[i - 1] if i > 0 else _top_below(X, on_edge, X.parent[p.node])
            parent[p] = below
            if below is None:
                minima.append(p)
        if len(minima) != 1:
            raise DomainError(f"subset has no least element (minimal points {list(map(str, minima))})")
        T = cls(X, tuple(pts), parent)
        object.__setattr__(T, "_on_edge", on_edge)
        return T

    def floor(self, x: Point) -> Optional[Point]:
        """Greatest point of the subtree below or equal to ``x``."""
        X = self.tree
        t = _edge_pos(X, x)
        below = [p for p in self._on_edge.get(x.node, []) if _edge_pos(X, p) <= t]
        if below:
            return below[-1]
        return _top_below(X, self._on_edge, X.parent[x.node])

    @property
    def root(self) -> Point:
        return next(p for p, q in self.parent.items() if q is None)

    def children(self) -> dict:
        out: dict[Point, list] = {p: [] for p in self.points}
        for p, q in self.parent.items():
            if q is not None:
                out[q].append(p)
        return out

    def branching(self) -> list[Point]:
        return [p for p, kids in self.children().items() if len(kids) >= 2]

    def __contains__(self, p):
        return p in self.parent

    def __len__(self):
        return len(self.points)


def _edge_pos(X: SegmentTree, p: Point) -> Fraction:
    if p.pos is not None:
        return p.pos
    return X.length.get(p.node, Fraction(0))


def _by_edge(X: SegmentTree, pts) -> dict:
    out: dict[str, list] = {}
    for p in pts:
        out.setdefault(p.node, []).append(p)
    for lst in out.values():
        lst.sort(key=lambda p: _edge_pos(X, p))
    return out


def _top_below(X: SegmentTree, on_edge: dict, u: Optional[str]) -> Optional[Point]:
    # topmost subset point on the edges from vertex u down to the root
    while u is not None:
        if u in on_edge:
            return on_edge[u][-1]
        u = X.parent[u]
    return None


def is_well_stratified(T: FiniteSubtree) -> bool:
    """Every down-set is finite (automatic) and linearly ordered, and there is
    a least element."""
    X = T.tree
    roots = [p for p in T.points if all(leq(X, p, q) for q in T.points)]
    if len(roots) != 1:
        return False
    for x in T.points:
        down = sorted(
            (y for y in T.points if leq(X, y, x)),
            key=lambda y: X.depth_of(X.parent[y.node]) + y.pos if y.pos is not None else X.depth_of(y.node),
        )
        if any(not leq(X, a, b) for a, b in zip(down, down[1:])):
            return False
    return True


def stage_points(d: BranchDecomposition, n: int) -> list[list[Point]]:
    """``new[k]`` lists the points first added at stage ``k`` (``k <= n``)."""
    X = d.tree
    seen = {Point(X.root)}
    out = []
    for k, q in enumerate(first_rationals(n)):
        new = [Point(X.root)] if k == 0 else []
        for alpha, b in enumerate(d.branches):
            if b.in_image(q):
                z = d.chart_inverse(alpha, q)
                if z not in seen:
                    seen.add(z)
                    new.append(z)
        out.append(new)
    return out


def subtree_Tn(d: BranchDecomposition, n: int) -> FiniteSubtree:
    pts = [p for stage in stage_points(d, n) for p in stage]
    return FiniteSubtree.from_points(d.tree, pts)


def breakpoint_count(d: BranchDecomposition) -> int:
    """Number of chart breakpoints: the vertices of the tree that are points."""
    return len(d.breakpoints())


def breakpoint_stage(d: BranchDecomposition) -> int:
    """Least ``n`` with every vertex of the tree in ``T_n``."""
    return max((rational_index(q) for _, q in d.breakpoints()), default=0)


def check_density(d: BranchDecomposition, N: int, pairs: Sequence[tuple]) -> list:
    """For each ``(p, q)`` with ``p < q``: ``(n, z)`` with ``n <= N`` least and
    ``p < z < q``, ``z`` first added at stage ``n``; None when none exists."""
    X = d.tree
    for p, q in pairs:
        X.check(p)
        X.check(q)
        if not lt(X, p, q):
            raise DomainError(f"pair ({p}, {q}) is not strictly comparable")
    stages = stage_points(d, N)
    out = []
    for p, q in pairs:
        hit = None
        for n, new in enumerate(stages):
            z = next((z for z in new if lt(X, p, z) and lt(X, z, q)), None)
            if z is not None:
                hit = (n, z)
                break
        out.append(hit)
    return out


class CombinedGrading:
    """``f(x) = sum_n fhat_n(x) / 2^n`` with
    ``fhat_n(x) = max{f_n(y) : y in T_n, y <= x}``."""

    def __init__(self, X: SegmentTree, stages: Sequence[tuple]):
        self.tree = X
        self.stages = list(stages)

    def partial(self, n: int, x: Point) -> Fraction:
        T, f = self.stages[n]
        # f_n is monotone, so the supremum sits at the greatest point below x
        return f[T.floor(x)]

    def __call__(self, x: Point) -> Fraction:
        self.tree.check(x)
        return sum(
            (self.partial(n, x) / 2**n for n in range(len(self.stages))), Fraction(0)
        )


def combine_gradings(X: SegmentTree, stages: Sequence[tuple], N: int) -> CombinedGrading:
    """Combine R-gradings ``f_n: T_n -> [0, 1)`` of the first ``N + 1``
    approximating subtrees."""
    if len(stages) < N + 1:
        raise DomainError(f"need {N + 1} stages, got {len(stages)}")
    use = list(stages[: N + 1])
    root = Point(X.root)
    for n, (T, f) in enumerate(use):
        if root not in T:
            raise DomainError(f"stage {n} misses the root")
        for p in T.points:
            if p not in f:
                raise DomainError(f"stage {n}: {p} is not graded")
            if not 0 <= f[p] < 1:
                raise DomainError(f"stage {n}: value {f[p]} at {p} is outside [0, 1)")
        # strict monotonicity along induced parent links suffices by transitivity
        for q, p in T.parent.items():
            if p is not None and f[p] >= f[q]:
                raise DomainError(f"stage {n} not monotone: {p} < {q} but {f[p]} >= {f[q]}")
    return CombinedGrading(X, use)


def depth_grading(X: SegmentTree, T: FiniteSubtree) -> dict:
    """A standard grading of a finite subtree into [0, 1): normalised depth."""
    def depth(p):
        if p.pos is None:
            return X.depth_of(p.node)
        return X.depth_of(X.parent[p.node]) + p.pos

    scale = 1 + max(depth(Point(v)) for v in X.vertices)
    return {p: depth(p) / scale for p in T.points}


def branching_injection(X: SegmentTree, pts) -> dict:
    """``s(x)`` = meet in ``X`` of the immediate successors of each branching
    point ``x`` of the finite subtree; injective into the branching vertices."""
    T = FiniteSubtree.from_points(X, pts)
    kids = T.children()
    s = {x: meet_all(X, kids[x]) for x in T.branching()}
    xb = set(branching_nodes(X))
    for x, m in s.items():
        assert m in xb, f"s({x}) = {m} is not branching in X"
    assert len(set(s.values())) == len(s), "s is not injective"
    return s
