"""Finite presentations of branchwise-real tree orders ("segment trees").

Every non-root vertex carries the edge from its parent: a positive rational
length and a top that is either ``closed`` (the vertex is a point) or
``open`` (the vertex is an unattained supremum; only allowed on leaves, which
keeps every pair of points meetable).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Optional

from .common import DomainError, Point

CLOSED, OPEN = "closed", "open"


@dataclass(frozen=True)
class SegmentTree:
    parent: Mapping[str, Optional[str]]
    length: Mapping[str, Fraction] = field(default_factory=dict)
    top: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        children: dict[str, list[str]] = {v: [] for v in self.parent}
        for v, p in self.parent.items():
            if p is not None and p in children:
                children[p].append(v)
        for kids in children.values():
            kids.sort()
        object.__setattr__(self, "_children", {v: tuple(k) for v, k in children.items()})
        object.__setattr__(self, "_index", None)
        roots = [v for v, p in self.parent.items() if p is None]
        object.__setattr__(self, "_root", roots[0] if len(roots) == 1 else None)

    @classmethod
    def build(cls, edges: Iterable[tuple], root: str = "r") -> "SegmentTree":
        """``edges`` holds ``(child, parent, length[, top])`` tuples."""
        parent: dict[str, Optional[str]] = {root: None}
        length: dict[str, Fraction] = {}
        top: dict[str, str] = {}
        for e in edges:
            child, par, ln = e[:3]
            parent[child] = par
            length[child] = Fraction(ln)
            top[child] = e[3] if len(e) > 3 else CLOSED
        X = cls(parent, length, top)
        problems = validate(X)
        if problems:
            raise DomainError("; ".join(problems))
        return X

    @classmethod
    def chain(cls, lengths, names=None, top_last: str = CLOSED) -> "SegmentTree":
        lengths = list(lengths)
        names = names or [f"v{i}" for i in range(len(lengths) + 1)]
        edges = [(names[i + 1], names[i], ln) for i, ln in enumerate(lengths)]
        if edges:
            edges[-1] = edges[-1] + (top_last,)
        return cls.build(edges, root=names[0])

    # -- structure -------------------------------------------------------
    def _idx(self):
        if self._index is None:
            root = self.root
            tin, tout, depth = {}, {}, {}
            if root is not None:
                clock = 0
                stack = [(root, False)]
                depth[root] = 0
                while stack:
                    v, done = stack.pop()
                    if done:
                        tout[v] = clock
                        continue
                    tin[v] = clock
                    clock += 1
                    stack.append((v, True))
                    for c in reversed(self._children[v]):
                        depth[c] = depth[v] + 1
                        stack.append((c, False))
            object.__setattr__(self, "_index", (tin, tout, depth))
        return self._index

    @property
    def root(self) -> Optional[str]:
        return self._root

    @property
    def vertices(self) -> list[str]:
        return sorted(self.parent)

    def children(self, v: str) -> tuple:
        return self._children[v]

    def edges(self) -> list[str]:
        return [v for v in self.dfs() if self.parent[v] is not None]

    def dfs(self) -> Iterator[str]:
        root = self.root
        if root is None:
            return
        stack = [root]
        while stack:
            v = stack.pop()
            yield v
            stack.extend(reversed(self._children[v]))

    def is_ancestor(self, a: str, b: str) -> bool:
        tin, tout, _ = self._idx()
        return tin[a] <= tin[b] < tout[a]

    def is_open(self, v: str) -> bool:
        return self.top.get(v) == OPEN

    def contains(self, p: Point) -> bool:
        if p.node not in self.parent:
            return False
        if p.pos is None:
            return self.parent[p.node] is None or not self.is_open(p.node)
        if self.parent[p.node] is None:
            return False
        return 0 < p.pos < self.length[p.node]

    def point(self, node: str, t=None) -> Point:
        """Normalised point: parameter 0 is the parent vertex, the full length
        is the child vertex."""
        if t is None:
            return self.check(Point(node))
        t = Fraction(t)
        if self.parent.get(node) is None:
            raise DomainError(f"{node!r} has no incoming edge")
        if t == 0:
            return Point(self.parent[node])
        if t == self.length[node]:
            return self.check(Point(node))
        return self.check(Point(node, t))

    def check(self, p: Point) -> Point:
        if not self.contains(p):
            raise DomainError(f"{p} is not a point of the tree")
        return p

    def points(self, per_edge: int = 3) -> list[Point]:
        """Vertices plus ``per_edge`` evenly spaced interior points per edge."""
        out = []
        for v in self.dfs():
            if self.parent[v] is not None:
                L = self.length[v]
                out.extend(Point(v, L * k / (per_edge + 1)) for k in range(1, per_edge + 1))
                if self.is_open(v):
                    continue
            out.append(Point(v))
        return out

    def depth_of(self, v: str) -> Fraction:
        total = Fraction(0)
        while self.parent[v] is not None:
            total += self.length[v]
            v = self.parent[v]
        return total


def validate(X: SegmentTree) -> list[str]:
    """Diagnostics for every violated invariant; empty means valid."""
    problems = []
    roots = sorted(v for v, p in X.parent.items() if p is None)
    if len(roots) != 1:
        problems.append(f"expected exactly one root, found {roots}")
    for v in sorted(X.parent):
        p = X.parent[v]
        if p is None:
            continue
        if p not in X.parent:
            problems.append(f"vertex {v!r}: unknown parent {p!r}")
        ln = X.length.get(v)
        if ln is None or ln <= 0:
            problems.append(f"edge into {v!r}: length must be positive, got {ln}")
        tp = X.top.get(v, CLOSED)
        if tp not in (CLOSED, OPEN):
            problems.append(f"edge into {v!r}: top must be closed or open, got {tp!r}")
        if tp == OPEN and X.children(v):
            problems.append(f"edge into {v!r}: open top cannot carry children")
    for v in sorted(X.parent):
        seen = set()
        u = v
        while u is not None and u in X.parent:
            if u in seen:
                problems.append(f"parent links cycle through {v!r}")
                break
            seen.add(u)
            u = X.parent[u]
    return problems


def _pos(X: SegmentTree, p: Point) -> Fraction:
    if p.pos is not None:
        return p.pos
    return X.length.get(p.node, Fraction(0))


def leq(X: SegmentTree, p: Point, q: Point) -> bool:
    if p.node == q.node:
        return _pos(X, p) <= _pos(X, q)
    if X.parent[p.node] is None:
        return True
    return X.is_ancestor(p.node, q.node)


def lt(X: SegmentTree, p: Point, q: Point) -> bool:
    return p != q and leq(X, p, q)


def comparable(X: SegmentTree, p: Point, q: Point) -> bool:
    return leq(X, p, q) or leq(X, q, p)


def meet_s(X: SegmentTree, p: Point, q: Point) -> Point:
    X.check(p)
    X.check(q)
    if leq(X, p, q):
        return p
    if leq(X, q, p):
        return q
    a = p.node
    while not X.is_ancestor(a, q.node):
        a = X.parent[a]
    return Point(a)


def meet_all(X: SegmentTree, pts: Iterable[Point]) -> Point:
    it = iter(pts)
    m = next(it)
    for p in it:
        m = meet_s(X, m, p)
    return m


def degree(X: SegmentTree, p: Point) -> int:
    if p.pos is not None:
        X.check(p)
        return 1
    if p.node not in X.parent:
        raise DomainError(f"unknown vertex {p.node!r}")
    return len(X.children(p.node))


def branching_nodes(X: SegmentTree) -> list[Point]:
    return [Point(v) for v in X.dfs() if len(X.children(v)) >= 2]


@dataclass(frozen=True)
class Twig:
    """The twig above ``base`` up to the leaf edge ``leaf``; ``base`` belongs to
    it only when ``base_included`` (the whole tree over a degree-1 root)."""

    base: Point
    base_included: bool
    leaf: str
    top_closed: bool
    edges: tuple


def twigs(X: SegmentTree) -> list[Twig]:
    out = []
    for leaf in X.dfs():
        if X.parent[leaf] is None or X.children(leaf):
            continue
        path = [leaf]
        u = X.parent[leaf]
        while X.parent[u] is not None and len(X.children(u)) == 1:
            path.append(u)
            u = X.parent[u]
        included = X.parent[u] is None and len(X.children(u)) == 1
        out.append(Twig(Point(u), included, leaf, not X.is_open(leaf), tuple(reversed(path))))
    return out


def wispiness(X: SegmentTree) -> tuple[int, int]:
    return len(branching_nodes(X)), len(twigs(X))


def width(X: SegmentTree) -> int:
    """Maximum antichain size: one point per leaf direction."""
    leaves = [v for v in X.dfs() if X.parent[v] is not None and not X.children(v)]
    return len(leaves) if leaves else 1


def width_bruteforce(X: SegmentTree) -> int:
    """Largest antichain among vertices and edge midpoints, by exhaustive
    search over antichains."""
    pts = X.points(per_edge=1)
    n = len(pts)
    inc = [[not comparable(X, pts[i], pts[j]) for j in range(n)] for i in range(n)]
    best = 0

    def grow(chosen, start):
        nonlocal best
        best = max(best, len(chosen))
        for k in range(start, n):
            if all(inc[k][c] for c in chosen):
                chosen.append(k)
                grow(chosen, k + 1)
                chosen.pop()

    grow([], 0)
    return best


def _fresh(taken, base):
    name = base + "*"
    while name in taken:
        name += "*"
    return name


def reroot_with_map(X: SegmentTree, p: Point):
    """``reroot`` plus a function translating points of ``X`` to points of the
    rerooted tree."""
    if p.pos is None and X.parent.get(p.node) is not None and X.is_open(p.node):
        raise DomainError(f"cannot reroot at the unattained open top {p.node!r}")
    X.check(p)
    parent = dict(X.parent)
    length = dict(X.length)
    top = dict(X.top)
    split = None
    if p.pos is not None:
        c = p.node
        split = _fresh(set(X.parent), c)
        parent[split] = X.parent[c]
        length[split] = p.pos
        top[split] = CLOSED
        parent[c] = split
        length[c] = X.length[c] - p.pos
        new_root = split
    else:
        new_root = p.node
    # edges on the path from the new root down to the old root get reversed:
    # the edge into v becomes the edge into its old parent w
    flipped = {}
    u = new_root
    while parent[u] is not None:
        flipped[u] = (parent[u], length[u])
        u = parent[u]
    new_parent = dict(parent)
    new_length = dict(length)
    new_top = dict(top)
    new_parent[new_root] = None
    for v in flipped:
        new_length.pop(v, None)
        new_top.pop(v, None)
    for v, (w, ln) in flipped.items():
        new_parent[w] = v
        new_length[w] = ln
        new_top[w] = CLOSED
    Y = SegmentTree(new_parent, new_length, new_top)

    def translate(q: Point) -> Point:
        X.check(q)
        node, t = q.node, q.pos
        if split is not None and node == p.node and t is not None:
            if t == p.pos:
                return Point(split)
            if t < p.pos:
                node = split
            else:
                t = t - p.pos
        if t is None:
            return Point(node)
        if node in flipped:
            w, ln = flipped[node]
            return Point(w, ln - t)
        return Point(node, t)

    return Y, translate


def reroot(X: SegmentTree, p: Point) -> SegmentTree:
    return reroot_with_map(X, p)[0]


def cut_point_leq(X: SegmentTree, root: Point, x: Point, y: Point) -> bool:
    """``x <= y`` in the cut-point order with the given root, computed as
    ``x in [root, y]`` inside the original order."""
    m = meet_s(X, root, y)
    return leq(X, m, x) and (leq(X, x, root) or leq(X, x, y))


@dataclass(frozen=True)
class Region:
    """A sub-presentation: whole vertices plus edge sub-intervals
    ``(edge, lo, hi, lo_closed, hi_closed)`` in edge parameters."""

    vertices: frozenset = frozenset()
    intervals: tuple = ()

    def contains(self, X: SegmentTree, p: Point) -> bool:
        if p.pos is None and p.node in self.vertices:
            return True
        for e, lo, hi, lc, hc in self.intervals:
            if p.pos is None:
                # a vertex is the top of its own edge and the bottom of its
                # child edges
                if e == p.node and hi == X.length[e] and hc:
                    return True
                if X.parent.get(e) == p.node and lo == 0 and lc:
                    return True
                continue
            if e == p.node and (lo < p.pos or (lc and lo == p.pos)) and (
                p.pos < hi or (hc and p.pos == hi)
            ):
                return True
        return False


def _check_region(X: SegmentTree, S: Region):
    for v in S.vertices:
        if v not in X.parent or not X.contains(Point(v)):
            raise DomainError(f"region vertex {v!r} is not a point of the tree")
    for e, lo, hi, lc, hc in S.intervals:
        if X.parent.get(e) is None:
            raise DomainError(f"region interval on unknown edge {e!r}")
        if not (0 <= lo <= hi <= X.length[e]) or (lo == hi and not (lc and hc)):
            raise DomainError(f"bad interval [{lo}, {hi}] on edge {e!r}")
        if hi == X.length[e] and hc and X.is_open(e):
            raise DomainError(f"interval on {e!r} includes the unattained open top")


def is_convex(X: SegmentTree, S: Region) -> bool:
    """Exact convexity: subdivide every edge at the region's breakpoints; the
    region is constant on each piece, and in a tree convex means connected."""
    _check_region(X, S)
    cuts: dict[str, set] = {e: {Fraction(0), X.length[e]} for e in X.edges()}
    for e, lo, hi, _, _ in S.intervals:
        cuts[e].update((Fraction(lo), Fraction(hi)))
    nodes = []  # (key, representative point)
    adj: dict = {}

    def node(key, rep):
        if key not in adj:
            adj[key] = set()
            nodes.append((key, rep))
        return key

    def link(a, b):
        adj[a].add(b)
        adj[b].add(a)

    for v in X.dfs():
        if X.contains(Point(v)):
            node(("v", v), Point(v))
    for e in X.edges():
        ts = sorted(cuts[e])
        L = X.length[e]
        prev = ("v", X.parent[e])
        for a, b in zip(ts, ts[1:]):
            seg = node(("s", e, a), Point(e, (a + b) / 2))
            link(prev, seg)
            if b == L:
                if not X.is_open(e):
                    link(seg, ("v", e))
            else:
                prev = node(("b", e, b), Point(e, b))
                link(seg, prev)
    inside = {key for key, rep in nodes if S.contains(X, rep)}
    if not inside:
        return True
    start = next(iter(inside))
    seen = {start}
    stack = [start]
    while stack:
        k = stack.pop()
        for nb in adj[k]:
            if nb in inside and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return seen == inside


def all_pairs(points):
    return combinations(points, 2)
