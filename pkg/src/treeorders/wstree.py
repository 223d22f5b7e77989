"""Compressed presentations of well-stratified trees.

An edge of finite length ``n`` stands for a chain of ``n`` successor points
ending at the child vertex; an edge of length omega stands for an omega-chain
of successor points whose top (the child vertex) sits on a limit level.
Points are :class:`~treeorders.common.Point` values whose ``pos`` is a natural
offset along the edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional

from .common import DomainError, Point
from .ordinal import OMEGA, ZERO, Ordinal, is_successor, ord_add


def _as_length(value) -> Ordinal:
    if isinstance(value, Ordinal):
        return value
    if value in ("w", "omega"):
        return OMEGA
    if isinstance(value, int) and not isinstance(value, bool):
        return Ordinal.of(value)
    raise ValueError(f"bad edge length {value!r}")


def _valid_length(length: Ordinal) -> bool:
    return length == OMEGA or (length.is_finite and not length.is_zero)


@dataclass(frozen=True)
class OrdinalTree:
    parent: Mapping[str, Optional[str]]
    length: Mapping[str, Ordinal] = field(default_factory=dict)

    def __post_init__(self):
        roots = [v for v, p in self.parent.items() if p is None]
        if self.parent and len(roots) != 1:
            raise DomainError(f"expected exactly one root, found {sorted(roots)}")
        for v, p in self.parent.items():
            if p is None:
                if v in self.length:
                    raise DomainError(f"root {v!r} cannot carry an edge length")
                continue
            if p not in self.parent:
                raise DomainError(f"vertex {v!r} has unknown parent {p!r}")
            if v not in self.length or not _valid_length(self.length[v]):
                raise DomainError(f"edge into {v!r} needs a length in N+ or w")
        # acyclicity: every vertex reaches the root
        for v in self.parent:
            seen = set()
            u: Optional[str] = v
            while u is not None:
                if u in seen:
                    raise DomainError(f"parent links cycle through {u!r}")
                seen.add(u)
                u = self.parent[u]
        children: dict[str, list[str]] = {v: [] for v in self.parent}
        for v, p in self.parent.items():
            if p is not None:
                children[p].append(v)
        for kids in children.values():
            kids.sort()
        object.__setattr__(self, "_children", {v: tuple(k) for v, k in children.items()})
        object.__setattr__(self, "_root", roots[0] if roots else None)
        tin: dict[str, int] = {}
        tout: dict[str, int] = {}
        depth: dict[str, int] = {}
        if roots:
            clock = 0
            stack = [(roots[0], False)]
            depth[roots[0]] = 0
            while stack:
                v, done = stack.pop()
                if done:
                    tout[v] = clock
                    continue
                tin[v] = clock
                clock += 1
                stack.append((v, True))
                for c in reversed(children[v]):
                    depth[c] = depth[v] + 1
                    stack.append((c, False))
        object.__setattr__(self, "_tin", tin)
        object.__setattr__(self, "_tout", tout)
        object.__setattr__(self, "_depth", depth)

    @classmethod
    def build(cls, edges: Iterable[tuple], root: str = "r") -> "OrdinalTree":
        """``edges`` holds ``(child, parent, length)`` triples; ``length`` is a
        positive int, ``"w"`` or an :class:`Ordinal`."""
        parent: dict[str, Optional[str]] = {root: None}
        length: dict[str, Ordinal] = {}
        for child, par, ln in edges:
            parent[child] = par
            length[child] = _as_length(ln)
        return cls(parent, length)

    @classmethod
    def chain(cls, lengths: Iterable, names: Optional[list[str]] = None) -> "OrdinalTree":
        lengths = list(lengths)
        names = names or [f"v{i}" for i in range(len(lengths) + 1)]
        return cls.build(
            [(names[i + 1], names[i], ln) for i, ln in enumerate(lengths)], root=names[0]
        )

    @classmethod
    def empty(cls) -> "OrdinalTree":
        return cls({}, {})

    @property
    def root(self) -> Optional[str]:
        return self._root

    @property
    def vertices(self) -> list[str]:
        return sorted(self.parent)

    def children(self, v: str) -> tuple:
        return self._children[v]

    def is_empty(self) -> bool:
        return not self.parent

    def is_ancestor(self, a: str, b: str) -> bool:
        """``a`` is an ancestor of ``b`` (or equal)."""
        return self._tin[a] <= self._tin[b] < self._tout[a]

    def edge_is_omega(self, v: str) -> bool:
        return self.length[v] == OMEGA

    def contains(self, p: Point) -> bool:
        if p.node not in self.parent:
            return False
        if p.pos is None:
            return True
        if self.parent[p.node] is None or p.pos.denominator != 1 or p.pos < 1:
            return False
        ln = self.length[p.node]
        return ln == OMEGA or p.pos < ln.finite_value()

    def check(self, p: Point) -> Point:
        if not self.contains(p):
            raise DomainError(f"{p} is not a point of the tree")
        return p

    def points(self, omega_depth: int = 2) -> list[Point]:
        """All vertices, every interior point of finite edges, and the first
        ``omega_depth`` offsets of each omega-edge."""
        out = []
        for v in self.dfs():
            if self.parent[v] is not None:
                ln = self.length[v]
                top = omega_depth + 1 if ln == OMEGA else ln.finite_value()
                out.extend(Point(v, k) for k in range(1, top))
            out.append(Point(v))
        return out

    def dfs(self) -> Iterator[str]:
        if self._root is None:
            return
        stack = [self._root]
        while stack:
            v = stack.pop()
            yield v
            stack.extend(reversed(self._children[v]))

    def branching_vertices(self) -> list[str]:
        return [v for v in self.dfs() if len(self._children[v]) >= 2]

    def vertex_rank(self, v: str) -> Ordinal:
        path = []
        u: Optional[str] = v
        while self.parent[u] is not None:
            path.append(u)
            u = self.parent[u]
        total = ZERO
        for w in reversed(path):
            total = ord_add(total, self.length[w])
        return total


def rank(T: OrdinalTree, p: Point) -> Ordinal:
    T.check(p)
    if p.pos is None:
        return T.vertex_rank(p.node)
    base = T.vertex_rank(T.parent[p.node])
    return ord_add(base, Ordinal.of(int(p.pos)))


def leq_w(T: OrdinalTree, p: Point, q: Point) -> bool:
    if p.node == q.node:
        if p.pos is None:
            return q.pos is None
        return q.pos is None or p.pos <= q.pos
    if T.parent[p.node] is None:
        return True
    return T.is_ancestor(p.node, q.node)


def meet_w(T: OrdinalTree, p: Point, q: Point) -> Point:
    T.check(p)
    T.check(q)
    if leq_w(T, p, q):
        return p
    if leq_w(T, q, p):
        return q
    a, b = p.node, q.node
    while not T.is_ancestor(a, b):
        a = T.parent[a]
    return Point(a)


def _fresh(taken: set, base: str) -> str:
    name = base + "'"
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def pad(T: OrdinalTree) -> OrdinalTree:
    """Insert a new vertex directly below the root and below every point on
    a limit level (the tops of omega-edges)."""
    if T.is_empty():
        raise DomainError("cannot pad the empty tree")
    taken = set(T.parent)
    parent: dict[str, Optional[str]] = dict(T.parent)
    length: dict[str, Ordinal] = dict(T.length)
    new_root = _fresh(taken, T.root)
    parent[new_root] = None
    parent[T.root] = new_root
    length[T.root] = Ordinal.of(1)
    for v in T.vertices:
        if T.parent[v] is not None and T.length[v] == OMEGA:
            below = _fresh(taken, v)
            parent[below] = T.parent[v]
            length[below] = OMEGA
            parent[v] = below
            length[v] = Ordinal.of(1)
    return OrdinalTree(parent, length)


def succ_subtree(T: OrdinalTree) -> OrdinalTree:
    """The suborder of successor-rank points, re-presented.

    Removed points are the root and the omega-tops.  The result is only
    presentable when each removed point has exactly one child edge (otherwise
    the suborder has no root, no meets, or an omega-chain with no top);
    such inputs raise :class:`DomainError`.
    """
    if T.is_empty():
        return OrdinalTree.empty()
    parent: dict[str, Optional[str]] = {}
    length: dict[str, Ordinal] = {}

    def add(v, par, ln):
        parent[v] = par
        if par is not None:
            length[v] = ln

    def keep(v):
        for c in T.children(v):
            if T.length[c] == OMEGA:
                drop(c, v, OMEGA)
            else:
                add(c, v, T.length[c])
                keep(c)

    def drop(u, anchor, into):
        # u is removed; ``anchor`` is the new vertex below the open chain
        # leading to u (None at the root).
        kids = T.children(u)
        if not kids:
            if anchor is None:
                return
            raise DomainError(
                f"successor part ends in an omega-chain with no top below {u!r}"
            )
        if len(kids) > 1:
            raise DomainError(
                f"removed point {u!r} has {len(kids)} children; successor part "
                "is not a rooted Hausdorff tree"
            )
        c = kids[0]
        ln = T.length[c]
        if ln == Ordinal.of(1):
            add(c, anchor, into)
            keep(c)
            return
        add(u, anchor, into)  # u's name is reused for the first point above it
        if ln == OMEGA:
            drop(c, u, OMEGA)
        else:
            add(c, u, Ordinal.of(ln.finite_value() - 1))
            keep(c)

    drop(T.root, None, None)
    return OrdinalTree(parent, length)


def _canonical(T: OrdinalTree):
    """Merge unary non-root vertices below finite edges, then encode."""

    def walk(v):
        items = []
        for c in T.children(v):
            ln = T.length[c]
            while ln != OMEGA and len(T.children(c)) == 1:
                (c,) = T.children(c)
                ln = ord_add(ln, T.length[c])
            items.append((ln.terms, walk(c)))
        return tuple(sorted(items))

    if T.is_empty():
        return None
    return walk(T.root)


def iso_check(T1: OrdinalTree, T2: OrdinalTree) -> bool:
    """Root-preserving order isomorphism test via canonical forms."""
    return _canonical(T1) == _canonical(T2)


def is_successor_point(T: OrdinalTree, p: Point) -> bool:
    return is_successor(rank(T, p))


def immediate_predecessor(T: OrdinalTree, p: Point) -> Optional[Point]:
    """The immediate predecessor of a successor point, else None."""
    if p.pos is not None:
        return Point(p.node, p.pos - 1) if p.pos > 1 else Point(T.parent[p.node])
    par = T.parent[p.node]
    if par is None or T.length[p.node] == OMEGA:
        return None
    n = T.length[p.node].finite_value()
    return Point(p.node, n - 1) if n > 1 else Point(par)
