"""Road spaces: every successor point of a well-stratified tree becomes a copy
of (0, 1]."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .brto import SegmentTree
from .common import DomainError, Point
from .grading import check_monotone
from .metric import TreeGrading
from .wstree import OrdinalTree


@dataclass(frozen=True)
class RoadResult:
    tree: OrdinalTree
    space: SegmentTree

    def embed(self, p: Point) -> Point:
        """Canonical embedding of a tree point (its copy of 1)."""
        T = self.tree
        T.check(p)
        if p.pos is None:
            return Point(p.node)
        k = int(p.pos)
        if T.edge_is_omega(p.node):
            return Point(p.node, 1 - Fraction(1, 2**k))
        return Point(p.node, Fraction(k))


def road(T: OrdinalTree) -> RoadResult:
    """Finite edges of length ``n`` become closed segments of length ``n``
    (embedded points at parameters ``1..n``); omega-edges become unit
    segments with offset ``k`` at ``1 - 2^-k`` and the limit top at 1."""
    if T.is_empty():
        raise DomainError("the empty tree has no road space")
    edges = []
    for v in T.vertices:
        if T.parent[v] is None:
            continue
        ln = Fraction(1) if T.edge_is_omega(v) else Fraction(T.length[v].finite_value())
        edges.append((v, T.parent[v], ln))
    return RoadResult(T, SegmentTree.build(edges, root=T.root))


def restrict_grading(
    r: RoadResult, grading, points: Optional[Iterable[Point]] = None
) -> dict:
    """``grading`` (a :class:`TreeGrading` or any function of a road-space
    point) composed with the embedding; checked strictly monotone."""
    pts = list(points) if points is not None else r.tree.points()
    if isinstance(grading, TreeGrading):
        value = lambda q: grading.value(r.space, q)  # noqa: E731
    else:
        value = grading
    out = {p: Fraction(value(r.embed(p))) for p in pts}
    check_monotone(r.tree, out)
    return out
