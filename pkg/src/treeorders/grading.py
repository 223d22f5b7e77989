"""Antichain covers and Q-/R-gradings of well-stratified trees."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .common import DomainError, Point
from .ordinal import embed_q
from .wstree import (
    OrdinalTree,
    immediate_predecessor,
    is_successor_point,
    leq_w,
    rank,
)

GradingW = dict  # Point -> Fraction


@dataclass(frozen=True)
class AntichainCover:
    """``classes[0]`` is the class with index 1."""

    classes: tuple

    def __len__(self):
        return len(self.classes)

    @property
    def carrier(self) -> frozenset:
        return frozenset().union(*self.classes) if self.classes else frozenset()

    def index_of(self) -> dict:
        out: dict[Point, list[int]] = {}
        for n, cls in enumerate(self.classes, start=1):
            for p in cls:
                out.setdefault(p, []).append(n)
        return out


def _lt(T, p, q):
    return p != q and leq_w(T, p, q)


def monotonicity_witness(T: OrdinalTree, g: Mapping[Point, Fraction]) -> Optional[tuple]:
    """A pair ``p < q`` with ``g(p) >= g(q)``, or None."""
    pts = sorted(g, key=Point.sort_key)
    for p in pts:
        T.check(p)
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            if _lt(T, p, q) and g[p] >= g[q]:
                return (p, q)
            if _lt(T, q, p) and g[q] >= g[p]:
                return (q, p)
    return None


def check_monotone(T: OrdinalTree, g: Mapping[Point, Fraction]) -> None:
    w = monotonicity_witness(T, g)
    if w is not None:
        p, q = w
        raise DomainError(f"not strictly monotone: {p} < {q} but {g[p]} >= {g[q]}")


def antichain_witness(T: OrdinalTree, points: Iterable[Point]) -> Optional[tuple]:
    pts = sorted(points, key=Point.sort_key)
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            if leq_w(T, p, q) or leq_w(T, q, p):
                return (p, q)
    return None


def check_cover(T: OrdinalTree, c: AntichainCover) -> None:
    for n, cls in enumerate(c.classes, start=1):
        for p in cls:
            T.check(p)
        w = antichain_witness(T, cls)
        if w is not None:
            raise DomainError(f"class {n} is not an antichain: {w[0]} and {w[1]} comparable")


def cover_from_qgrading(T: OrdinalTree, g: Mapping[Point, Fraction]) -> AntichainCover:
    """Fibres of ``g`` over its distinct values, indexed by ascending value."""
    check_monotone(T, g)
    fibres: dict[Fraction, set] = {}
    for p, v in g.items():
        fibres.setdefault(Fraction(v), set()).add(p)
    cover = AntichainCover(tuple(frozenset(fibres[v]) for v in sorted(fibres)))
    check_cover(T, cover)
    return cover


def rgrading_from_cover(T: OrdinalTree, c: AntichainCover) -> GradingW:
    """``f(x) = sum of 1/n^2 over classes n meeting the down-set of x``."""
    check_cover(T, c)
    index = c.index_of()
    pts = list(index)
    out = {}
    for x in pts:
        hit = set()
        for y in pts:
            if leq_w(T, y, x):
                hit.update(index[y])
        out[x] = sum((Fraction(1, n * n) for n in hit), Fraction(0))
    return out


def simplest_in(lo: Fraction, hi: Fraction) -> Fraction:
    """Minimal-denominator rational in ``(lo, hi]``; the smallest integer
    when the interval holds several.  ``(a, a]`` degenerates to ``a``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError(f"empty interval ({lo}, {hi}]")
    if lo == hi:
        return hi
    return _simplest(lo, False, hi, True)


def _simplest(lo, lo_closed, hi, hi_closed) -> Fraction:
    # hi is None for +infinity.  Continued-fraction descent: the unique
    # minimal-denominator point also has minimal numerator for x > 1.
    n = math.floor(lo)
    cand = n if (lo_closed and lo == n) else n + 1
    if hi is None or cand < hi or (cand == hi and hi_closed):
        return Fraction(cand)
    lo2, hi2 = lo - n, hi - n
    inv_hi = None if lo2 == 0 else 1 / lo2
    y = _simplest(1 / hi2, hi_closed, inv_hi, lo_closed)
    return n + 1 / y


def succ_qgrading_from_r(T: OrdinalTree, f: Mapping[Point, Fraction]) -> GradingW:
    """Pick ``g(x)`` in ``(f(y), f(x)]`` for each successor point ``x`` of the
    carrier, ``y`` its immediate predecessor (which must be in the carrier)."""
    check_monotone(T, f)
    out = {}
    for x in sorted(f, key=Point.sort_key):
        if not is_successor_point(T, x):
            continue
        y = immediate_predecessor(T, x)
        if y not in f:
            raise DomainError(f"immediate predecessor {y} of {x} is not graded")
        out[x] = simplest_in(f[y], f[x])
    return out


def rank_qgrading(T: OrdinalTree, points: Optional[Iterable[Point]] = None) -> GradingW:
    """Rank composed with the embedding of the sorted distinct ranks."""
    pts = list(points) if points is not None else T.points()
    ranks = {p: rank(T, p) for p in pts}
    distinct = sorted(set(ranks.values()))
    image = dict(zip(distinct, embed_q(distinct)))
    return {p: image[r] for p, r in ranks.items()}


def _embed_chain(T: OrdinalTree, chain: list, lo: Fraction, hi: Optional[Fraction]):
    ranks = sorted(rank(T, p) for p in chain)
    imgs = dict(zip(ranks, embed_q(ranks)))
    vmin, vmax = min(imgs.values()), max(imgs.values())
    out = {}
    for p in chain:
        v = imgs[rank(T, p)]
        if hi is None:
            out[p] = lo + 1 + (v - vmin)
        else:
            out[p] = lo + (hi - lo) * (v - vmin + 1) / (vmax - vmin + 2)
    return out


def extend_branch_grading(
    T: OrdinalTree, cover: AntichainCover, points: Optional[Iterable[Point]] = None
) -> GradingW:
    """Grade the branching vertices by ``sum 1/2^n`` over classes below, then
    fit each chain of non-branching points into the jump below its least
    branching upper bound (or above everything when there is none)."""
    branching = {Point(v) for v in T.branching_vertices()}
    if cover.carrier != branching:
        extra = sorted(map(str, cover.carrier - branching))
        missing = sorted(map(str, branching - cover.carrier))
        raise DomainError(f"cover must be the branching vertices; extra={extra} missing={missing}")
    check_cover(T, cover)
    index = cover.index_of()
    f0 = {}
    for x in branching:
        hit = set()
        for y in branching:
            if leq_w(T, y, x):
                hit.update(index[y])
        f0[x] = sum((Fraction(1, 2**n) for n in hit), Fraction(0))

    pts = [p for p in (points if points is not None else T.points()) if p not in branching]
    # class key: the least branching vertex above, or (None, owning leaf-ward
    # chain start) when there is none
    classes: dict[tuple, list] = {}
    for p in pts:
        T.check(p)
        below = [b for b in branching if b != p and leq_w(T, b, p)]
        base = max(below, key=lambda b: f0[b]) if below else None
        above = [b for b in branching if b != p and leq_w(T, p, b)]
        top = min(above, key=lambda b: f0[b]) if above else None
        if top is None:
            # no branching above: the chain is determined by the child edge of
            # ``base`` (or the root) that leads to p
            start = _child_towards(T, base.node if base else None, p)
            key = (base, None, start)
        else:
            key = (base, top, None)
        classes.setdefault(key, []).append(p)

    out = dict(f0)
    for (base, top, _), chain in classes.items():
        lo = f0[base] if base is not None else Fraction(0)
        hi = f0[top] if top is not None else None
        out.update(_embed_chain(T, chain, lo, hi))
    return out


def _child_towards(T: OrdinalTree, v: Optional[str], p: Point) -> Optional[str]:
    if v is None:
        return None
    u = p.node
    if u == v:
        return None
    while T.parent[u] != v:
        u = T.parent[u]
    return u
