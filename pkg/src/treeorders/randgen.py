"""Seeded random instances for tests, experiments and the sampled CLI checks."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .brto import CLOSED, OPEN, Region, SegmentTree, lt
from .common import Point
from .jumps import JumpFunction
from .wstree import OrdinalTree


def _shape(rng: random.Random, n: int) -> list[tuple[int, int]]:
    """Random recursive tree on ``n`` vertices as ``(child, parent)`` pairs."""
    return [(i, rng.randrange(i)) for i in range(1, n)]


def random_ordinal_tree(
    rng: random.Random, max_vertices: int = 30, lengths=(1, 2, 3, "w"), min_vertices: int = 1
) -> OrdinalTree:
    n = rng.randint(min_vertices, max_vertices)
    names = [f"n{i}" for i in range(n)]
    edges = [(names[c], names[p], rng.choice(lengths)) for c, p in _shape(rng, n)]
    return OrdinalTree.build(edges, root=names[0])


_LENGTHS = [Fraction(k, d) for d in (1, 2, 3, 4) for k in range(1, 2 * d + 1)]


def random_segtree(
    rng: random.Random,
    max_vertices: int = 12,
    open_prob: float = 0.3,
    min_vertices: int = 1,
) -> SegmentTree:
    n = rng.randint(min_vertices, max_vertices)
    names = [f"n{i}" for i in range(n)]
    pairs = _shape(rng, n)
    has_kids = {p for _, p in pairs}
    edges = []
    for c, p in pairs:
        top = OPEN if c not in has_kids and rng.random() < open_prob else CLOSED
        edges.append((names[c], names[p], rng.choice(_LENGTHS), top))
    return SegmentTree.build(edges, root=names[0])


def _rq(rng: random.Random, lo: int = 1, hi: int = 8, den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_jump_function(rng: random.Random, max_jumps: int = 6, start=None) -> JumpFunction:
    """Strictly increasing, piecewise affine, with up to ``max_jumps``
    interior jumps of positive rational size; knot values sit anywhere
    between the two one-sided limits."""
    k = rng.randint(0, max_jumps)
    cuts = set()
    while len(cuts) < k:
        cuts.add(Fraction(rng.randint(1, 23), 24))
    breaks = [Fraction(0)] + sorted(cuts) + [Fraction(1)]
    lows, highs, values = [], [], []
    y = Fraction(start) if start is not None else Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    for i in range(len(breaks) - 1):
        lo = y
        hi = lo + _rq(rng)
        lows.append(lo)
        highs.append(hi)
        if i + 1 < len(breaks) - 1:
            jump = _rq(rng, 1, 6, 5)
            values.append(hi + jump * rng.choice((0, Fraction(1, 2), 1)))
            y = hi + jump
        else:
            values.append(hi + (_rq(rng, 1, 3, 3) if rng.random() < 0.2 else 0))
    return JumpFunction(tuple(breaks), tuple(lows), tuple(highs), tuple(values))


def random_word(rng: random.Random, max_len: int = 6, alphabet: int = 12) -> tuple:
    n = rng.randint(0, min(max_len, alphabet))
    return tuple(rng.sample(range(alphabet), n))


def random_family(
    rng: random.Random, max_k: int = 20, max_len: int = 6, alphabet: int = 12, max_size: int = 6
) -> list[frozenset]:
    fam = []
    for _ in range(rng.randint(0, max_k)):
        words = set()
        for _ in range(rng.randint(0, max_size)):
            w = random_word(rng, max_len, alphabet)
            # bias towards extensions of short prefixes so preferences can fire
            if rng.random() < 0.5 and fam and fam[-1]:
                base = rng.choice(sorted(fam[-1]))
                free = [x for x in range(alphabet) if x not in base]
                ext = rng.sample(free, min(len(free), rng.randint(1, 2)))
                w = (base + tuple(ext))[:max_len]
            words.add(w)
        fam.append(frozenset(words))
    return fam


def random_qgrading(rng: random.Random, T: OrdinalTree, omega_depth: int = 2) -> dict:
    """A strictly monotone Q-valued map on ``T.points(omega_depth)``; steps are
    drawn from a small set so fibres often contain several points."""
    steps = [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]
    out: dict[Point, Fraction] = {}
    for v in T.dfs():
        par = T.parent[v]
        if par is None:
            out[Point(v)] = Fraction(rng.randint(-2, 2))
            continue
        y = out[Point(par)]
        ln = T.length[v]
        top = omega_depth + 1 if T.edge_is_omega(v) else ln.finite_value()
        for k in range(1, top):
            y += rng.choice(steps)
            out[Point(v, k)] = y
        y += rng.choice(steps)
        out[Point(v)] = y
    return out


def random_region(rng: random.Random, X: SegmentTree) -> Region:
    """Random vertices of ``X`` plus lower half-intervals on random edges."""
    verts = frozenset(v for v in X.vertices if rng.random() < 0.5)
    ivs = [
        (e, Fraction(0), X.length[e] / 2, rng.random() < 0.5, rng.random() < 0.5)
        for e in X.edges()
        if rng.random() < 0.5
    ]
    return Region(verts, tuple(sorted(ivs)))


def sample_comparable_pairs(
    rng: random.Random, X: SegmentTree, count: int, pool: Optional[list] = None
) -> list[tuple]:
    """``count`` random pairs ``p < q`` drawn from ``pool`` (default: the
    three-per-edge grid)."""
    pts = pool if pool is not None else X.points(per_edge=3)
    pairs = [(p, q) for p in pts for q in pts if lt(X, p, q)]
    if not pairs:
        return []
    return [rng.choice(pairs) for _ in range(count)]
