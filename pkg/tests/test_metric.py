import random
from fractions import Fraction

import pytest
from hypothesis import given

from treeorders.brto import SegmentTree, leq
from treeorders.common import DomainError, Point
from treeorders.jumps import JumpFunction, continuize
from treeorders.metric import (
    TreeGrading,
    arc_length_grading,
    check_metric,
    continuity_problems,
    full_continuization,
    railroad,
    railroad_metric,
)
from treeorders.randgen import random_jump_function, random_segtree

from conftest import rng_of, seeds

F = Fraction
Y = SegmentTree.build([("m", "r", 1), ("a", "m", 1), ("b", "m", 2)])


def test_arc_length_examples():
    X = SegmentTree.chain([1, F(3, 2)])
    g = arc_length_grading(X)
    assert g.value(X, Point("v0")) == 0
    assert g.value(X, Point("v2")) == F(5, 2)
    E = SegmentTree.chain([2])
    assert arc_length_grading(E).value(E, Point("v1", F(1, 2))) == F(1, 2)


def test_railroad_examples():
    g = arc_length_grading(Y)
    # l(a) = 2, l(b) = 3, l(a ^ b) = l(m) = 1
    assert railroad_metric(Y, g, Point("a"), Point("b")) == 3
    assert railroad_metric(Y, g, Point("a"), Point("a")) == 0
    p, q = Point("m", F(1, 2)), Point("b", 1)
    assert railroad_metric(Y, g, p, q) == g.value(Y, q) - g.value(Y, p)


def test_railroad_rejects_jumpy_grading():
    g = arc_length_grading(Y)
    edges = dict(g.edges)
    edges["a"] = JumpFunction.from_pieces([(F(1, 2), 1, F(3, 2)), (1, F(5, 2), 3)])
    with pytest.raises(DomainError, match="jumps"):
        railroad_metric(Y, TreeGrading(F(0), edges), Point("a"), Point("b"))


def test_check_metric_detects_perturbation():
    X = random_segtree(random.Random(3), 8, min_vertices=5)
    d = railroad(X, arc_length_grading(X))
    pts = X.points(2)
    bad = {pts[2], pts[5]}

    def skewed(p, q):
        v = d(p, q)
        return v + 1 if {p, q} == bad else v

    assert check_metric(pts, d).ok
    rep = check_metric(pts, skewed)
    assert not rep.ok
    assert {kind for kind, _, _ in rep.failures} & {"triangle", "four-point"}


def test_check_metric_single_point():
    assert check_metric([Point("r")], lambda p, q: 0).ok


def test_continuize_worked_example():
    f = JumpFunction.from_pieces([(F(1, 2), 0, F(1, 2)), (1, F(3, 2), 2)])
    h = continuize(f, 0)
    assert h.is_continuous()
    for t in (F(1, 10), F(1, 4), F(1, 2)):
        assert h(t) == t
    for t in (F(1, 2), F(3, 5), F(9, 10), F(1)):
        assert h(t) == 3 * t - 1


def test_continuize_jump_free_is_identity():
    f = JumpFunction.from_pieces([(F(1, 3), 1, 2), (1, 2, 5)])
    assert continuize(f) == f


def test_continuize_two_quarter_jumps():
    f = JumpFunction.from_pieces(
        [(F(1, 3), 0, F(1, 3)), (F(2, 3), F(1, 3) + F(1, 4), F(2, 3) + F(1, 4)), (1, F(2, 3) + F(1, 2), F(3, 2))]
    )
    assert [x for x, _ in f.jumps()] == [F(1, 3), F(2, 3)]
    h = continuize(f, shift=False)
    assert h.is_continuous()
    ts = [F(1, 6), F(1, 2), F(5, 6)]
    assert all(h(t) <= f(t) for t in ts)
    assert h(ts[0]) < h(ts[1]) < h(ts[2])


def test_continuize_shift():
    f = JumpFunction.from_pieces([(F(1, 2), 3, 4), (1, 6, 7)])
    assert continuize(f, F(-1)).infimum == -1


def _strictly_increasing_at(fn, ts):
    vals = [fn(t) for t in sorted(set(ts))]
    return all(a < b for a, b in zip(vals, vals[1:]))


@given(seeds)
def test_continuize_properties(seed):
    rng = rng_of(seed)
    f = random_jump_function(rng)
    h = continuize(f, shift=False)
    assert h.jumps() == []
    samples = [F(rng.randint(1, 10**4), 10**4) for _ in range(100)]
    assert _strictly_increasing_at(h, samples + list(f.breaks[1:]))
    for t in samples + list(f.breaks[1:]):
        assert h(t) <= f(t)
    target = F(rng.randint(-5, 5), 3)
    assert continuize(f, target).infimum == target


def _jumpy_grading(rng, X):
    """An R-grading with jumps: arc length with random jump functions."""
    edges = {}
    root = F(rng.randint(-2, 2))
    val = {X.root: root}
    for e in X.edges():
        start = val[X.parent[e]] + F(rng.randint(0, 3), 2)
        fn = random_jump_function(rng, 3, start=start)
        edges[e] = fn
        val[e] = fn(1)
    return TreeGrading(root, edges)


def test_full_continuization_of_arc_length_is_identity():
    g = arc_length_grading(Y)
    assert full_continuization(Y, g) == g


def test_full_continuization_is_local():
    g = arc_length_grading(Y)
    edges = dict(g.edges)
    edges["a"] = JumpFunction.from_pieces([(F(1, 2), 1, F(3, 2)), (1, F(5, 2), 3)])
    c = full_continuization(Y, TreeGrading(F(0), edges))
    assert c.edges["b"] == g.edges["b"] and c.edges["m"] == g.edges["m"]
    assert c.edges["a"].is_continuous() and c.edges["a"] != edges["a"]


def test_full_continuization_chain_bijective_on_samples():
    X = SegmentTree.chain([1, 2])
    jumpy = JumpFunction.from_pieces([(F(1, 2), 0, 1), (1, 2, 3)])
    g = TreeGrading(F(0), {"v1": jumpy, "v2": jumpy.shifted(4)})
    c = full_continuization(X, g)
    assert continuity_problems(X, c) == []
    lo, hi = c.value(X, Point("v0")), c.value(X, Point("v2"))
    for k in range(1, 20):
        y = lo + (hi - lo) * F(k, 20)
        hits = []
        for e in ("v1", "v2"):
            fn = c.edges[e]
            if fn.infimum < y <= fn(1):
                hits.append(X.point(e, fn.preimage(y) * X.length[e]))
        assert len(hits) == 1
        assert c.value(X, hits[0]) == y


@given(seeds)
def test_full_continuization_properties(seed):
    rng = rng_of(seed)
    X = random_segtree(rng, 8)
    g = _jumpy_grading(rng, X)
    c = full_continuization(X, g)
    assert continuity_problems(X, c) == []
    for p in X.points(3):
        assert c.value(X, p) <= g.value(X, p)
    assert full_continuization(X, c) == c


@given(seeds)
def test_railroad_metric_is_tree_metric(seed):
    X = random_segtree(rng_of(seed), 6)
    g = arc_length_grading(X)
    d = railroad(X, g)
    pts = X.points(3)
    rep = check_metric(pts, d)
    assert rep.ok, rep.failures[:3]
    root = Point(X.root)
    for p in pts:
        assert g.value(X, p) == d(root, p)


def _point_at_level(X, y, level):
    """The point of [root, y] at arc length ``level`` (0 < level <= l(y))."""
    v = y.node
    top = X.depth_of(v) if y.pos is None else X.depth_of(X.parent[v]) + y.pos
    while X.parent[v] is not None:
        base = X.depth_of(X.parent[v])
        if base < level <= top:
            return X.point(v, level - base)
        v, top = X.parent[v], base
    raise AssertionError("level out of range")


@given(seeds)
def test_arc_length_surjective_on_intervals(seed):
    rng = rng_of(seed)
    X = random_segtree(rng, 6, min_vertices=2)
    g = arc_length_grading(X)
    pts = X.points(3)
    x, y = rng.choice(pts), rng.choice(pts)
    if not leq(X, x, y):
        x, y = Point(X.root), x
    lx, ly = g.value(X, x), g.value(X, y)
    if lx == ly:
        return
    for k in range(1, 8):
        level = lx + (ly - lx) * F(k, 8)
        p = _point_at_level(X, y, level)
        assert leq(X, x, p) and leq(X, p, y) and g.value(X, p) == level
