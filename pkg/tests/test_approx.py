from fractions import Fraction
from itertools import islice

import pytest
from hypothesis import given, settings

from treeorders.approx import (
    FiniteSubtree,
    branch_decomposition,
    branching_injection,
    breakpoint_count,
    breakpoint_stage,
    check_density,
    combine_gradings,
    depth_grading,
    first_rationals,
    is_well_stratified,
    rational_index,
    rationals01,
    subtree_Tn,
)
from treeorders.brto import OPEN, SegmentTree, branching_nodes, lt
from treeorders.common import DomainError, Point
from treeorders.randgen import random_segtree, sample_comparable_pairs

from conftest import rng_of, seeds

F = Fraction
Y = SegmentTree.build([("m", "r", 1), ("a", "m", 1), ("b", "m", 2)])
EDGE = SegmentTree.chain([1])


def test_rational_enumeration():
    assert first_rationals(6) == [0, 1, F(1, 2), F(1, 3), F(2, 3), F(1, 4), F(3, 4)]
    assert first_rationals(8)[7:] == [F(1, 5), F(2, 5)]
    for k, q in enumerate(islice(rationals01(), 200)):
        assert rational_index(q) == k


def test_decomposition_single_edge():
    d = branch_decomposition(EDGE)
    (b,) = d.branches
    assert b.base is None and b.edges == ("v1",)
    assert b.interval == (0, 1, True, True)
    assert d.chart(Point("v0")) == 0 and d.chart(Point("v1", F(1, 4))) == F(1, 4)


def test_decomposition_y_tree():
    d = branch_decomposition(Y)
    b0, b1 = d.branches
    assert b0.edges == ("m", "a") and b0.interval == (0, 1, True, True)
    assert b1.edges == ("b",) and b1.base == "m" and b1.interval == (0, 1, False, True)
    assert d.chart(Point("b", 1)) == F(1, 2)
    assert d.chart_inverse(1, F(1, 2)) == Point("b", 1)
    with pytest.raises(DomainError):
        d.chart_inverse(1, 0)


def test_decomposition_open_top():
    X = SegmentTree.chain([2], top_last=OPEN)
    (b,) = branch_decomposition(X).branches
    assert b.interval == (0, 1, True, False)


def test_decomposition_single_vertex():
    d = branch_decomposition(SegmentTree.build([], root="r"))
    (b,) = d.branches
    assert b.interval == (1, 1, True, True)
    assert d.chart(Point("r")) == 1
    assert subtree_Tn(d, 5).points == (Point("r"),)


def test_subtree_single_edge():
    d = branch_decomposition(EDGE)
    assert subtree_Tn(d, 0).points == (Point("v0"),)
    T2 = subtree_Tn(d, 2)
    assert set(T2.points) == {Point("v0"), Point("v1"), Point("v1", F(1, 2))}
    assert T2.parent[Point("v1")] == Point("v1", F(1, 2))


def test_density_examples():
    d = branch_decomposition(EDGE)
    p, q = Point("v1", F(1, 4)), Point("v1", F(3, 4))
    assert check_density(d, 2, [(p, q)]) == [(2, Point("v1", F(1, 2)))]
    assert check_density(d, 1, [(p, q)]) == [None]
    # a pair separated by a vertex is witnessed by it once the vertex appears
    C = SegmentTree.chain([1, 1])
    dc = branch_decomposition(C)
    assert check_density(dc, 4, [(Point("v1", F(1, 2)), Point("v2", F(1, 2)))]) == [(2, Point("v1"))]


def test_density_rejects_non_pairs():
    d = branch_decomposition(EDGE)
    p = Point("v1", F(1, 2))
    with pytest.raises(DomainError):
        check_density(d, 3, [(p, p)])


def test_combine_root_only():
    d = branch_decomposition(EDGE)
    T0 = subtree_Tn(d, 0)
    f = combine_gradings(EDGE, [(T0, {Point("v0"): F(0)})], 0)
    assert f(Point("v0")) == 0
    assert f(Point("v1", F(1, 2))) == 0


def test_combine_single_edge_strict_across_midpoint():
    d = branch_decomposition(EDGE)
    stages = [(subtree_Tn(d, k), depth_grading(EDGE, subtree_Tn(d, k))) for k in range(3)]
    f = combine_gradings(EDGE, stages, 2)
    p, q = Point("v1", F(1, 4)), Point("v1", F(3, 4))
    assert f(p) < f(Point("v1", F(1, 2))) <= f(q)
    assert f(p) < f(q)


def test_combine_rejects_bad_stage():
    d = branch_decomposition(EDGE)
    T2 = subtree_Tn(d, 2)
    f2 = depth_grading(EDGE, T2)
    f2[Point("v1", F(1, 2))] = F(0)
    stages = [(subtree_Tn(d, k), depth_grading(EDGE, subtree_Tn(d, k))) for k in range(2)]
    with pytest.raises(DomainError, match="not monotone"):
        combine_gradings(EDGE, stages + [(T2, f2)], 2)
    f2[Point("v1", F(1, 2))] = F(1)
    with pytest.raises(DomainError, match="outside"):
        combine_gradings(EDGE, stages + [(T2, f2)], 2)


def test_injection_examples():
    verts = [Point(v) for v in Y.vertices]
    assert branching_injection(Y, verts) == {Point("m"): Point("m")}
    assert branching_injection(EDGE, [Point("v0"), Point("v1")]) == {}
    deep = [Point("r"), Point("a", F(1, 2)), Point("b", 1)]
    assert branching_injection(Y, deep) == {Point("r"): Point("m")}


def test_injection_rejects_non_subtree():
    with pytest.raises(DomainError, match="least"):
        branching_injection(Y, [Point("a"), Point("b")])


@given(seeds)
def test_subtrees_well_stratified_and_cumulative(seed):
    X = random_segtree(rng_of(seed), 8)
    d = branch_decomposition(X)
    prev = set()
    for n in range(10):
        T = subtree_Tn(d, n)
        assert Point(X.root) in T
        assert is_well_stratified(T)
        assert prev <= set(T.points)
        prev = set(T.points)


@given(seeds)
def test_breakpoint_stage_covers_vertices(seed):
    X = random_segtree(rng_of(seed), 8)
    d = branch_decomposition(X)
    T = subtree_Tn(d, breakpoint_stage(d))
    for v in X.vertices:
        if X.contains(Point(v)):
            assert Point(v) in T


@settings(max_examples=25)
@given(seeds)
def test_density_witness_is_least(seed):
    rng = rng_of(seed)
    X = random_segtree(rng, 6)
    d = branch_decomposition(X)
    N = breakpoint_count(d) + 3
    pairs = sample_comparable_pairs(rng, X, 10)
    subtrees = [set(subtree_Tn(d, n).points) for n in range(N + 1)]
    for (p, q), hit in zip(pairs, check_density(d, N, pairs)):
        between = [n for n in range(N + 1) if any(lt(X, p, z) and lt(X, z, q) for z in subtrees[n])]
        if hit is None:
            assert between == []
        else:
            n, z = hit
            assert n == between[0] and z in subtrees[n] and lt(X, p, z) and lt(X, z, q)


@settings(max_examples=25)
@given(seeds)
def test_combined_grading_strict_on_witnessed_pairs(seed):
    rng = rng_of(seed)
    X = random_segtree(rng, 6)
    d = branch_decomposition(X)
    N = breakpoint_count(d) + 3
    stages = [(subtree_Tn(d, k), depth_grading(X, subtree_Tn(d, k))) for k in range(N + 1)]
    f = combine_gradings(X, stages, N)
    pairs = sample_comparable_pairs(rng, X, 15)
    for (p, q), hit in zip(pairs, check_density(d, N, pairs)):
        assert f(p) <= f(q)
        if hit is not None:
            assert f(p) < f(q)


@given(seeds)
def test_injection_injective(seed):
    rng = rng_of(seed)
    X = random_segtree(rng, 10)
    d = branch_decomposition(X)
    T = subtree_Tn(d, rng.randint(0, 12))
    s = branching_injection(X, T.points)
    assert len(set(s.values())) == len(s)
    assert set(s.values()) <= set(branching_nodes(X))
    # random subsets containing the root are subtrees too
    pts = [Point(X.root)] + [p for p in X.points(2) if rng.random() < 0.4]
    s = branching_injection(X, pts)
    assert len(set(s.values())) == len(s)


def test_finite_subtree_parents():
    T = FiniteSubtree.from_points(Y, [Point("r"), Point("m", F(1, 2)), Point("a"), Point("b", 1)])
    assert T.parent[Point("a")] == Point("m", F(1, 2))
    assert T.parent[Point("b", 1)] == Point("m", F(1, 2))
    assert T.root == Point("r")
