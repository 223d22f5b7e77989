from fractions import Fraction

import pytest
from hypothesis import given

from treeorders.brto import leq, meet_s, validate
from treeorders.common import DomainError, Point
from treeorders.metric import arc_length_grading
from treeorders.randgen import random_ordinal_tree
from treeorders.roadspace import restrict_grading, road
from treeorders.wstree import OrdinalTree, leq_w, meet_w

from conftest import rng_of, seeds

F = Fraction


def test_road_single_vertex():
    r = road(OrdinalTree.build([], root="r"))
    assert r.space.vertices == ["r"]
    assert r.embed(Point("r")) == Point("r")


def test_road_chain_2():
    r = road(OrdinalTree.chain([2]))
    assert r.space.length == {"v1": 2}
    assert r.embed(Point("v1", 1)) == Point("v1", 1)
    assert r.embed(Point("v1")) == Point("v1")


def test_road_omega_chain():
    r = road(OrdinalTree.chain(["w"]))
    assert r.space.length == {"v1": 1}
    for k in (1, 2, 5):
        assert r.embed(Point("v1", k)) == Point("v1", 1 - F(1, 2**k))
    assert r.embed(Point("v1")) == Point("v1")


def test_restrict_examples():
    r = road(OrdinalTree.chain([2]))
    g = restrict_grading(r, arc_length_grading(r.space))
    assert [g[Point("v1", 1)], g[Point("v1")]] == [1, 2]
    r = road(OrdinalTree.chain(["w"]))
    g = restrict_grading(r, arc_length_grading(r.space), [Point("v1", k) for k in (1, 2, 3)] + [Point("v1")])
    assert [g[Point("v1", k)] for k in (1, 2, 3)] == [F(1, 2), F(3, 4), F(7, 8)]
    assert g[Point("v1")] == 1


def test_restrict_rejects_constant():
    r = road(OrdinalTree.chain([2]))
    with pytest.raises(DomainError, match="monotone"):
        restrict_grading(r, lambda p: F(0))


@given(seeds)
def test_road_is_valid_and_embeds_order_and_meets(seed):
    rng = rng_of(seed)
    T = random_ordinal_tree(rng, 12)
    r = road(T)
    X = r.space
    assert validate(X) == []
    pts = T.points()
    for _ in range(40):
        p, q = rng.choice(pts), rng.choice(pts)
        assert leq_w(T, p, q) == leq(X, r.embed(p), r.embed(q))
        assert r.embed(meet_w(T, p, q)) == meet_s(X, r.embed(p), r.embed(q))
    restrict_grading(r, arc_length_grading(X))
