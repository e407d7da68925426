import pytest
from hypothesis import given, settings, strategies as st

import oracles
from schreierlab.algebra import Homomorphism, catalog, homomorphisms, identity, product, trivial_algebra, zero_map
from schreierlab.catalog import cyclic, magma_counterexample, magma_counterexample_point
from schreierlab.points import (
    Point,
    PointError,
    PointMorphism,
    enumerate_point_morphisms,
    enumerate_points_over,
    equalizer_points,
    identity_morphism,
    identity_point,
    is_stably_strong,
    is_strong_point,
    point_isomorphism,
    probe_catalog,
    product_points,
    product_projection_point,
    pullback_point,
    terminal_point,
)
from schreierlab.special import diagonal_point


def test_kernels_of_standard_points():
    X = magma_counterexample()
    assert identity_point(X).kernel.members == (0,)
    assert terminal_point(X).kernel.is_whole
    assert magma_counterexample_point().kernel.labels() == ["0"]


def test_point_validation():
    c2 = cyclic(2)
    with pytest.raises(PointError):
        Point(identity(c2), zero_map(c2, c2))
    with pytest.raises(PointError):
        Point(Homomorphism(c2, c2, (1, 0)), identity(c2))


def test_strongness_examples():
    v = is_strong_point(magma_counterexample_point())
    assert not v and v.witness.labels() == ["0", "a"]
    assert is_strong_point(product_projection_point(cyclic(2), cyclic(4)))
    assert is_strong_point(identity_point(magma_counterexample()))


def test_stably_strong_examples():
    mp = magma_counterexample_point()
    v = is_stably_strong(mp, probe_catalog(mp.Y, []))
    assert not v and v.probes_checked == 1 and v.counterexample.g.map == (0, 1)
    ip = identity_point(cyclic(4))
    assert is_stably_strong(ip, probe_catalog(ip.Y, catalog("monoid", 3)))


def test_schreier_point_is_stably_strong_under_small_monoids():
    p = diagonal_point(cyclic(2))
    assert is_stably_strong(p, probe_catalog(p.Y, catalog("monoid", 3)))


def test_pullback_examples():
    p = diagonal_point(cyclic(2))
    pb = pullback_point(p, identity(p.Y))
    assert point_isomorphism(pb.point, p) is not None
    T = trivial_algebra(p.Y.signature)
    pb0 = pullback_point(p, zero_map(T, p.Y))
    assert pb0.point.Y.size == 1 and pb0.point.kernel.is_whole
    assert pb0.point.X.size == p.K.size


def test_product_examples():
    c2, c4 = cyclic(2), cyclic(4)
    pp = product_points(identity_point(c2), identity_point(c4))
    assert point_isomorphism(pp, identity_point(pp.X)) is not None
    tp = product_points(terminal_point(c4), identity_point(c2))
    assert point_isomorphism(tp, product_projection_point(c4, c2)) is not None
    d = product_points(diagonal_point(c2), diagonal_point(c2))
    assert d.Y.size == 4 and d.K.size == 4


def test_equalizer_examples():
    p = diagonal_point(cyclic(2))
    m = identity_morphism(p)
    eq = equalizer_points(m, m)
    assert eq.E.is_whole and eq.W.is_whole
    assert point_isomorphism(eq.point, p) is not None


def test_equalizer_of_swap_on_kernel_factor():
    c2 = cyclic(2)
    p = product_projection_point(c2, c2)
    P = product(c2, c2)
    ms = enumerate_point_morphisms(p, p)
    # endomorphisms fixing the base: the identity and the one that adds the base to the kernel factor
    over_id = [m for m in ms if m.h.map == (0, 1)]
    assert len(over_id) == 2
    m1, m2 = over_id
    eq = equalizer_points(m1, m2)
    expected = [x for x in P.algebra.elements if m1.g(x) == m2.g(x)]
    assert list(eq.E.members) == expected
    assert eq.point.Y.size == 2


def test_enumerate_points_examples():
    c2 = cyclic(2)
    T = trivial_algebra(c2.signature)
    for X in catalog("monoid", 3):
        pts = list(enumerate_points_over(T, [X]))
        assert len(pts) == 1 and pts[0].kernel.is_whole
    assert len(list(enumerate_points_over(c2, [c2]))) == 1
    magma_pts = list(enumerate_points_over(c2, [magma_counterexample()]))
    sections = sorted(magma_counterexample().label(p.s(1)) for p in magma_pts)
    assert sections == ["a", "b"]


def test_point_enumeration_matches_brute_force():
    algs = catalog("monoid", 3)
    for Y in algs:
        for X in algs:
            got = sorted((p.f.map, p.s.map) for p in enumerate_points_over(Y, [X]))
            fs = oracles.all_homs(X, Y)
            ss = oracles.all_homs(Y, X)
            want = sorted((f, s) for f in fs for s in ss if all(f[s[y]] == y for y in range(Y.size)))
            assert got == want


def test_point_morphism_squares():
    c2 = cyclic(2)
    ip, dp = identity_point(c2), diagonal_point(c2)
    P = product(c2, c2)
    g = P.pair(identity(c2), identity(c2))
    m = PointMorphism(ip, dp, Homomorphism(c2, P.algebra, g.map), identity(c2))
    assert m.induced_kernel_map.map == (0,)
    with pytest.raises(PointError):
        PointMorphism(ip, dp, Homomorphism(c2, P.algebra, (0, 1)), identity(c2))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_pullback_functoriality(data):
    monoids = catalog("monoid", 3)
    pts = [p for p in _points3() if p.Y.size > 1]
    p = data.draw(st.sampled_from(pts))
    Z = data.draw(st.sampled_from(monoids))
    W = data.draw(st.sampled_from(monoids))
    g = data.draw(st.sampled_from(homomorphisms(Z, p.Y)))
    g2 = data.draw(st.sampled_from(homomorphisms(W, Z)))
    once = pullback_point(p, g.after(g2))
    twice = pullback_point(pullback_point(p, g).point, g2)
    assert once.point.X.size == twice.point.X.size
    assert point_isomorphism(once.point, twice.point) is not None
    # comparison morphisms are valid point morphisms
    for pb in (once, twice):
        assert isinstance(pb.comparison, PointMorphism)


_CACHE = {}


def _points3():
    if "p" not in _CACHE:
        from schreierlab.sweep import all_points
        _CACHE["p"] = all_points(catalog("monoid", 3))
    return _CACHE["p"]


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_points_satisfy_split_laws(data):
    p = data.draw(st.sampled_from(_points3()))
    assert all(p.f(p.s(y)) == y for y in p.Y.elements)
    assert all(p.f(p.k(a)) == p.Y.zero for a in p.K.elements)
    assert bool(is_strong_point(p)) == oracles.strong(p)
