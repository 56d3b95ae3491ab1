import pytest
from hypothesis import assume, given, settings, strategies as st

from toricbound import lattice as lat
from toricbound.cone import (
    Cone,
    ConeType,
    classify,
    dual_cone,
    dual_face_dim,
    face_from_rays,
    faces,
    product_cone,
    reduce_to_full,
)
from toricbound.errors import InputError, UnsupportedInputError

SIGMA = Cone.from_generators(2, [(2, 1), (0, 1)])
ETA = Cone.from_generators(2, [(1, 0), (-1, 2)])


def vectors(rank, lo=-3, hi=3):
    return st.lists(st.integers(lo, hi), min_size=rank, max_size=rank).filter(any)


def cones(max_rank=4, max_gens=6):
    return st.integers(1, max_rank).flatmap(
        lambda d: st.tuples(st.just(d), st.lists(vectors(d), min_size=1, max_size=max_gens))
    ).map(lambda t: Cone.from_generators(*t))


def full_pointed_cones(max_rank=3):
    return cones(max_rank).filter(lambda c: classify(c).full and classify(c).pointed)


def simplicial_cones(max_rank=4):
    def build(t):
        d, gens = t
        idx = lat.independent_subset(gens)
        return Cone.from_generators(d, [gens[i] for i in idx])
    return st.integers(1, max_rank).flatmap(
        lambda d: st.tuples(st.just(d), st.lists(vectors(d), min_size=1, max_size=d))
    ).map(build)


@pytest.mark.parametrize("c, expected", [
    (SIGMA, {(1, 0), (-1, 2)}),
    (Cone.from_generators(2, [(1, 0), (0, 1)]), {(1, 0), (0, 1)}),
    (ETA, {(2, 1), (0, 1)}),
])
def test_dual_examples(c, expected):
    d = dual_cone(c)
    assert set(d.rays) == expected
    for w in d.rays:
        assert all(lat.dot(w, u) >= 0 for u in c.rays)
    assert dual_cone(d).rays == c.rays


def test_classify_examples():
    t = classify(SIGMA)
    assert (t.pointed, t.full, t.simplicial, t.smooth) == (True, True, True, False)
    assert SIGMA.ray_matrix().det() in (2, -2)
    orth = Cone.from_generators(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert classify(orth) == ConeType(True, True, True, True)
    assert not classify(Cone.from_generators(2, [(1, 0), (-1, 0)])).pointed


def test_rays_are_canonicalized():
    c = Cone.from_generators(2, [(4, 2), (0, 3), (2, 1)])
    assert c.rays == ((2, 1), (0, 1))


def test_faces_examples():
    fs = faces(SIGMA)
    assert [f.ray_subset for f in fs] == [(), ((2, 1),), ((0, 1),), ((2, 1), (0, 1))]
    assert fs[-1].v_F == (2, 2)
    assert len(faces(Cone.from_generators(2, []))) == 1
    assert len(faces(product_cone([SIGMA, SIGMA]))) == 16


def test_faces_of_nonpointed_rejected():
    with pytest.raises(UnsupportedInputError):
        faces(Cone.from_generators(2, [(1, 0), (-1, 0), (0, 1)]))


def test_face_from_rays_rejects_non_faces():
    square = Cone.from_generators(3, [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    assert len(faces(square)) == 10
    with pytest.raises(InputError):
        face_from_rays(square, [(1, 0, 1), (-1, 0, 1)])
    with pytest.raises(InputError):
        face_from_rays(square, [(5, 5, 5)])


@pytest.mark.parametrize("rays, expected", [
    ([(2, 1), (0, 1)], 0),
    ([], 2),
    ([(2, 1)], 1),
])
def test_dual_face_dim(rays, expected):
    assert dual_face_dim(SIGMA, face_from_rays(SIGMA, rays)) == expected


def test_dual_face_dim_foreign_face():
    other = face_from_rays(ETA, [(1, 0)])
    with pytest.raises(InputError):
        dual_face_dim(SIGMA, other)


def test_product_examples():
    p = product_cone([SIGMA, SIGMA])
    assert set(p.rays) == {(2, 1, 0, 0), (0, 1, 0, 0), (0, 0, 2, 1), (0, 0, 0, 1)}
    assert set(dual_cone(p).rays) == {(1, 0, 0, 0), (-1, 2, 0, 0), (0, 0, 1, 0), (0, 0, -1, 2)}
    with_zero = product_cone([SIGMA, Cone.from_generators(1, [])])
    assert with_zero.rays == ((2, 1, 0), (0, 1, 0)) and not classify(with_zero).full
    o = Cone.from_generators(1, [(1,)])
    assert product_cone([o, o]).rays == ((1, 0), (0, 1))


def test_reduce_to_full_examples():
    small, laurent, E = reduce_to_full(Cone.from_generators(3, [(2, 1, 0), (0, 1, 0)]))
    assert laurent == 1 and small == SIGMA
    assert reduce_to_full(SIGMA)[:2] == (SIGMA, 0)
    z, laurent, _ = reduce_to_full(Cone.from_generators(2, []))
    assert z.ambient_rank == 0 and laurent == 2


def test_nonsimplicial_face_lattice():
    pent = Cone.from_generators(3, [(1, 0, 1), (0, 1, 1), (-1, 1, 1), (-1, -1, 1), (1, -1, 1)])
    fs = faces(pent)
    assert len(fs) == 1 + 5 + 5 + 1
    assert not classify(pent).simplicial


@settings(max_examples=60, deadline=None)
@given(full_pointed_cones())
def test_dual_of_dual(c):
    d = dual_cone(c)
    assert classify(d).full and classify(d).pointed
    assert dual_cone(d).rays == c.rays


@settings(max_examples=60, deadline=None)
@given(cones())
def test_rays_satisfy_facets(c):
    for u in c.rays:
        assert all(lat.dot(f, u) >= 0 for f in c.facets)
        assert all(lat.dot(e, u) == 0 for e in c.equations)
    assert Cone.from_generators(c.ambient_rank, c.rays).rays == c.rays


@settings(max_examples=60, deadline=None)
@given(simplicial_cones())
def test_simplicial_face_count(c):
    assert len(faces(c)) == 2 ** len(c.rays)


@settings(max_examples=50, deadline=None)
@given(cones(3))
def test_face_witnesses(c):
    assume(classify(c).pointed)
    for f in faces(c):
        # witness lies in the dual, vanishes exactly on the face
        zero = {u for u in c.rays if lat.dot(f.witness, u) == 0}
        assert zero == set(f.ray_subset)
        assert all(lat.dot(f.witness, u) >= 0 for u in c.rays)
        assert f.dim == lat.rank(f.ray_subset)
        if classify(c).full:
            assert dual_face_dim(c, f) == c.ambient_rank - f.dim


@settings(max_examples=40, deadline=None)
@given(full_pointed_cones(2), full_pointed_cones(2))
def test_product_duality(a, b):
    lhs = dual_cone(product_cone([a, b]))
    rhs = product_cone([dual_cone(a), dual_cone(b)])
    assert lhs.rays == rhs.rays


@settings(max_examples=50, deadline=None)
@given(cones(4))
def test_reduce_to_full_properties(c):
    assume(classify(c).pointed)
    small, laurent, E = reduce_to_full(c)
    assert laurent == c.ambient_rank - c.dim
    assert small.ambient_rank == c.dim
    if c.dim:
        t = classify(small)
        assert t.full and t.pointed
        # embedding is injective with saturated image
        assert all(d == 1 for d in lat.smith_normal_form(E).invariant_factors)
        images = {E.apply(u) for u in small.rays}
        assert images == set(c.rays)
