import random

import pytest
from hypothesis import given, settings, strategies as st

from toricbound import lattice as lat
from toricbound.classgroup import (
    WeilDivisor,
    class_group,
    class_order,
    div_of_monomial,
    divisor_matrix,
    exponent,
    principal_generator,
)
from toricbound.cone import Cone, classify
from toricbound.errors import InputError
from toricbound.families import FamilySpec, build
from toricbound.semigroup import SemigroupRing, product_ring

from oracles import determinantal_invariants, ring_of


def simplicial_full_rings(max_rank=3):
    def gen(d):
        vec = st.lists(st.integers(-3, 3), min_size=d, max_size=d)
        return st.lists(vec, min_size=d, max_size=d)

    def build_ring(rows):
        return SemigroupRing.from_cone(Cone.from_generators(len(rows), rows))

    return st.integers(1, max_rank).flatmap(gen).filter(
        lambda rows: lat.rank(rows) == len(rows)
    ).map(build_ring)


def test_divisor_matrix_examples(H2, V2):
    assert divisor_matrix(H2).tolist() == [[2, 1], [0, 1]]
    assert divisor_matrix(V2).tolist() == [[1, 0], [-1, 2]]
    assert divisor_matrix(ring_of(2, [(1, 0), (0, 1)])).tolist() == [[1, 0], [0, 1]]


@pytest.mark.parametrize("kind, n, D, torsion", [
    ("hypersurface", 3, 2, (2, 2)),
    ("veronese", 3, 3, (3,)),
    ("hypersurface", 4, 3, (3, 3, 3)),
])
def test_class_group_examples(kind, n, D, torsion):
    g = class_group(build(FamilySpec(kind, n, D)))
    assert g.free_rank == 0 and g.torsion == torsion
    assert exponent(g) == D


def test_smooth_orthant_trivial():
    g = class_group(ring_of(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
    assert g.is_trivial and exponent(g) == 1


def test_primorial_scaled():
    g = class_group(build(FamilySpec("primorial", n=3, num_primes=2)))
    assert g.torsion == (6,) and exponent(g) == 6


def test_nonsimplicial_class_group_infinite():
    square = ring_of(3, [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    g = class_group(square)
    assert g.free_rank == 1 and exponent(g) is None
    assert g.to_json()["exponent"] == "infinite"


def test_div_of_monomial(H2, V2):
    assert div_of_monomial(H2, (1, 0)).values == (2, 0)
    assert div_of_monomial(H2, (0, 0)).values == (0, 0)
    assert div_of_monomial(V2, (1, 1)).values == (1, 1)
    assert div_of_monomial(V2, (1, 0)).values == (1, -1)


def test_class_order(H2, V3):
    assert class_order(H2, WeilDivisor.prime(H2, (2, 1))) == 2
    assert class_order(H2, div_of_monomial(H2, (5, -3))) == 1
    assert class_order(V3, WeilDivisor.prime(V3, (1, 0))) == 3
    square = ring_of(3, [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    assert class_order(square, WeilDivisor.prime(square, (1, 0, 1))) is None


def test_principal_generator(H2):
    P = WeilDivisor.prime(H2, (2, 1))
    assert principal_generator(H2, 2 * P) == (1, 0)
    assert principal_generator(H2, P) is None
    assert principal_generator(H2, WeilDivisor(H2.rays, (0, 0))) == (0, 0)
    with pytest.raises(InputError):
        principal_generator(H2, WeilDivisor(H2.rays, (-1, 0)))


def test_weil_divisor_validation(H2):
    with pytest.raises(InputError):
        WeilDivisor.from_mapping(H2, {(1, 1): 1})
    d = WeilDivisor.from_mapping(H2, {(4, 2): 3})
    assert d.coefficient((2, 1)) == 3 and d.coefficient((0, 1)) == 0


def test_presentation(V2):
    p = class_group(V2).presentation()
    assert p["generators"] == ["D[1,0]", "D[-1,2]"]
    assert p["relations"] == ["D[1,0] - D[-1,2] = 0", "2D[-1,2] = 0"]


@pytest.mark.parametrize("kind", ["hypersurface", "veronese"])
@pytest.mark.parametrize("n, D", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
def test_family_class_orders_divide_exponent(kind, n, D):
    R = build(FamilySpec(kind, n, D))
    e = exponent(class_group(R))
    for u in R.rays:
        assert e % class_order(R, WeilDivisor.prime(R, u)) == 0


@settings(max_examples=60, deadline=None)
@given(simplicial_full_rings())
def test_simplicial_groups_finite(R):
    g = class_group(R)
    assert g.free_rank == 0
    assert g.order == abs(R.cone.ray_matrix().det())
    if classify(R.cone).smooth:
        assert g.is_trivial


@settings(max_examples=60, deadline=None)
@given(simplicial_full_rings(), st.integers(0, 10**6))
def test_exactness_in_the_middle(R, seed):
    rng = random.Random(seed)
    vals = tuple(rng.randint(0, 4) for _ in R.rays)
    d = WeilDivisor(R.rays, vals)
    m = principal_generator(R, d)
    assert (class_order(R, d) == 1) == (m is not None)
    if m is not None:
        assert div_of_monomial(R, m) == d


@settings(max_examples=30, deadline=None)
@given(simplicial_full_rings(2), simplicial_full_rings(2))
def test_product_additivity(A, B):
    big = product_ring([A, B])
    blocks = [list(r) + [0] * B.rank for r in A.rays] + [[0] * A.rank + list(r) for r in B.rays]
    expected = [d for d in determinantal_invariants(blocks) if d > 1]
    assert list(class_group(big).torsion) == expected
