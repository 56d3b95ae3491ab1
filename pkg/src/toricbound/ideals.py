"""Monomial ideals of a toric ring, at the lattice level.

Membership questions all reduce to the same integer problem: pick a multiset
of generators whose pairings with a set of rays stay under the pairings of the
target point.  :class:`_MultisetSearch` solves that by depth-first search with
budget pruning and memoization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import lattice as lat
from .cone import FaceDescriptor, face_from_rays, faces, is_face
from .errors import InputError
from .lattice import Vector
from .semigroup import SemigroupRing, contains, degree, enumerate_points


@dataclass(frozen=True)
class MonomialIdeal:
    ring: SemigroupRing
    generators: tuple[Vector, ...]

    def __post_init__(self):
        for g in self.generators:
            if not any(g):
                raise InputError("the unit monomial cannot be a generator")
            if not contains(self.ring, g):
                raise InputError(f"generator {g} is not in the semigroup")

    def __contains__(self, m) -> bool:
        return power_membership(self, 1, m)


def monomial_ideal(ring: SemigroupRing, generators: Iterable[Sequence[int]]) -> MonomialIdeal:
    """Ideal generated by the given points, reduced to its minimal generators."""
    gens = {lat.vec(g) for g in generators}
    minimal = [
        g for g in gens
        if not any(h != g and contains(ring, lat.sub(g, h)) for h in gens)
    ]
    return MonomialIdeal(ring, tuple(sorted(minimal, reverse=True)))


@dataclass(frozen=True)
class MonomialPrime:
    base: MonomialIdeal
    face: FaceDescriptor
    v_F: Vector
    height: int

    @property
    def ring(self) -> SemigroupRing:
        return self.base.ring

    @property
    def generators(self) -> tuple[Vector, ...]:
        return self.base.generators

    @property
    def face_rays(self) -> tuple[Vector, ...]:
        return self.face.ray_subset

    def complement(self) -> tuple[Vector, ...]:
        """Hilbert basis elements outside the prime."""
        return tuple(h for h in self.ring.hilbert_basis if lat.dot(h, self.v_F) == 0)


def prime_from_face(s: SemigroupRing, f: FaceDescriptor) -> MonomialPrime:
    """The monomial prime of a nonzero face: Hilbert elements pairing positively with v_F."""
    if f.is_zero:
        raise InputError("the zero face gives the zero ideal, not a monomial prime")
    if not is_face(s.cone, f):
        raise InputError(f"{f.ray_subset} is not a face of {s.cone}")
    gens = tuple(h for h in s.hilbert_basis if lat.dot(h, f.v_F) > 0)
    return MonomialPrime(MonomialIdeal(s, gens), f, f.v_F, f.dim)


def prime_from_rays(s: SemigroupRing, rays: Iterable[Sequence[int]]) -> MonomialPrime:
    return prime_from_face(s, face_from_rays(s.cone, rays))


def monomial_primes(s: SemigroupRing, *, maximal: bool = True) -> list[MonomialPrime]:
    """All nonzero monomial primes, ordered by height then face."""
    out = []
    for f in faces(s.cone):
        if f.is_zero or (not maximal and f.dim == s.rank):
            continue
        out.append(prime_from_face(s, f))
    return out


def minkowski_decomposition(p: MonomialPrime) -> list[MonomialPrime]:
    """Height-one primes of the rays of ``p.face``; their ideal sum is ``p``."""
    parts = [prime_from_rays(p.ring, [u]) for u in p.face_rays]
    union = monomial_ideal(p.ring, (g for q in parts for g in q.generators))
    if union.generators != p.generators:
        raise AssertionError("ray primes do not sum to the face prime")
    return parts


def expand_to_product(p: MonomialPrime, big: SemigroupRing, i: int) -> MonomialPrime:
    """Extension of a prime of tensor factor ``i`` to the product ring."""
    if not big.factors or i >= len(big.factors) or big.factors[i].cone != p.ring.cone:
        raise InputError(f"ring of {p.face_rays} is not factor {i} of the product")
    off = big.offsets[i]
    rays = [lat.embed(u, off, big.rank) for u in p.face_rays]
    q = prime_from_face(big, face_from_rays(big.cone, rays))
    embedded = sorted((lat.embed(g, off, big.rank) for g in p.generators), reverse=True)
    if list(q.generators) != embedded:
        raise AssertionError("expanded prime is not generated by the embedded generators")
    return q


def sum_of_expansions(big: SemigroupRing, primes: Sequence[MonomialPrime | None]) -> MonomialPrime:
    """The prime ``sum_i P_i R`` of the product ring (``None`` for a zero summand)."""
    if len(primes) != len(big.factors):
        raise InputError("need one (possibly None) prime per tensor factor")
    rays = []
    for i, p in enumerate(primes):
        if p is not None:
            rays.extend(expand_to_product(p, big, i).face_rays)
    if not rays:
        raise InputError("all summands are zero")
    return prime_from_rays(big, rays)


def factor_primes(Q: MonomialPrime) -> list[MonomialPrime | None]:
    """Split a prime of a product ring into its factor primes (None for zero blocks)."""
    big = Q.ring
    if not big.factors:
        raise InputError("prime does not live in a tensor product ring")
    out: list[MonomialPrime | None] = []
    for i, R in enumerate(big.factors):
        block = [big.block(u, i) for u in Q.face_rays]
        block = [b for b in block if any(b)]
        out.append(prime_from_rays(R, block) if block else None)
    return out


class _MultisetSearch:
    """Can we pick ``counts[g]`` cost vectors (with repetition) from each group so
    that the total stays componentwise below a budget?"""

    def __init__(self, groups: Sequence[Sequence[Vector]]):
        self.groups = [self._reduce(costs) for costs in groups]
        width = len(self.groups[0][0]) if self.groups and self.groups[0] else 0
        self.mins = [
            tuple(min(c[j] for c in costs) for j in range(width)) if costs else None
            for costs in self.groups
        ]
        self.memo: dict = {}

    @staticmethod
    def _reduce(costs: Sequence[Vector]) -> list[Vector]:
        uniq = set(costs)
        kept = [
            c for c in uniq
            if not any(d != c and all(x >= y for x, y in zip(c, d)) for d in uniq)
        ]
        # largest total first: finds witnesses quickly in sharpness searches
        return sorted(kept, key=lambda c: (-sum(c), c))

    def fits(self, budget: Vector, counts: Sequence[int]) -> bool:
        counts = tuple(counts)
        if any(k > 0 and not self.groups[g] for g, k in enumerate(counts)):
            return False
        return self._go(0, 0, counts[0] if counts else 0, budget, counts)

    def _go(self, g: int, start: int, k: int, b: Vector, counts: tuple) -> bool:
        if any(x < 0 for x in b):
            return False
        if k == 0:
            if g + 1 >= len(counts):
                return True
            return self._go(g + 1, 0, counts[g + 1], b, counts)
        key = (g, start, k, b, counts)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        # lower bound: every remaining pick costs at least the group minimum
        need = [k * x for x in self.mins[g]]
        for h in range(g + 1, len(counts)):
            if counts[h]:
                need = [x + counts[h] * y for x, y in zip(need, self.mins[h])]
        ok = False
        if all(x >= y for x, y in zip(b, need)):
            costs = self.groups[g]
            for i in range(start, len(costs)):
                c = costs[i]
                if self._go(g, i, k - 1, tuple(x - y for x, y in zip(b, c)), counts):
                    ok = True
                    break
        self.memo[key] = ok
        return ok


@lru_cache(maxsize=4096)
def _searcher(groups: tuple[tuple[Vector, ...], ...]) -> _MultisetSearch:
    return _MultisetSearch(groups)


def _costs(gens: Iterable[Vector], rays: Sequence[Vector]) -> tuple[Vector, ...]:
    return tuple(tuple(lat.dot(g, u) for u in rays) for g in gens)


def _budget(m: Sequence[int], rays: Sequence[Vector]) -> Vector:
    return tuple(lat.dot(m, u) for u in rays)


def power_membership(I: MonomialIdeal, E: int, m: Sequence[int]) -> bool:
    """Is ``m`` in the ordinary power ``I^E``?  (``E = 0`` is the unit ideal.)"""
    if E < 0:
        raise InputError("exponent must be nonnegative")
    if E == 0:
        return True
    rays = I.ring.rays
    search = _searcher((_costs(I.generators, rays),))
    return search.fits(_budget(m, rays), (E,))


def symbolic_membership(P: MonomialPrime, E: int, m: Sequence[int]) -> bool:
    """Is ``m`` in the symbolic power ``P^(E)``?

    Inverting the monomials outside ``P`` leaves only the inequalities of the
    rays of ``P``'s face, so ``m`` is in ``P^(E)`` exactly when some ``E``
    generators fit under ``m`` with respect to those rays alone.
    """
    if E < 0:
        raise InputError("exponent must be nonnegative")
    if E == 0:
        return True
    rays = P.face_rays
    search = _searcher((_costs(P.generators, rays),))
    return search.fits(_budget(m, rays), (E,))


def default_saturation_bound(P: MonomialPrime, E: int, m: Sequence[int]) -> int:
    top = max(degree(P.ring, g) for g in P.generators)
    return degree(P.ring, m) + E * top


def saturation_exponent(P: MonomialPrime, E: int, m: Sequence[int], T_max: int | None = None) -> int | None:
    """Least ``T <= T_max`` with ``m + T s`` in ``P^E`` (``s`` = complement sum), or None."""
    if T_max is None:
        T_max = default_saturation_bound(P, E, m)
    s = lat.zero(P.ring.rank)
    for h in P.complement():
        s = lat.add(s, h)
    point = lat.vec(m)
    for T in range(T_max + 1):
        if power_membership(P.base, E, point):
            return T
        if not any(s):
            return None
        point = lat.add(point, s)
    return None


def symbolic_membership_saturation(P: MonomialPrime, E: int, m: Sequence[int],
                                   T_max: int | None = None) -> bool | None:
    """Saturation oracle ``m in P^E : s^oo`` with ``s`` the product of all
    Hilbert basis monomials outside ``P``.

    Returns True when ``m + T s`` lies in ``P^E`` for some ``T <= T_max`` and
    None ("inconclusive") otherwise.  When nothing lies outside ``P`` (the
    maximal monomial prime) ``s = 0`` and the answer is plain power membership.
    """
    if E == 0:
        return True
    if T_max is None:
        T_max = default_saturation_bound(P, E, m)
    s = lat.zero(P.ring.rank)
    for h in P.complement():
        s = lat.add(s, h)
    if not any(s):
        return power_membership(P.base, E, m)
    # membership is monotone in T, so testing T_max suffices
    if power_membership(P.base, E, lat.add(m, lat.scale(T_max, s))):
        return True
    return None


def symbolic_order(P: MonomialPrime, m: Sequence[int]) -> int:
    """Largest ``E`` with ``m`` in ``P^(E)``; at most ``<m, v_F>``."""
    if not contains(P.ring, m):
        raise InputError(f"{tuple(m)} is not in the semigroup")
    E = 0
    top = lat.dot(m, P.v_F)
    while E < top and symbolic_membership(P, E + 1, m):
        E += 1
    return E


def ordinary_order(I: MonomialIdeal, m: Sequence[int]) -> int:
    """Largest ``E`` with ``m`` in ``I^E``."""
    if not contains(I.ring, m):
        raise InputError(f"{tuple(m)} is not in the semigroup")
    if not any(m):
        return 0
    low = min(degree(I.ring, g) for g in I.generators)
    top = degree(I.ring, m) // low
    E = 0
    while E < top and power_membership(I, E + 1, m):
        E += 1
    return E


@dataclass(frozen=True)
class ContainmentResult:
    holds: bool
    counterexample: Vector | None
    degree_bound: int

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "counterexample": None if self.counterexample is None else list(self.counterexample),
            "degree_bound": self.degree_bound,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ContainmentResult":
        ce = data["counterexample"]
        return cls(bool(data["holds"]), None if ce is None else lat.vec(ce), int(data["degree_bound"]))


def containment_check(P: MonomialPrime, E: int, r: int, degree_bound: int,
                      points: Sequence[Vector] | None = None) -> ContainmentResult:
    """Check ``P^(E) subset P^r`` on every point of degree at most ``degree_bound``.

    The first violating point in canonical enumeration order is returned.
    """
    if E < 1 or r < 1 or degree_bound < 1:
        raise InputError("E, r and degree_bound must be positive")
    if points is None:
        points = enumerate_points(P.ring, degree_bound)
    for m in points:
        if symbolic_membership(P, E, m) and not power_membership(P.base, r, m):
            return ContainmentResult(False, m, degree_bound)
    return ContainmentResult(True, None, degree_bound)


def equality_check(P: MonomialPrime, E: int, degree_bound: int,
                   points: Sequence[Vector] | None = None) -> ContainmentResult:
    """Check ``P^(E) == P^E`` on bounded-degree points; first disagreement returned."""
    if points is None:
        points = enumerate_points(P.ring, degree_bound)
    for m in points:
        if symbolic_membership(P, E, m) != power_membership(P.base, E, m):
            return ContainmentResult(False, m, degree_bound)
    return ContainmentResult(True, None, degree_bound)


@dataclass(frozen=True)
class PureHeightOneIdeal:
    """Ideal with divisor ``sum b_rho P_rho``: ``m in q^(E)`` iff ``<m,u_rho> >= E b_rho``."""

    ring: SemigroupRing
    coefficients: tuple[tuple[Vector, int], ...]

    def __post_init__(self):
        if not self.coefficients:
            raise InputError("a pure height one ideal needs nonempty support")
        rays = set(self.ring.rays)
        for u, b in self.coefficients:
            if u not in rays:
                raise InputError(f"{u} is not a ray of the cone")
            if b <= 0:
                raise InputError("divisor coefficients must be positive")

    @classmethod
    def from_mapping(cls, ring: SemigroupRing, coeffs: Mapping[Sequence[int], int]) -> "PureHeightOneIdeal":
        items = sorted(((lat.primitive(u), int(b)) for u, b in coeffs.items()), reverse=True)
        return cls(ring, tuple(items))

    @classmethod
    def from_prime(cls, P: MonomialPrime) -> "PureHeightOneIdeal":
        if P.height != 1:
            raise InputError("only height-one primes are pure height one")
        return cls(P.ring, ((P.face_rays[0], 1),))

    def contains(self, m: Sequence[int], E: int = 1) -> bool:
        return all(lat.dot(m, u) >= E * b for u, b in self.coefficients)

    def divisor(self) -> dict[Vector, int]:
        return dict(self.coefficients)

    def symbolic_generators(self, E: int, degree_bound: int) -> list[Vector]:
        """Minimal generators of ``q^(E)`` of degree at most ``degree_bound``."""
        gens: list[Vector] = []
        for m in enumerate_points(self.ring, degree_bound):
            if self.contains(m, E) and not any(contains(self.ring, lat.sub(m, g)) for g in gens):
                gens.append(m)
        return gens


def pure_h1_product_mismatch(q: PureHeightOneIdeal, D: int, r: int, s: int,
                             degree_bound: int) -> Vector | None:
    """First bounded-degree point where ``q^(D(r-1)+s)`` and
    ``(q^(D))^(r-1) q^(s)`` disagree, or None."""
    if not 0 <= s < D or r < 1:
        raise InputError("need r >= 1 and 0 <= s < D")
    ring = q.ring
    slack = max(degree(ring, h) for h in ring.hilbert_basis) if ring.hilbert_basis else 0
    gD = q.symbolic_generators(D, degree_bound + slack)
    gs = q.symbolic_generators(s, degree_bound + slack) if s else [lat.zero(ring.rank)]
    rays = ring.rays
    search = _searcher((_costs(gD, rays), _costs(gs, rays)))
    target = D * (r - 1) + s
    for m in enumerate_points(ring, degree_bound):
        lhs = q.contains(m, target)
        rhs = search.fits(_budget(m, rays), (r - 1, 1))
        if lhs != rhs:
            return m
    return None


def pure_h1_product_check(q: PureHeightOneIdeal, D: int, r: int, s: int, degree_bound: int) -> bool:
    """Bounded check of ``q^(D(r-1)+s) == (q^(D))^(r-1) q^(s)``."""
    return pure_h1_product_mismatch(q, D, r, s, degree_bound) is None


def partition_mismatch(Q: MonomialPrime, N: int, degree_bound: int) -> Vector | None:
    """First point of ``Q^(N)`` outside ``sum_{A in S(N)} prod_i (P_i R)^(A_i)``.

    ``Q`` must be a prime of a tensor product ring; its factor primes ``P_i``
    are read off the face blocks.  A point lies in the product of symbolic
    powers iff its block ``i`` lies in ``(P_i R)^(A_i)`` for every ``i``, so a
    composition exists iff the blockwise symbolic orders sum to at least N.
    """
    if N < 1:
        raise InputError("N must be positive")
    big = Q.ring
    parts = factor_primes(Q)
    expanded = [
        (i, expand_to_product(p, big, i)) for i, p in enumerate(parts) if p is not None
    ]
    for m in enumerate_points(big, degree_bound):
        if not symbolic_membership(Q, N, m):
            continue
        total = 0
        for i, PR in expanded:
            block = lat.embed(big.block(m, i), big.offsets[i], big.rank)
            total += symbolic_order(PR, block)
        if total < N:
            return m
    return None


def partition_containment_check(Q: MonomialPrime, N: int, degree_bound: int) -> bool:
    return partition_mismatch(Q, N, degree_bound) is None


def equivalence_sides(P: MonomialPrime, E: int, N_max: int, degree_bound: int) -> tuple[bool, bool]:
    """Bounded truth values of ``P^(N) in P^ceil(N/E)`` for all ``N <= N_max`` and of
    ``P^(E(r-1)+1) in P^r`` for every ``r`` with ``E(r-1)+1 <= N_max``."""
    if E < 1:
        raise InputError("E must be positive")
    pts = enumerate_points(P.ring, degree_bound)
    side1 = all(
        containment_check(P, N, -(-N // E), degree_bound, pts).holds for N in range(1, N_max + 1)
    )
    side2 = True
    r = 1
    while E * (r - 1) + 1 <= N_max:
        if not containment_check(P, E * (r - 1) + 1, r, degree_bound, pts).holds:
            side2 = False
            break
        r += 1
    return side1, side2


def equivalence_check(P: MonomialPrime, E: int, N_max: int, degree_bound: int) -> bool:
    a, b = equivalence_sides(P, E, N_max, degree_bound)
    return a == b
