"""The normal affine semigroup ``C^vee cap M`` of a full pointed cone."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import lattice as lat
from .cone import Cone, classify, dual_cone, faces, product_cone
from .errors import InputError, UnsupportedInputError
from .lattice import IntegerMatrix, Vector


def _pulling_triangulation(c: Cone) -> list[tuple[Vector, ...]]:
    """Simplicial cones covering ``c`` (pulling the first ray of every face).

    Uses the face lattice; every maximal simplex is returned as a tuple of rays.
    """
    fs = faces(c)
    by_rays = {frozenset(f.ray_subset): f.dim for f in fs}
    order = {r: i for i, r in enumerate(c.rays)}
    facets_of: dict[frozenset, list[frozenset]] = {}
    for F, d in by_rays.items():
        facets_of[F] = [G for G, e in by_rays.items() if e == d - 1 and G < F]

    memo: dict[frozenset, list[frozenset]] = {}

    def tri(F: frozenset) -> list[frozenset]:
        if F in memo:
            return memo[F]
        if len(F) == by_rays[F]:
            out = [F]
        else:
            apex = min(F, key=order.__getitem__)
            out = [S | {apex} for G in facets_of[F] if apex not in G for S in tri(G)]
        memo[F] = out
        return out

    top = frozenset(c.rays)
    return [tuple(sorted(S, key=order.__getitem__)) for S in tri(top)]


def _parallelepiped_points(rays: Sequence[Vector]) -> list[Vector]:
    """Lattice points of the half-open parallelepiped spanned by linearly independent rays."""
    n = len(rays)
    W = IntegerMatrix.from_rows(rays, n)
    snf = lat.smith_normal_form(W)
    # Z^n / (row lattice of W) = Z^n / (Z^n S V^-1); representatives y V^-1 for y in the box
    Vinv = _inverse(snf.V)
    Winv = _rational_inverse(W)
    pts = []
    ranges = [range(d) for d in snf.invariant_factors]
    for y in itertools.product(*ranges):
        x = [sum(y[i] * Vinv[i][j] for i in range(n)) for j in range(n)]
        lam = [sum(Fraction(x[i]) * Winv[i][j] for i in range(n)) for j in range(n)]
        frac = [l - (l.numerator // l.denominator) for l in lam]
        p = [sum(frac[i] * rays[i][j] for i in range(n)) for j in range(n)]
        pts.append(tuple(int(v) for v in p))
    return pts


def _rational_inverse(A: IntegerMatrix) -> list[list[Fraction]]:
    n = A.nrows
    aug = lat.row_echelon([list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(A.rows)])
    return [row[n:] for row in aug]


def _inverse(A: IntegerMatrix) -> list[list[int]]:
    inv = _rational_inverse(A)
    return [[int(x) for x in row] for row in inv]


def hilbert_basis(c: Cone) -> list[Vector]:
    """Hilbert basis of ``C^vee cap M`` in canonical (descending lex) order.

    The dual cone is triangulated; the lattice points of each simplicial
    piece's fundamental parallelepiped together with its rays generate the
    semigroup, and the irreducible ones among them form the basis.
    """
    t = classify(c)
    if not (t.full and t.pointed):
        raise UnsupportedInputError("Hilbert basis needs a full pointed cone")
    if c.ambient_rank == 0:
        return []
    dual = dual_cone(c)
    cands: set[Vector] = set()
    for simplex in _pulling_triangulation(dual):
        cands.update(simplex)
        cands.update(p for p in _parallelepiped_points(simplex) if any(p))
    rays = c.rays

    def in_semigroup(m):
        return all(lat.dot(m, u) >= 0 for u in rays)

    basis = [
        g for g in cands
        if not any(h != g and in_semigroup(lat.sub(g, h)) for h in cands)
    ]
    return sorted(basis, reverse=True)


@dataclass(frozen=True)
class SemigroupRing:
    """The toric ring of a full pointed cone, at the lattice level.

    ``factors``/``offsets`` are set for rings built as tensor products and
    record which coordinate block belongs to which factor.
    """

    cone: Cone
    dual: Cone = field(compare=False)
    hilbert_basis: tuple[Vector, ...] = field(compare=False)
    grading: Vector = field(compare=False)
    factors: tuple["SemigroupRing", ...] = field(default=(), compare=False)
    offsets: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def from_cone(cls, c: Cone) -> "SemigroupRing":
        hb = hilbert_basis(c)
        grading = lat.zero(c.ambient_rank)
        for u in c.rays:
            grading = lat.add(grading, u)
        return cls(c, dual_cone(c), tuple(hb), grading)

    @property
    def rank(self) -> int:
        return self.cone.ambient_rank

    @property
    def rays(self) -> tuple[Vector, ...]:
        return self.cone.rays

    def block(self, m: Sequence[int], i: int) -> Vector:
        """Coordinates of ``m`` belonging to tensor factor ``i``."""
        start = self.offsets[i]
        return tuple(m[start:start + self.factors[i].rank])


def product_ring(rings: Sequence[SemigroupRing]) -> SemigroupRing:
    """Tensor product of toric rings: the ring of the product cone."""
    big = SemigroupRing.from_cone(product_cone([r.cone for r in rings]))
    offsets, o = [], 0
    for r in rings:
        offsets.append(o)
        o += r.rank
    return SemigroupRing(big.cone, big.dual, big.hilbert_basis, big.grading,
                         tuple(rings), tuple(offsets))


def contains(s: SemigroupRing, m: Sequence[int]) -> bool:
    if len(m) != s.rank:
        raise InputError(f"rank mismatch: {len(m)} != {s.rank}")
    return all(lat.dot(m, u) >= 0 for u in s.rays)


def degree(s: SemigroupRing, m: Sequence[int]) -> int:
    if not contains(s, m):
        raise InputError(f"{tuple(m)} is not in the semigroup")
    return lat.dot(m, s.grading)


def _sort_points(s: SemigroupRing, pts) -> list[Vector]:
    # degree ascending, then canonical (descending lex) order
    return sorted(pts, key=lambda m: (lat.dot(m, s.grading), tuple(-x for x in m)))


def enumerate_points(s: SemigroupRing, max_degree: int) -> list[Vector]:
    """All semigroup elements of degree at most ``max_degree``.

    Built as the closure of {0} under adding Hilbert basis elements; every
    basis element has positive degree, so this terminates and is complete.
    """
    if max_degree < 0:
        raise InputError("max_degree must be nonnegative")
    origin = lat.zero(s.rank)
    seen = {origin}
    frontier = [origin]
    hb = [(h, lat.dot(h, s.grading)) for h in s.hilbert_basis]
    while frontier:
        nxt = []
        for m in frontier:
            dm = lat.dot(m, s.grading)
            for h, dh in hb:
                if dm + dh <= max_degree:
                    p = lat.add(m, h)
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
        frontier = nxt
    return _sort_points(s, seen)


def enumerate_points_box(s: SemigroupRing, max_degree: int) -> list[Vector]:
    """Same set as :func:`enumerate_points`, by filtering a bounding box.

    The box comes from the vertices of ``{w in C^vee : <w, grading> <= B}``,
    i.e. the origin and each dual ray scaled to degree ``B``.  Slow; kept as
    an independent cross-check.
    """
    n = s.rank
    verts = [[Fraction(0)] * n]
    for w in s.dual.rays:
        dw = lat.dot(w, s.grading)
        verts.append([Fraction(max_degree * x, dw) for x in w])
    lo = [min(v[i] for v in verts) for i in range(n)]
    hi = [max(v[i] for v in verts) for i in range(n)]
    ranges = [range(-((-l.numerator) // l.denominator), h.numerator // h.denominator + 1)
              for l, h in zip(lo, hi)]
    pts = [
        p for p in itertools.product(*ranges)
        if contains(s, p) and lat.dot(p, s.grading) <= max_degree
    ]
    return _sort_points(s, pts)
