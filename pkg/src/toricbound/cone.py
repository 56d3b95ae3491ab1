"""Rational polyhedral cones given by integer ray generators.

A :class:`Cone` stores its primitive generators in canonical order together
with the inequality normals of its dual description, computed once at
construction by a double-description pass over exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import lattice as lat
from .errors import InputError, UnsupportedInputError
from .lattice import IntegerMatrix, Vector


def canonical(vectors: Iterable[Sequence[int]]) -> tuple[Vector, ...]:
    """Primitivize, deduplicate and sort (descending lexicographic order)."""
    return tuple(sorted({lat.primitive(v) for v in vectors if any(v)}, reverse=True))


def _extreme_rays(constraints: Sequence[Vector], dim: int) -> list[Vector]:
    """Extreme rays of ``{y in Q^dim : a.y >= 0 for all a}``.

    The constraint matrix must have rank ``dim`` so that the cone is pointed.
    Incremental double description starting from a simplicial cone cut out by
    ``dim`` independent constraints; adjacency is tested algebraically.
    """
    if dim == 0:
        return []
    basis_idx = lat.independent_subset(constraints)
    if len(basis_idx) != dim:
        raise InputError("constraint system does not have full rank")
    A0 = [constraints[i] for i in basis_idx]
    rays: list[Vector] = []
    for k in range(dim):
        e = [0] * dim
        e[k] = 1
        # column k of A0^{-1}
        rays.append(lat.primitive_rational(lat.solve_rational(A0, e)))
    inserted = list(A0)
    for idx, a in enumerate(constraints):
        if idx in basis_idx:
            continue
        vals = [lat.dot(a, r) for r in rays]
        if all(v >= 0 for v in vals):
            inserted.append(a)
            continue
        pos = [r for r, v in zip(rays, vals) if v > 0]
        zer = [r for r, v in zip(rays, vals) if v == 0]
        neg = [(r, v) for r, v in zip(rays, vals) if v < 0]
        new = pos + zer
        pos_vals = [(r, v) for r, v in zip(rays, vals) if v > 0]
        for p, vp in pos_vals:
            zp = {i for i, c in enumerate(inserted) if lat.dot(c, p) == 0}
            for n, vn in neg:
                common = [inserted[i] for i in zp if lat.dot(inserted[i], n) == 0]
                if lat.rank(common) != dim - 2:
                    continue
                comb = tuple(vp * x - vn * y for x, y in zip(n, p))
                new.append(lat.primitive(comb))
        inserted.append(a)
        rays = sorted(set(new), reverse=True)
    return sorted(set(rays), reverse=True)


def _dual_description(gens: Sequence[Vector], rank: int) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
    """(pointed-part rays, lineality basis) of the dual of ``Cone(gens)``.

    The dual splits as ``span(gens)^perp  (+)  (dual  cap  span(gens))``; the
    second summand is pointed and handled in coordinates of a basis of the span.
    """
    lineality = tuple(lat.integer_kernel(gens, rank)) if gens else tuple(
        lat.integer_kernel([], rank)
    )
    if not gens:
        return (), lineality
    basis = [gens[i] for i in lat.independent_subset(gens)]
    k = len(basis)
    constraints = [tuple(lat.dot(g, b) for b in basis) for g in gens]
    ys = _extreme_rays(constraints, k)
    rays = []
    for y in ys:
        w = [sum(yi * b[j] for yi, b in zip(y, basis)) for j in range(rank)]
        rays.append(lat.primitive(w))
    return canonical(rays), lineality


@dataclass(frozen=True)
class Cone:
    """``Cone(rays)`` in a lattice of rank ``ambient_rank``.

    ``facets`` are the primitive inequality normals of the dual description and
    ``equations`` a lattice basis of the orthogonal complement of the span.
    For pointed cones ``rays`` are exactly the extreme rays.
    """

    ambient_rank: int
    rays: tuple[Vector, ...]
    facets: tuple[Vector, ...] = field(compare=False)
    equations: tuple[Vector, ...] = field(compare=False)

    @classmethod
    def from_generators(cls, rank: int, generators: Iterable[Sequence[int]]) -> "Cone":
        gens = [lat.vec(g) for g in generators]
        for g in gens:
            if len(g) != rank:
                raise InputError(f"generator {g} does not have rank {rank}")
        rays = canonical(gens)
        facets, equations = _dual_description(rays, rank)
        dim = lat.rank(rays)
        if lat.rank(facets) == dim:
            # pointed: keep only extreme generators
            rays = tuple(
                r for r in rays
                if lat.rank([f for f in facets if lat.dot(f, r) == 0]) == dim - 1
            )
        return cls(rank, rays, facets, equations)

    @property
    def dim(self) -> int:
        return lat.rank(self.rays)

    def contains(self, v: Sequence[int]) -> bool:
        return all(lat.dot(e, v) == 0 for e in self.equations) and all(
            lat.dot(f, v) >= 0 for f in self.facets
        )

    def ray_matrix(self) -> IntegerMatrix:
        return IntegerMatrix.from_rows(self.rays, self.ambient_rank)

    def __repr__(self) -> str:
        return f"Cone(rank={self.ambient_rank}, rays={[list(r) for r in self.rays]})"


def dual_cone(c: Cone) -> Cone:
    """Generator description of the dual cone (lineality given as +/- pairs)."""
    gens = list(c.facets) + list(c.equations) + [lat.scale(-1, e) for e in c.equations]
    return Cone.from_generators(c.ambient_rank, gens)


@dataclass(frozen=True)
class ConeType:
    pointed: bool
    full: bool
    simplicial: bool
    smooth: bool


def is_pointed(c: Cone) -> bool:
    return lat.rank(c.facets) == c.dim


def classify(c: Cone) -> ConeType:
    pointed = is_pointed(c)
    full = c.dim == c.ambient_rank
    simplicial = pointed and len(c.rays) == c.dim
    smooth = False
    if simplicial:
        # rays extend to a Z-basis iff every invariant factor of the ray matrix is 1
        smooth = not c.rays or all(
            d == 1 for d in lat.smith_normal_form(c.ray_matrix()).invariant_factors
        )
    return ConeType(pointed, full, simplicial, smooth)


@dataclass(frozen=True)
class FaceDescriptor:
    """A face of a pointed cone, named by the rays it contains."""

    ray_subset: tuple[Vector, ...]
    dim: int
    v_F: Vector
    witness: Vector = field(compare=False)

    @property
    def is_zero(self) -> bool:
        return not self.ray_subset


def _require_pointed(c: Cone) -> None:
    if not is_pointed(c):
        raise UnsupportedInputError("operation requires a pointed cone")


def _make_face(c: Cone, subset: Iterable[int]) -> FaceDescriptor:
    idx = sorted(subset)
    rays = tuple(c.rays[i] for i in idx)
    tight = [f for f in c.facets if all(lat.dot(f, r) == 0 for r in rays)]
    witness = lat.zero(c.ambient_rank)
    for f in tight:
        witness = lat.add(witness, f)
    v = lat.zero(c.ambient_rank)
    for r in rays:
        v = lat.add(v, r)
    return FaceDescriptor(rays, lat.rank(rays), v, witness)


def faces(c: Cone) -> list[FaceDescriptor]:
    """All faces of a pointed cone, from {0} to the cone itself.

    Faces are intersections of facet zero sets; ordered by (dim, ray indices).
    """
    _require_pointed(c)
    full = frozenset(range(len(c.rays)))
    zero_sets = [
        frozenset(i for i, r in enumerate(c.rays) if lat.dot(f, r) == 0) for f in c.facets
    ]
    found = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for F in frontier:
            for Z in zero_sets:
                G = F & Z
                if G not in found:
                    found.add(G)
                    nxt.append(G)
        frontier = nxt
    out = [_make_face(c, F) for F in found]
    order = {r: i for i, r in enumerate(c.rays)}
    out.sort(key=lambda f: (f.dim, [order[r] for r in f.ray_subset]))
    return out


def face_from_rays(c: Cone, rays: Iterable[Sequence[int]]) -> FaceDescriptor:
    """The face spanned by the given rays of ``c``; raises if they span no face."""
    _require_pointed(c)
    wanted = {lat.primitive(r) for r in rays}
    index = {r: i for i, r in enumerate(c.rays)}
    if not wanted <= index.keys():
        raise InputError(f"{sorted(wanted - index.keys())} are not rays of {c}")
    face = _make_face(c, (index[r] for r in wanted))
    closure = {r for r in c.rays if lat.dot(face.witness, r) == 0}
    if closure != wanted:
        raise InputError(f"rays {sorted(wanted)} do not span a face of {c}")
    return face


def is_face(c: Cone, f: FaceDescriptor) -> bool:
    try:
        return face_from_rays(c, f.ray_subset) == f
    except InputError:
        return False


def dual_face_dim(c: Cone, f: FaceDescriptor) -> int:
    """Dimension of the dual face ``F* = {w in C^vee : <w, v> = 0 on F}``."""
    t = classify(c)
    if not (t.full and t.pointed):
        raise UnsupportedInputError("dual_face_dim needs a full pointed cone")
    if not is_face(c, f):
        raise InputError(f"{f.ray_subset} is not a face of {c}")
    expected = c.ambient_rank - f.dim
    dual_gens = [w for w in c.facets if all(lat.dot(w, r) == 0 for r in f.ray_subset)]
    actual = lat.rank(dual_gens)
    if actual != expected:
        raise AssertionError(f"face duality violated: {actual} != {expected}")
    return expected


def product_cone(cs: Sequence[Cone]) -> Cone:
    """Block-diagonal product of cones in the direct-sum lattice."""
    for c in cs:
        _require_pointed(c)
    total = sum(c.ambient_rank for c in cs)
    rays = []
    offset = 0
    for c in cs:
        rays.extend(lat.embed(r, offset, total) for r in c.rays)
        offset += c.ambient_rank
    return Cone.from_generators(total, rays)


def reduce_to_full(c: Cone) -> tuple[Cone, int, IntegerMatrix]:
    """Rewrite a pointed cone as a full cone in the lattice ``span(C) cap N``.

    Returns ``(full_cone, laurent_rank, embedding)`` where the columns of
    ``embedding`` are a canonical (Hermite) basis of ``span(C) cap N``.
    """
    _require_pointed(c)
    d = c.ambient_rank
    k = c.dim
    if k == d:
        return c, 0, IntegerMatrix.identity(d)
    if k == 0:
        return Cone.from_generators(0, []), d, IntegerMatrix.zeros(d, 0)
    perp = lat.integer_kernel(c.rays, d)
    basis = lat.integer_kernel(perp, d)
    E = IntegerMatrix.from_columns(basis, d)
    small = []
    for r in c.rays:
        y = lat.solve_rational(E.rows, r)
        if y is None or any(Fraction(v).denominator != 1 for v in y):
            raise AssertionError("span lattice is not saturated")
        small.append(tuple(int(v) for v in y))
    return Cone.from_generators(k, small), d - k, E
