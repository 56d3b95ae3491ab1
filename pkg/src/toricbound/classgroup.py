"""Divisor class groups of toric rings.

Torus-invariant Weil divisors are integer vectors indexed by the rays of the
cone; principal ones are the images ``div(m) = sum <m, u_rho> P_rho`` and the
class group is the cokernel of that map.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Mapping, Sequence

from . import lattice as lat
from .cone import classify
from .errors import InputError, UnsupportedInputError
from .lattice import IntegerMatrix, Vector
from .semigroup import SemigroupRing


def divisor_matrix(s: SemigroupRing) -> IntegerMatrix:
    """Rows are the rays in canonical order; entry ``(rho, i)`` is ``<e_i*, u_rho>``."""
    t = classify(s.cone)
    if not (t.full and t.pointed):
        raise UnsupportedInputError("divisor matrix needs a full pointed cone")
    return IntegerMatrix.from_rows(s.rays, s.rank)


@dataclass(frozen=True)
class WeilDivisor:
    rays: tuple[Vector, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.rays) != len(self.values):
            raise InputError("one coefficient per ray is required")

    @classmethod
    def from_mapping(cls, s: SemigroupRing, coeffs: Mapping[Sequence[int], int]) -> "WeilDivisor":
        given = {lat.primitive(u): int(b) for u, b in coeffs.items()}
        unknown = set(given) - set(s.rays)
        if unknown:
            raise InputError(f"{sorted(unknown)} are not rays of the cone")
        return cls(s.rays, tuple(given.get(u, 0) for u in s.rays))

    @classmethod
    def prime(cls, s: SemigroupRing, ray: Sequence[int]) -> "WeilDivisor":
        return cls.from_mapping(s, {tuple(ray): 1})

    def coefficient(self, ray: Sequence[int]) -> int:
        return self.values[self.rays.index(lat.vec(ray))]

    def __add__(self, other: "WeilDivisor") -> "WeilDivisor":
        if self.rays != other.rays:
            raise InputError("divisors live on different cones")
        return WeilDivisor(self.rays, lat.add(self.values, other.values))

    def __rmul__(self, k: int) -> "WeilDivisor":
        return WeilDivisor(self.rays, lat.scale(k, self.values))

    def to_json(self) -> dict:
        return {"rays": [list(u) for u in self.rays], "coefficients": list(self.values)}


@dataclass(frozen=True)
class ClassGroup:
    free_rank: int
    torsion: tuple[int, ...]
    presentation_matrix: IntegerMatrix
    rays: tuple[Vector, ...]

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def presentation(self) -> dict:
        """Generators ``[D_rho]`` with one relation ``sum_rho <e_i*, u_rho> [D_rho] = 0`` per i."""
        names = ["D[" + ",".join(map(str, u)) + "]" for u in self.rays]
        relations = []
        for i in range(self.presentation_matrix.ncols):
            col = self.presentation_matrix.column(i)
            text = ""
            for c, name in zip(col, names):
                if not c:
                    continue
                sign = "-" if c < 0 else "+"
                term = name if abs(c) == 1 else f"{abs(c)}{name}"
                text = (f"-{term}" if sign == "-" else term) if not text else f"{text} {sign} {term}"
            relations.append(f"{text or '0'} = 0")
        return {"generators": names, "relations": relations}

    def to_json(self) -> dict:
        e = exponent(self)
        return {
            "free_rank": self.free_rank,
            "invariant_factors": list(self.torsion),
            "exponent": "infinite" if e is None else e,
            "presentation": self.presentation(),
        }


def class_group(s: SemigroupRing) -> ClassGroup:
    A = divisor_matrix(s)
    free, torsion = lat.cokernel_invariants(A)
    return ClassGroup(free, tuple(torsion), A, s.rays)


def exponent(g: ClassGroup) -> int | None:
    """Least ``D > 0`` killing the group, or None when the group is infinite."""
    if g.free_rank:
        return None
    out = 1
    for d in g.torsion:
        out = out * d // gcd(out, d)
    return out


def div_of_monomial(s: SemigroupRing, m: Sequence[int]) -> WeilDivisor:
    """Principal divisor of the Laurent monomial ``m`` (any lattice point)."""
    if len(m) != s.rank:
        raise InputError(f"rank mismatch: {len(m)} != {s.rank}")
    return WeilDivisor(s.rays, tuple(lat.dot(m, u) for u in s.rays))


def _check(s: SemigroupRing, d: WeilDivisor) -> None:
    if d.rays != s.rays:
        raise InputError("divisor is not indexed by the rays of this ring")


def class_order(s: SemigroupRing, d: WeilDivisor) -> int | None:
    """Order of ``[d]`` in the class group; None when infinite."""
    _check(s, d)
    snf = lat.smith_normal_form(divisor_matrix(s))
    c = snf.U.apply(d.values)
    out = 1
    for i, ci in enumerate(c):
        si = snf.invariant_factors[i] if i < len(snf.invariant_factors) else 0
        if si == 0:
            if ci:
                return None
            continue
        k = si // gcd(si, ci)
        out = out * k // gcd(out, k)
    return out


def principal_generator(s: SemigroupRing, d: WeilDivisor) -> Vector | None:
    """The ``m`` with ``div(m) = d``, or None when ``d`` is not principal."""
    _check(s, d)
    if any(v < 0 for v in d.values):
        raise InputError("principal_generator expects an effective divisor")
    return lat.solve_integer(divisor_matrix(s), d.values)
