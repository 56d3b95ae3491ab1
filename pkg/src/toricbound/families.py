"""Named families of toric rings and closed-form membership criteria for them.

* ``hypersurface`` n, D: the cone with rays ``D e_i + e_n`` (i < n) and ``e_n``;
  its ring is ``k[x_1..x_n, z]/(z^D - x_1...x_n)``.
* ``veronese`` n, D: the cone with rays ``e_i`` (i < n) and
  ``-e_1 - ... - e_{n-1} + D e_n``; its ring is the D-th Veronese of n variables.
* ``tensor``: product of the factor cones.
* ``primorial``: tensor product of Veronese rings in n variables, one for each
  of the first ``num_primes`` primes D = 2, 3, 5, ...
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import count
from typing import Iterable, Sequence

from . import lattice as lat
from .cone import Cone
from .errors import ConfigurationError, InputError
from .lattice import Vector
from .semigroup import SemigroupRing, product_ring

KINDS = ("hypersurface", "veronese", "tensor", "primorial", "orthant")
DEFAULT_MAX_RANK = 8


def max_rank() -> int:
    raw = os.environ.get("TORICBOUND_MAX_RANK", str(DEFAULT_MAX_RANK))
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"TORICBOUND_MAX_RANK must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigurationError("TORICBOUND_MAX_RANK must be positive")
    return value


def first_primes(k: int) -> list[int]:
    out: list[int] = []
    for p in count(2):
        if len(out) == k:
            return out
        if all(p % q for q in out):
            out.append(p)
    return out


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int = 2
    D: int = 2
    factors: tuple["FamilySpec", ...] = ()
    num_primes: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown family kind {self.kind!r}")
        if self.kind == "tensor":
            if not self.factors:
                raise InputError("tensor family needs at least one factor")
        elif self.kind == "primorial":
            if self.num_primes < 1 or self.n < 2:
                raise InputError("primorial family needs num_primes >= 1 and n >= 2")
        elif self.kind == "orthant":
            if self.n < 1:
                raise InputError("orthant needs n >= 1")
        elif self.n < 2 or self.D < 2:
            raise InputError(f"{self.kind} family needs n >= 2 and D >= 2")

    @property
    def rank(self) -> int:
        if self.kind == "tensor":
            return sum(f.rank for f in self.factors)
        if self.kind == "primorial":
            return self.n * self.num_primes
        return self.n

    def components(self) -> tuple["FamilySpec", ...]:
        """Tensor factors (a single-element tuple for non-product families)."""
        if self.kind == "tensor":
            return self.factors
        if self.kind == "primorial":
            return tuple(FamilySpec("veronese", self.n, p) for p in first_primes(self.num_primes))
        return (self,)

    def label(self) -> str:
        if self.kind == "tensor":
            return "tensor[" + ",".join(f.label() for f in self.factors) + "]"
        if self.kind == "primorial":
            return f"primorial:{self.n}:{self.num_primes}"
        if self.kind == "orthant":
            return f"orthant:{self.n}"
        return f"{self.kind}:{self.n}:{self.D}"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "n": self.n}
        if self.kind in ("hypersurface", "veronese"):
            out["D"] = self.D
        if self.kind == "tensor":
            out["factors"] = [f.to_json() for f in self.factors]
        if self.kind == "primorial":
            out["num_primes"] = self.num_primes
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FamilySpec":
        factors = tuple(cls.from_json(f) for f in data.get("factors", ()))
        return cls(data["kind"], int(data.get("n", 2)), int(data.get("D", 2)),
                   factors, int(data.get("num_primes", 0)))


def parse_factors(text: str) -> tuple[FamilySpec, ...]:
    """Parse ``"veronese:2:2,hypersurface:3:2"`` into factor specs."""
    out = []
    for item in text.split(","):
        parts = item.strip().split(":")
        if len(parts) != 3:
            raise InputError(f"factor {item!r} is not of the form kind:n:D")
        kind, n, D = parts
        try:
            out.append(FamilySpec(kind, int(n), int(D)))
        except ValueError as exc:
            raise InputError(f"bad factor {item!r}: {exc}") from None
    return tuple(out)


def hypersurface_rays(n: int, D: int) -> list[Vector]:
    rays = [lat.add(lat.scale(D, lat.embed((1,), i, n)), lat.embed((1,), n - 1, n)) for i in range(n - 1)]
    return rays + [lat.embed((1,), n - 1, n)]


def veronese_rays(n: int, D: int) -> list[Vector]:
    rays = [lat.embed((1,), i, n) for i in range(n - 1)]
    return rays + [tuple([-1] * (n - 1) + [D])]


def family_cone(spec: FamilySpec) -> Cone:
    if spec.kind == "hypersurface":
        return Cone.from_generators(spec.n, hypersurface_rays(spec.n, spec.D))
    if spec.kind == "veronese":
        return Cone.from_generators(spec.n, veronese_rays(spec.n, spec.D))
    if spec.kind == "orthant":
        return Cone.from_generators(spec.n, [lat.embed((1,), i, spec.n) for i in range(spec.n)])
    raise InputError(f"{spec.kind} is a product family; use build()")


def build(spec: FamilySpec) -> SemigroupRing:
    """The ring of a family spec; products keep their factor structure."""
    cap = max_rank()
    if spec.rank > cap:
        raise ConfigurationError(
            f"{spec.label()} has lattice rank {spec.rank}, above the cap {cap} (TORICBOUND_MAX_RANK)"
        )
    return _build(spec)


@lru_cache(maxsize=64)
def _build(spec: FamilySpec) -> SemigroupRing:
    if spec.kind in ("tensor", "primorial"):
        return product_ring([_build(f) for f in spec.components()])
    return SemigroupRing.from_cone(family_cone(spec))


def multiplier(spec: FamilySpec) -> int:
    """The family parameter D (largest factor D for products)."""
    if spec.kind == "orthant":
        return 1
    if spec.kind in ("tensor", "primorial"):
        return max(multiplier(f) for f in spec.components())
    return spec.D


def _pairings(m: Sequence[int], rays: Iterable[Vector]) -> list[int]:
    vals = [lat.dot(m, u) for u in rays]
    if any(v < 0 for v in vals):
        raise InputError(f"{tuple(m)} is not in the semigroup")
    return vals


def hypersurface_coordinates(n: int, D: int, m: Sequence[int]) -> tuple[int, list[int]]:
    """Normal form ``z^l x_1^a_1 ... x_n^a_n`` (``0 <= l < D``) of the monomial ``m``.

    ``x_i = e_i*`` for i < n, ``x_n = -sum e_i* + D e_n*`` and ``z = e_n*``.
    """
    if len(m) != n:
        raise InputError(f"rank mismatch: {len(m)} != {n}")
    _pairings(m, hypersurface_rays(n, D))
    ell = m[n - 1] % D
    a_n = (m[n - 1] - ell) // D
    return ell, [m[i] + a_n for i in range(n - 1)] + [a_n]


def hypersurface_subset_closed_form(n: int, D: int, subset: Iterable[int], m: Sequence[int], E: int) -> bool:
    """``m`` in the symbolic power ``P^(E)`` of ``P = (z, x_i : i in subset)``
    (0-based indices; index n-1 is ``x_n``).

    Evaluates ``(D - j) min_S a_i + sum_S a_i + l >= E`` with ``j = |S|``; the
    inequality characterizes membership when ``D >= j``.
    """
    S = sorted(set(subset))
    if not S or len(S) > n - 1 or S[0] < 0 or S[-1] >= n:
        raise InputError("subset must be a nonempty proper subset of range(n)")
    ell, a = hypersurface_coordinates(n, D, m)
    if E <= 0:
        return True
    j = len(S)
    T = min(a[i] for i in S)
    return (D - j) * T + sum(a[i] for i in S) + ell >= E


def hypersurface_closed_form(n: int, D: int, j: int, m: Sequence[int], E: int) -> bool:
    """Membership in ``P_j^(E)``, ``P_j = (z, x_1, ..., x_j)``."""
    if not 1 <= j <= n - 1:
        raise InputError("need 1 <= j <= n-1")
    return hypersurface_subset_closed_form(n, D, range(j), m, E)


def hypersurface_face_subset(n: int, D: int, face_rays: Iterable[Vector]) -> list[int]:
    """Variable indices of the prime of a face (ray ``D e_i + e_n`` is ``x_i``, ``e_n`` is ``x_n``)."""
    rays = hypersurface_rays(n, D)
    return sorted(rays.index(lat.vec(u)) for u in face_rays)


def veronese_subset_closed_form(n: int, D: int, face_rays: Iterable[Vector], m: Sequence[int], E: int) -> bool:
    """Membership in ``P^(E)`` for the prime of a nonmaximal face of the Veronese cone:
    the marked exponents ``<m, u_rho>`` over the face's rays must total at least E."""
    face = [lat.vec(u) for u in face_rays]
    rays = veronese_rays(n, D)
    if not face or len(face) > n - 1 or any(u not in rays for u in face):
        raise InputError("face must be a nonempty proper set of rays of the Veronese cone")
    vals = _pairings(m, rays)
    if E <= 0:
        return True
    return sum(v for u, v in zip(rays, vals) if u in face) >= E


def veronese_closed_form(n: int, D: int, k: int, m: Sequence[int], E: int) -> bool:
    """Membership in ``P_{1<...<k}^(E)``: ``m_1 + ... + m_k >= E``."""
    if not 1 <= k <= n - 1:
        raise InputError("need 1 <= k <= n-1")
    return veronese_subset_closed_form(n, D, veronese_rays(n, D)[:k], m, E)


def pure_power_generator(ring: SemigroupRing, ray: Sequence[int]) -> Vector:
    """The Hilbert basis element pairing to zero with every ray except ``ray``,
    with maximal pairing there (``s_j^D u`` for the Veronese ray ``e_j``)."""
    u = lat.vec(ray)
    if u not in ring.rays:
        raise InputError(f"{u} is not a ray")
    others = [v for v in ring.rays if v != u]
    cands = [h for h in ring.hilbert_basis if all(lat.dot(h, v) == 0 for v in others)]
    if not cands:
        raise InputError(f"no Hilbert basis element is supported on {u} alone")
    return max(cands, key=lambda h: (lat.dot(h, u), h))


def sharpness_witness(ring: SemigroupRing, ray: Sequence[int], E: int, D: int) -> Vector:
    """``ceil(E/D)`` copies of :func:`pure_power_generator`: lies in ``P^(E)`` for
    every prime whose face contains ``ray`` but only in ``P^ceil(E/D)``."""
    return lat.scale(-(-E // D), pure_power_generator(ring, ray))
