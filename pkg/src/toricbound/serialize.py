"""JSON readers and writers for cones, rings, ideals and results."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from . import lattice as lat
from .cone import Cone, FaceDescriptor
from .errors import InputError
from .ideals import ContainmentResult, MonomialIdeal, MonomialPrime, monomial_ideal
from .lattice import Vector
from .semigroup import SemigroupRing

SCHEMA_VERSION = 1


def _int_vector(raw: Any, rank: int | None = None) -> Vector:
    if not isinstance(raw, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in raw):
        raise InputError(f"expected a list of integers, got {raw!r}")
    if rank is not None and len(raw) != rank:
        raise InputError(f"vector {raw} does not have rank {rank}")
    return tuple(raw)


def vectors_from_json(raw: Any, rank: int | None = None) -> list[Vector]:
    if not isinstance(raw, list):
        raise InputError(f"expected a list of integer vectors, got {raw!r}")
    return [_int_vector(v, rank) for v in raw]


def vectors_to_json(vs) -> list[list[int]]:
    return [list(v) for v in vs]


def cone_to_json(c: Cone) -> dict:
    return {"rank": c.ambient_rank, "rays": vectors_to_json(c.rays)}


def cone_from_json(data: Any) -> Cone:
    """Read ``{"rank": n, "rays": [...]}`` (or an object holding one under ``"cone"``).

    Rays are primitivized and deduplicated.
    """
    if isinstance(data, dict) and "cone" in data and "rays" not in data:
        data = data["cone"]
    if not isinstance(data, dict) or "rank" not in data or "rays" not in data:
        raise InputError('cone JSON must be an object with "rank" and "rays"')
    rank = data["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 0:
        raise InputError(f"rank must be a nonnegative integer, got {rank!r}")
    rays = vectors_from_json(data["rays"], rank)
    if any(not any(r) for r in rays):
        raise InputError("the zero vector is not a ray")
    return Cone.from_generators(rank, rays)


def load_json(source: str) -> Any:
    """Parse inline JSON text, or the contents of the file it names."""
    text = source.strip()
    if not text.startswith(("{", "[")):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def face_to_json(f: FaceDescriptor) -> dict:
    return {"rays": vectors_to_json(f.ray_subset), "dim": f.dim, "v_F": list(f.v_F)}


def ideal_to_json(I: MonomialIdeal | MonomialPrime) -> dict:
    ring = I.ring
    out = {"ring": cone_to_json(ring.cone), "generators": vectors_to_json(I.generators)}
    if isinstance(I, MonomialPrime):
        out["face"] = vectors_to_json(I.face_rays)
        out["height"] = I.height
        out["v_F"] = list(I.v_F)
    return out


def ideal_from_json(data: Any, ring: SemigroupRing | None = None) -> MonomialIdeal:
    if not isinstance(data, dict) or "ring" not in data or "generators" not in data:
        raise InputError('ideal JSON must be an object with "ring" and "generators"')
    cone = cone_from_json(data["ring"])
    if ring is None or ring.cone != cone:
        ring = SemigroupRing.from_cone(cone)
    return monomial_ideal(ring, vectors_from_json(data["generators"], ring.rank))


def containment_from_json(data: Any) -> ContainmentResult:
    if not isinstance(data, dict) or not {"holds", "counterexample", "degree_bound"} <= data.keys():
        raise InputError("check result JSON needs holds, counterexample and degree_bound")
    return ContainmentResult.from_json(data)


def hilbert_basis_from_json(data: Any) -> list[Vector]:
    return vectors_from_json(data)


def class_group_from_json(data: Any) -> dict:
    """Validate a class group report; an infinite exponent comes back as None."""
    if not isinstance(data, dict) or not {"free_rank", "invariant_factors", "exponent"} <= data.keys():
        raise InputError("class group JSON needs free_rank, invariant_factors and exponent")
    factors = data["invariant_factors"]
    if any(not isinstance(d, int) or d < 2 for d in factors):
        raise InputError("invariant factors must be integers > 1")
    if any(b % a for a, b in zip(factors, factors[1:])):
        raise InputError("invariant factors must form a divisibility chain")
    exp = data["exponent"]
    if exp != "infinite" and not isinstance(exp, int):
        raise InputError('exponent must be an integer or "infinite"')
    return {"free_rank": int(data["free_rank"]), "invariant_factors": list(factors),
            "exponent": None if exp == "infinite" else exp}
