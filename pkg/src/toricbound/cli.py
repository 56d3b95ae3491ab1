"""Command line interface: ``toricbound <subcommand> [options]``.

Every subcommand writes JSON (to stdout or ``--out``).  Exit status is 0 on
success, 1 when a check fails and 2 on bad input or configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .classgroup import class_group
from .cone import faces
from .errors import ConfigurationError, InputError, ToricError
from .families import FamilySpec, build, multiplier, parse_factors
from .harness import THEOREMS, CheckPlan, run
from .ideals import (
    containment_check,
    ordinary_order,
    power_membership,
    prime_from_rays,
    symbolic_membership,
    symbolic_order,
)
from .semigroup import SemigroupRing, contains, enumerate_points
from .serialize import (
    SCHEMA_VERSION,
    cone_from_json,
    cone_to_json,
    face_to_json,
    ideal_to_json,
    load_json,
    vectors_from_json,
    vectors_to_json,
)

_DEFAULT_FAMILY = {"thm54_veronese": "veronese", "thm52_hypersurface": "hypersurface"}


def _family_from_args(args, default_kind: str | None = None) -> FamilySpec | None:
    kind = args.family or default_kind
    if kind is None:
        return None
    if kind == "tensor":
        if not args.factors:
            raise InputError("--family tensor needs --factors kind:n:D,...")
        return FamilySpec("tensor", factors=parse_factors(args.factors))
    if kind == "primorial":
        return FamilySpec("primorial", n=args.n or 3, num_primes=args.num_primes or 2)
    return FamilySpec(kind, args.n or 2, args.D or 2)


def _ring_from_args(args, default_kind: str | None = None) -> SemigroupRing:
    if args.cone is not None:
        if args.family:
            raise InputError("give either --cone or --family, not both")
        return SemigroupRing.from_cone(cone_from_json(load_json(args.cone)))
    spec = _family_from_args(args, default_kind)
    if spec is None:
        raise InputError("a ring is required: use --family ... or --cone JSON")
    return build(spec)


def _face(args, ring: SemigroupRing):
    if args.face is None:
        raise InputError("--face is required (JSON list of rays)")
    return prime_from_rays(ring, vectors_from_json(load_json(args.face), ring.rank))


def _point(args, ring: SemigroupRing):
    if args.point is None:
        raise InputError("--point is required (JSON integer vector)")
    (m,) = vectors_from_json([load_json(args.point)], ring.rank)
    if not contains(ring, m):
        raise InputError(f"{list(m)} is not in the semigroup")
    return m


def _exponents(args) -> tuple[int, ...]:
    if args.E is None:
        return ()
    try:
        return tuple(int(x) for x in args.E.split(","))
    except ValueError:
        raise InputError(f"--E must be an integer or comma list, got {args.E!r}") from None


def _single_E(args) -> int:
    Es = _exponents(args)
    if len(Es) != 1:
        raise InputError("--E must be a single positive integer here")
    return Es[0]


def _envelope(kind: str, **fields) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **fields}


def cmd_hilbert_basis(args) -> tuple[Any, int]:
    return vectors_to_json(_ring_from_args(args).hilbert_basis), 0


def cmd_class_group(args) -> tuple[Any, int]:
    ring = _ring_from_args(args)
    return _envelope("class_group", ring=cone_to_json(ring.cone), **class_group(ring).to_json()), 0


def cmd_faces(args) -> tuple[Any, int]:
    ring_cone = (cone_from_json(load_json(args.cone)) if args.cone is not None
                 else _ring_from_args(args).cone)
    return _envelope("faces", cone=cone_to_json(ring_cone),
                     faces=[face_to_json(f) for f in faces(ring_cone)]), 0


def cmd_prime(args) -> tuple[Any, int]:
    ring = _ring_from_args(args)
    return _envelope("prime", **ideal_to_json(_face(args, ring))), 0


def cmd_symbolic_order(args) -> tuple[Any, int]:
    ring = _ring_from_args(args)
    P = _face(args, ring)
    m = _point(args, ring)
    return _envelope("symbolic_order", face=vectors_to_json(P.face_rays), point=list(m),
                     order=symbolic_order(P, m)), 0


def cmd_ordinary_order(args) -> tuple[Any, int]:
    ring = _ring_from_args(args)
    P = _face(args, ring)
    m = _point(args, ring)
    return _envelope("ordinary_order", face=vectors_to_json(P.face_rays), point=list(m),
                     order=ordinary_order(P.base, m)), 0


def cmd_check(args) -> tuple[Any, int]:
    if args.theorem is None:
        # a single containment P^(E) in P^r on one prime
        ring = _ring_from_args(args)
        P = _face(args, ring)
        if args.r is None:
            raise InputError("--r is required for a single containment check")
        res = containment_check(P, _single_E(args), args.r, args.degree_bound)
        out = _envelope("containment", face=vectors_to_json(P.face_rays), E=_single_E(args),
                        r=args.r, **res.to_json())
        return out, 0 if res.holds else 1
    spec = _family_from_args(args, _DEFAULT_FAMILY.get(args.theorem))
    if spec is None:
        raise ConfigurationError(f"--family is required for {args.theorem}")
    faces_arg = ()
    if args.face is not None:
        faces_arg = (tuple(vectors_from_json(load_json(args.face))),)
    plan = CheckPlan(
        family=spec,
        theorem=args.theorem,
        r_max=args.rmax,
        E_list=_exponents(args),
        degree_bound=args.degree_bound,
        primes=args.primes,
        faces=faces_arg,
        N_max=args.N_max,
    )
    report = run(plan)
    return report.to_json(include_timing=args.timing), 0 if report.verdict == "PASS" else 1


def cmd_witness(args) -> tuple[Any, int]:
    """Search for the first point of ``P^(E)`` outside ``P^r``."""
    ring = _ring_from_args(args)
    P = _face(args, ring)
    E = _single_E(args)
    r = args.r if args.r is not None else E
    found = None
    for m in enumerate_points(ring, args.degree_bound):
        if symbolic_membership(P, E, m) and not power_membership(P.base, r, m):
            found = m
            break
    out = _envelope("witness", face=vectors_to_json(P.face_rays), E=E, r=r,
                    degree_bound=args.degree_bound,
                    witness=None if found is None else list(found))
    if found is not None:
        out["symbolic_order"] = symbolic_order(P, found)
        out["ordinary_order"] = ordinary_order(P.base, found)
    return out, 0


def cmd_build_family(args) -> tuple[Any, int]:
    spec = _family_from_args(args)
    if spec is None:
        raise InputError("--family is required")
    ring = build(spec)
    return _envelope("family", family=spec.to_json(), rank=ring.rank, D=multiplier(spec),
                     cone=cone_to_json(ring.cone), hilbert_basis=vectors_to_json(ring.hilbert_basis),
                     grading=list(ring.grading)), 0


COMMANDS = {
    "hilbert-basis": cmd_hilbert_basis,
    "class-group": cmd_class_group,
    "faces": cmd_faces,
    "prime": cmd_prime,
    "symbolic-order": cmd_symbolic_order,
    "ordinary-order": cmd_ordinary_order,
    "check": cmd_check,
    "witness": cmd_witness,
    "build-family": cmd_build_family,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--family", choices=["hypersurface", "veronese", "tensor", "primorial", "orthant"])
        p.add_argument("--n", type=int)
        p.add_argument("--D", type=int)
        p.add_argument("--factors", help="comma list of kind:n:D")
        p.add_argument("--num-primes", type=int)
        p.add_argument("--cone", help="cone JSON (inline or file path)")
        p.add_argument("--face", help="JSON list of rays spanning a face")
        p.add_argument("--point", help="JSON integer vector")
        p.add_argument("--E", help="exponent (comma list allowed for check)")
        p.add_argument("--r", type=int)
        p.add_argument("--rmax", type=int, default=3)
        p.add_argument("--N-max", type=int)
        p.add_argument("--degree-bound", type=int, default=10)
        p.add_argument("--primes", default="all", help="'all' or 'height=K'")
        p.add_argument("--theorem", choices=THEOREMS)
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--pretty", action="store_true", help="human-readable output")
        p.add_argument("--timing", action="store_true", help="include elapsed time in reports")
    return parser


def _pretty(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if obj.get("kind") == "check_report":
            return _pretty_report(obj)
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                         (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(
            _pretty(x, indent) if isinstance(x, dict) else f"{pad}{json.dumps(x)}" for x in obj
        )
    return f"{pad}{json.dumps(obj)}"


def _pretty_report(rep: dict) -> str:
    rows = [("check", "prime", "params", "holds", "pass", "counterexample")]
    skip = {"check", "prime", "height", "expected", "holds", "counterexample", "pass"}
    for c in rep["checks"]:
        params = " ".join(f"{k}={json.dumps(v)}" for k, v in c.items() if k not in skip)
        rows.append((c["check"], json.dumps(c.get("prime")), params, str(c["holds"]),
                     "ok" if c["pass"] else "FAIL", json.dumps(c["counterexample"])))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() for r in rows]
    s = rep["summary"]
    lines.append(f"{rep['plan']['theorem']}: {s['passed']}/{s['total']} passed ({rep['scope']})")
    lines.append(f"verdict: {rep['verdict']}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result, code = COMMANDS[args.command](args)
    except (ToricError, ValueError) as exc:
        print(f"toricbound {args.command}: error: {exc}", file=sys.stderr)
        return 2
    text = _pretty(result) if args.pretty else json.dumps(result)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"toricbound: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
