"""Degree-bounded verification of containment statements over ring families.

A :class:`CheckPlan` names a family, a statement tag and the parameter ranges;
:func:`run` evaluates every individual containment and collects them into a
:class:`CheckReport`.  Each record carries the expected outcome (the statements
are theorems, so a mismatch means a defect here) and the first counterexample
in canonical order, if any.  Nothing beyond the stated degree bound is claimed.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable

from . import lattice as lat
from .classgroup import WeilDivisor, class_group, exponent, principal_generator
from .cone import classify
from .errors import ConfigurationError, InputError
from .families import (
    FamilySpec,
    build,
    hypersurface_face_subset,
    hypersurface_subset_closed_form,
    sharpness_witness,
    veronese_subset_closed_form,
)
from .ideals import (
    MonomialPrime,
    PureHeightOneIdeal,
    containment_check,
    equality_check,
    equivalence_sides,
    expand_to_product,
    monomial_primes,
    partition_mismatch,
    power_membership,
    prime_from_rays,
    pure_h1_product_mismatch,
    symbolic_membership,
)
from .semigroup import SemigroupRing, degree, enumerate_points

THEOREMS = (
    "lemma11",
    "thm12_tensor",
    "thm52_hypersurface",
    "thm54_veronese",
    "lemma43_equivalence",
    "eqn41_partition",
    "prop21_expansion",
)
SCHEMA_VERSION = 1
BOUND_NOTE = "degree-bounded: every containment is verified only on semigroup points of degree <= degree_bound"


@dataclass(frozen=True)
class CheckPlan:
    family: FamilySpec
    theorem: str
    r_max: int = 3
    E_list: tuple[int, ...] = ()
    degree_bound: int = 10
    primes: str = "all"
    faces: tuple[tuple[tuple[int, ...], ...], ...] = ()
    N_max: int | None = None

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise ConfigurationError(f"unknown theorem tag {self.theorem!r}; expected one of {', '.join(THEOREMS)}")
        if self.r_max < 1 or self.degree_bound < 1:
            raise ConfigurationError("r_max and degree_bound must be positive")
        if any(E < 1 for E in self.E_list):
            raise ConfigurationError("exponents in E_list must be positive")
        if self.primes != "all" and not self.primes.startswith("height="):
            raise ConfigurationError(f"prime selector {self.primes!r} is not 'all' or 'height=K'")

    def to_json(self) -> dict:
        return {
            "family": self.family.to_json(),
            "theorem": self.theorem,
            "r_max": self.r_max,
            "E_list": list(self.E_list),
            "degree_bound": self.degree_bound,
            "primes": self.primes,
            "faces": [[list(u) for u in f] for f in self.faces],
            "N_max": self.N_max,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CheckPlan":
        return cls(
            FamilySpec.from_json(data["family"]),
            data["theorem"],
            int(data.get("r_max", 3)),
            tuple(int(e) for e in data.get("E_list", ())),
            int(data.get("degree_bound", 10)),
            data.get("primes", "all"),
            tuple(tuple(tuple(u) for u in f) for f in data.get("faces", ())),
            data.get("N_max"),
        )


@dataclass
class CheckReport:
    plan: CheckPlan
    checks: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed: float | None = None

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.checks if not c["pass"]]

    @property
    def verdict(self) -> str:
        return "FAIL" if self.failures else "PASS"

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "kind": "check_report",
            "plan": self.plan.to_json(),
            "scope": BOUND_NOTE,
            "checks": self.checks,
            "notes": self.notes,
            "summary": {
                "total": len(self.checks),
                "passed": len(self.checks) - len(self.failures),
                "failed": len(self.failures),
            },
            "verdict": self.verdict,
        }
        if include_timing and self.elapsed is not None:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out

    def dumps(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_json(include_timing), sort_keys=True)


def _record(report: CheckReport, name: str, prime, expected: bool, holds: bool,
            counterexample=None, **params) -> None:
    rec = {"check": name}
    if prime is not None:
        rec["prime"] = [list(u) for u in prime.face_rays]
        rec["height"] = prime.height
    rec.update(params)
    rec["expected"] = "holds" if expected else "fails"
    rec["holds"] = holds
    rec["counterexample"] = None if counterexample is None else list(counterexample)
    rec["pass"] = holds == expected
    report.checks.append(rec)


def _select_primes(plan: CheckPlan, ring: SemigroupRing, nonmaximal: bool) -> list[MonomialPrime]:
    if plan.faces:
        primes = [prime_from_rays(ring, f) for f in plan.faces]
    else:
        primes = monomial_primes(ring, maximal=not nonmaximal)
        if plan.primes.startswith("height="):
            h = int(plan.primes.split("=", 1)[1])
            primes = [p for p in primes if p.height == h]
    if nonmaximal:
        primes = [p for p in primes if p.height < ring.rank]
    return primes


def _require_bound(plan: CheckPlan, ring: SemigroupRing, primes) -> None:
    for p in primes:
        top = max(degree(ring, g) for g in p.generators)
        if plan.degree_bound < top:
            raise ConfigurationError(
                f"degree_bound {plan.degree_bound} is below the generator degree {top} "
                f"of the prime of {[list(u) for u in p.face_rays]}"
            )


def exponent_pipeline(family: FamilySpec) -> int | None:
    """Exponent of the class group of the family's ring; None when infinite."""
    ring = build(family)
    if not classify(ring.cone).simplicial:
        return None
    return exponent(class_group(ring))


def _r_range(plan: CheckPlan) -> range:
    return range(2, plan.r_max + 1) if plan.r_max >= 2 else range(1, 2)


def _lemma11(plan: CheckPlan, report: CheckReport) -> None:
    ring = build(plan.family)
    D = exponent_pipeline(plan.family)
    if D is None:
        report.notes.append("class group is infinite; pure height one checks skipped")
        return
    report.notes.append(f"class group exponent D = {D}")
    primes = _select_primes(plan, ring, nonmaximal=True)
    primes = [p for p in primes if p.height == 1]
    _require_bound(plan, ring, primes)
    pts = enumerate_points(ring, plan.degree_bound)
    for P in primes:
        for r in _r_range(plan):
            res = containment_check(P, D * (r - 1) + 1, r, plan.degree_bound, pts)
            _record(report, "symbolic_containment", P, True, res.holds, res.counterexample,
                    E=D * (r - 1) + 1, r=r)
        q = PureHeightOneIdeal.from_prime(P)
        for r in _r_range(plan):
            for s in range(D):
                bad = pure_h1_product_mismatch(q, D, r, s, plan.degree_bound)
                _record(report, "product_formula", P, True, bad is None, bad, D=D, r=r, s=s)
        gen = principal_generator(ring, D * WeilDivisor.prime(ring, P.face_rays[0]))
        _record(report, "principal_D_th_power", P, True, gen is not None, None,
                D=D, generator=None if gen is None else list(gen))


def _thm12(plan: CheckPlan, report: CheckReport) -> None:
    ring = build(plan.family)
    parts = plan.family.components()
    exps = [exponent_pipeline(f) for f in parts]
    if any(e is None for e in exps):
        raise ConfigurationError("a tensor factor has an infinite class group")
    D = max(exps)
    report.notes.append(f"factor class group exponents {exps}; D = {D}")
    primes = _select_primes(plan, ring, nonmaximal=False)
    _require_bound(plan, ring, primes)
    pts = enumerate_points(ring, plan.degree_bound)
    for Q in primes:
        for r in _r_range(plan):
            res = containment_check(Q, D * (r - 1) + 1, r, plan.degree_bound, pts)
            _record(report, "symbolic_containment", Q, True, res.holds, res.counterexample,
                    E=D * (r - 1) + 1, r=r)


def _thm52(plan: CheckPlan, report: CheckReport) -> None:
    if plan.family.kind != "hypersurface":
        raise ConfigurationError("thm52_hypersurface needs a hypersurface family")
    n, D = plan.family.n, plan.family.D
    ring = build(plan.family)
    primes = _select_primes(plan, ring, nonmaximal=True)
    _require_bound(plan, ring, primes)
    pts = enumerate_points(ring, plan.degree_bound)
    E_list = plan.E_list or tuple(range(1, 6))
    for P in primes:
        j = P.height
        subset = hypersurface_face_subset(n, D, P.face_rays)
        if D >= j:
            agree = True
            bad = None
            for E in E_list:
                for m in pts:
                    if hypersurface_subset_closed_form(n, D, subset, m, E) != symbolic_membership(P, E, m):
                        agree, bad = False, m
                        break
                if not agree:
                    break
            _record(report, "closed_form_agreement", P, True, agree, bad, E_list=list(E_list))
        if D <= j:
            for E in E_list:
                res = equality_check(P, E, plan.degree_bound, pts)
                _record(report, "symbolic_equals_ordinary", P, True, res.holds, res.counterexample, E=E)
        if D >= j:
            for r in _r_range(plan):
                E = D * (r - 1) + 1
                res = containment_check(P, E, j * (r - 1) + 1, plan.degree_bound, pts)
                _record(report, "refined_containment", P, True, res.holds, res.counterexample,
                        E=E, r=j * (r - 1) + 1)
                res = containment_check(P, E, r, plan.degree_bound, pts)
                _record(report, "symbolic_containment", P, True, res.holds, res.counterexample, E=E, r=r)


def _thm54(plan: CheckPlan, report: CheckReport) -> None:
    if plan.family.kind != "veronese":
        raise ConfigurationError("thm54_veronese needs a veronese family")
    n, D = plan.family.n, plan.family.D
    ring = build(plan.family)
    primes = _select_primes(plan, ring, nonmaximal=True)
    _require_bound(plan, ring, primes)
    pts = enumerate_points(ring, plan.degree_bound)
    E_list = plan.E_list or tuple(D * (r - 1) + 1 for r in _r_range(plan))
    for P in primes:
        for E in E_list:
            r = -(-E // D)
            res = containment_check(P, E, r, plan.degree_bound, pts)
            _record(report, "symbolic_containment", P, True, res.holds, res.counterexample, E=E, r=r)
            res = containment_check(P, E, r + 1, plan.degree_bound, pts)
            _record(report, "sharpness", P, False, res.holds, res.counterexample, E=E, r=r + 1)
            w = sharpness_witness(ring, P.face_rays[0], E, D)
            ok = symbolic_membership(P, E, w) and not power_membership(P.base, r + 1, w)
            _record(report, "pure_power_witness", P, True, ok, None, E=E, r=r + 1, witness=list(w))
        agree, bad = True, None
        for E in range(1, 6):
            for m in pts:
                if veronese_subset_closed_form(n, D, P.face_rays, m, E) != symbolic_membership(P, E, m):
                    agree, bad = False, m
                    break
            if not agree:
                break
        _record(report, "closed_form_agreement", P, True, agree, bad, E_list=[1, 2, 3, 4, 5])


def _lemma43(plan: CheckPlan, report: CheckReport) -> None:
    ring = build(plan.family)
    D = exponent_pipeline(plan.family) or 1
    primes = _select_primes(plan, ring, nonmaximal=True)
    _require_bound(plan, ring, primes)
    E_list = plan.E_list or (D,)
    for P in primes:
        for E in E_list:
            N_max = plan.N_max if plan.N_max is not None else 2 * E + 1
            a, b = equivalence_sides(P, E, N_max, plan.degree_bound)
            _record(report, "equivalence", P, True, a == b, None,
                    E=E, N_max=N_max, side_ceiling=a, side_multiplier=b)


def _eqn41(plan: CheckPlan, report: CheckReport) -> None:
    ring = build(plan.family)
    if not ring.factors:
        raise ConfigurationError("eqn41_partition needs a tensor or primorial family")
    primes = _select_primes(plan, ring, nonmaximal=False)
    _require_bound(plan, ring, primes)
    for Q in primes:
        for N in plan.E_list or (2, 3):
            bad = partition_mismatch(Q, N, plan.degree_bound)
            _record(report, "partition_containment", Q, True, bad is None, bad, N=N)


def _prop21(plan: CheckPlan, report: CheckReport) -> None:
    big = build(plan.family)
    if not big.factors:
        raise ConfigurationError("prop21_expansion needs a tensor or primorial family")
    E_list = plan.E_list or tuple(range(1, 5))
    for i, R in enumerate(big.factors):
        pts = enumerate_points(R, plan.degree_bound)
        for P in monomial_primes(R):
            PR = expand_to_product(P, big, i)
            bad = None
            for E in E_list:
                for x in pts:
                    y = lat.embed(x, big.offsets[i], big.rank)
                    if symbolic_membership(PR, E, y) != symbolic_membership(P, E, x) or \
                            power_membership(PR.base, E, y) != power_membership(P.base, E, x):
                        bad = y
                        break
                if bad is not None:
                    break
            _record(report, "expansion_membership", PR, True, bad is None, bad,
                    factor=i, E_list=list(E_list))


_RUNNERS: dict[str, Callable[[CheckPlan, CheckReport], None]] = {
    "lemma11": _lemma11,
    "thm12_tensor": _thm12,
    "thm52_hypersurface": _thm52,
    "thm54_veronese": _thm54,
    "lemma43_equivalence": _lemma43,
    "eqn41_partition": _eqn41,
    "prop21_expansion": _prop21,
}


def run(plan: CheckPlan) -> CheckReport:
    """Execute every check of ``plan``; records are in canonical prime/parameter order."""
    report = CheckReport(plan)
    start = time.perf_counter()
    try:
        _RUNNERS[plan.theorem](plan, report)
    except InputError as exc:
        raise ConfigurationError(str(exc)) from exc
    report.elapsed = time.perf_counter() - start
    return report
