"""Search for and verify infeasibility certificates of shadowing systems.

A certificate for a system is a tuple of positive integer coefficients
c_2..c_V whose weighted inequality sum is strictly convex (positive definite
Hessian) with a strictly positive exact minimum; any solution of the system
would make that sum nonpositive, so a certificate proves unsolvability.

The randomized search draws coefficient tuples uniformly from
[coeff_min, coeff_max] using ``random.Random`` (CPython's Mersenne Twister);
each system gets its own stream seeded with (base_seed + system_id) mod 2**64,
so reports are reproducible for a fixed seed and independent of worker count.
Trial arithmetic runs fraction-free over the integers (the Hessians here are
integer matrices), which keeps every intermediate value exact.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence, Union

from monoproof.ratcore import (
    RatMatrix,
    RatVector,
    _back_substitute,
    is_positive_definite,
    solve_linear,
)
from monoproof.expansion import (
    QuadraticForm,
    ShadowSystem,
    enumerate_systems,
    inequality_forms,
    weighted_inequality_sum,
)

_SEED_MASK = (1 << 64) - 1


class NotConvex(ValueError):
    """Raised when a minimization is attempted on a non-PD Hessian."""


def hessian_of(form: QuadraticForm) -> RatMatrix:
    """The constant Hessian 2A of f(x) = x^T A x + b.x + c0."""
    return form.A.scale(2)


def minimize_strictly_convex(form: QuadraticForm) -> tuple[RatVector, Fraction]:
    """Exact global minimizer and minimum of a strictly convex quadratic.

    The stationarity condition 2A x = -b is a linear system; its unique
    solution is the minimizer.  Raises NotConvex when the Hessian is not
    positive definite.
    """
    hessian = hessian_of(form)
    if not is_positive_definite(hessian):
        raise NotConvex("Hessian is not positive definite")
    minimizer = solve_linear(hessian, -form.b)
    return minimizer, form.evaluate(minimizer)


@dataclass(frozen=True)
class SearchConfig:
    """Randomized-search knobs: coefficient range, trial budget, base seed."""

    coeff_min: int = 1
    coeff_max: int = 101
    max_trials: int = 100_000
    base_seed: int = 0

    def __post_init__(self):
        if not 1 <= self.coeff_min <= self.coeff_max:
            raise ValueError("need 1 <= coeff_min <= coeff_max")
        if self.max_trials < 1:
            raise ValueError("max_trials must be at least 1")


@dataclass(frozen=True)
class Certificate:
    """Proof that one shadowing system is unsolvable: positive integer
    coefficients with PD Hessian, exact minimizer, and positive minimum."""

    system: ShadowSystem
    coeffs: tuple[int, ...]
    minimizer: RatVector
    min_value: Fraction
    trials: int = 1


@dataclass(frozen=True)
class Exhausted:
    """Search gave up on a system; counts how each trial kind failed."""

    system: ShadowSystem
    trials: int
    negative_minima_seen: int
    non_pd_seen: int


SystemResult = Union[Certificate, Exhausted]


@dataclass(frozen=True)
class VerifyResult:
    """Deterministic recheck of a coefficient tuple for one system."""

    hessian_pd: bool
    min_value: Optional[Fraction]
    positive: bool
    minimizer: Optional[RatVector] = None


def verify_certificate(V: int, system: ShadowSystem, coeffs: Sequence[int]) -> VerifyResult:
    """Recompute the weighted form, its PD status and exact minimum.

    A non-PD Hessian is reported as hessian_pd=False rather than raised.
    """
    if V != system.V:
        raise ValueError(f"vertex count {V} does not match system (V={system.V})")
    form = weighted_inequality_sum(system, coeffs)
    try:
        minimizer, min_value = minimize_strictly_convex(form)
    except NotConvex:
        return VerifyResult(hessian_pd=False, min_value=None, positive=False)
    return VerifyResult(
        hessian_pd=True,
        min_value=min_value,
        positive=min_value > 0,
        minimizer=minimizer,
    )


def _integer_payload(system: ShadowSystem):
    """Per-system integer data for the trial loop: Hessian 2A_i, linear and
    constant parts of each Q_i.  All of these are integral by construction."""
    hessians = []
    lins = []
    consts = []
    for form in inequality_forms(system):
        h_rows = []
        for r in range(form.n):
            doubled = [2 * e for e in form.A[r]]
            assert all(v.denominator == 1 for v in doubled)
            h_rows.append([int(v) for v in doubled])
        assert all(e.denominator == 1 for e in form.b)
        assert form.c0.denominator == 1
        hessians.append(h_rows)
        lins.append([int(e) for e in form.b])
        consts.append(int(form.c0))
    return hessians, lins, consts


def _pd_solve(hessian: list[list[int]], neg_b: list[int]) -> Optional[list[Fraction]]:
    """One fraction-free pass: PD check and stationary-point solve combined.

    Bareiss elimination without pivoting leaves the leading principal minors
    on the diagonal; if they are all positive the matrix is PD and the
    elimination doubles as the forward phase of solving H x = -b.  Returns
    None as soon as a minor fails to be positive.
    """
    n = len(hessian)
    aug = [hessian[i] + [neg_b[i]] for i in range(n)]
    prev = 1
    for k in range(n):
        pivot = aug[k][k]
        if pivot <= 0:
            return None
        for i in range(k + 1, n):
            aik = aug[i][k]
            row_i = aug[i]
            row_k = aug[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) // prev
        prev = pivot
    return _back_substitute(aug)


def search_certificate(system: ShadowSystem, cfg: SearchConfig) -> SystemResult:
    """Randomized certificate search for one system.

    Per trial: draw c_2..c_V uniformly from [coeff_min, coeff_max], test the
    Hessian for positive definiteness, minimize exactly, and accept iff the
    minimum is strictly positive.  Returns the first Certificate found, or
    Exhausted with per-failure-kind counters after max_trials draws.
    """
    hessians, lins, consts = _integer_payload(system)
    n = len(lins[0])
    m = len(lins)
    rng = random.Random(cfg.base_seed)
    negative, non_pd = 0, 0
    for trial in range(1, cfg.max_trials + 1):
        coeffs = tuple(rng.randint(cfg.coeff_min, cfg.coeff_max) for _ in range(m))
        hessian = [
            [sum(coeffs[f] * hessians[f][r][c] for f in range(m)) for c in range(n)]
            for r in range(n)
        ]
        neg_b = [-sum(coeffs[f] * lins[f][r] for f in range(m)) for r in range(n)]
        minimizer = _pd_solve(hessian, neg_b)
        if minimizer is None:
            non_pd += 1
            continue
        c0 = sum(coeffs[f] * consts[f] for f in range(m))
        min_value = c0 - sum(nb * x for nb, x in zip(neg_b, minimizer)) / 2
        if min_value > 0:
            return Certificate(
                system=system,
                coeffs=coeffs,
                minimizer=RatVector(minimizer),
                min_value=min_value,
                trials=trial,
            )
        negative += 1
    return Exhausted(
        system=system,
        trials=cfg.max_trials,
        negative_minima_seen=negative,
        non_pd_seen=non_pd,
    )


@dataclass(frozen=True)
class ProofReport:
    """Aggregate outcome of searching every shadowing system for one V."""

    V: int
    base_seed: int
    coeff_min: int
    coeff_max: int
    max_trials: int
    systems: tuple[SystemResult, ...]
    wall_clock_seconds: float

    @property
    def all_certified(self) -> bool:
        return all(isinstance(r, Certificate) for r in self.systems)

    @property
    def verdict(self) -> str:
        return "unsolvable" if self.all_certified else "undetermined"

    @property
    def certified_count(self) -> int:
        return sum(isinstance(r, Certificate) for r in self.systems)

    def to_json(self) -> dict:
        rows = []
        for result in self.systems:
            row = {
                "system_id": result.system.system_id,
                "j": list(result.system.j),
                "status": "certified" if isinstance(result, Certificate) else "exhausted",
                "coeffs": list(result.coeffs) if isinstance(result, Certificate) else None,
                "min_value": str(result.min_value) if isinstance(result, Certificate) else None,
                "trials": result.trials,
            }
            if isinstance(result, Exhausted):
                row["negative_minima_seen"] = result.negative_minima_seen
                row["non_pd_seen"] = result.non_pd_seen
            rows.append(row)
        return {
            "V": self.V,
            "verdict": self.verdict,
            "base_seed": self.base_seed,
            "coeff_range": [self.coeff_min, self.coeff_max],
            "max_trials": self.max_trials,
            "systems": rows,
            "wall_clock_seconds": self.wall_clock_seconds,
        }


def _search_task(args: tuple[ShadowSystem, SearchConfig]) -> SystemResult:
    system, cfg = args
    return search_certificate(system, cfg)


def prove_unsolvable(
    V: int, cfg: Optional[SearchConfig] = None, jobs: int = 1
) -> ProofReport:
    """Search all (V-1)! systems; every one certified proves that no
    mono-unstable 0-skeleton with V vertices exists.

    Each found certificate is re-verified through the independent
    full-precision path before it enters the report.  Deterministic for a
    fixed config: per-system seeds do not depend on scheduling or jobs.
    """
    if V < 4:
        raise ValueError("proof runs start at V = 4")
    cfg = cfg if cfg is not None else SearchConfig()
    started = time.perf_counter()
    tasks = [
        (system, replace(cfg, base_seed=(cfg.base_seed + system.system_id) & _SEED_MASK))
        for system in enumerate_systems(V)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_task, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))
    else:
        results = [_search_task(t) for t in tasks]
    for result in results:
        if isinstance(result, Certificate):
            check = verify_certificate(V, result.system, result.coeffs)
            if not (check.hessian_pd and check.positive and check.min_value == result.min_value):
                raise RuntimeError(
                    f"internal error: certificate for system {result.system.system_id} "
                    "failed exact re-verification"
                )
    return ProofReport(
        V=V,
        base_seed=cfg.base_seed,
        coeff_min=cfg.coeff_min,
        coeff_max=cfg.coeff_max,
        max_trials=cfg.max_trials,
        systems=tuple(results),
        wall_clock_seconds=time.perf_counter() - started,
    )
