"""Return probabilities of the simple symmetric walk on the integer lattice.

The walk on Z^k moves one unit along a coordinate axis, direction and axis
uniform over the 2k unit steps.  A closed path of length 2n must balance
positive and negative steps on every axis, so with i_j round trips on axis j,

    P(at origin after 2n steps) = (2k)^-2n * sum over i_1+..+i_k = n
                                  of (2n)! / (i_1!^2 ... i_k!^2)

computed here as an exact rational.  Two independent oracles back it up:
exhaustive enumeration of every step sequence, and seeded Monte Carlo
(walk paths, and sampling the matching arcsine-beta moment).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .compositions import weak_compositions
from .exact import binomial, factorial
from .render import decimal15, fraction_str

__all__ = [
    "WalkSpec",
    "PathCount",
    "SimulationResult",
    "PathBudgetError",
    "DEFAULT_PATH_BUDGET",
    "return_probability",
    "return_probability_odd",
    "closed_form_1d",
    "closed_form_2d",
    "path_count",
    "brute_force_return",
    "simulate_walk",
    "simulate_beta_moment",
]

DEFAULT_PATH_BUDGET = 10_000_000

_CHUNK = 1 << 17  # simulation draw block; fixed so chunked sums are stable


class PathBudgetError(ValueError):
    """Exhaustive enumeration would exceed the path budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration needs a budget of {required} paths "
            f"(budget is {budget})"
        )


@dataclass(frozen=True)
class WalkSpec:
    """Walk on Z^dimension, observed after 2*half_steps steps."""

    dimension: int
    half_steps: int

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.half_steps < 1:
            raise ValueError("half_steps must be >= 1")

    @property
    def step_probability(self) -> Fraction:
        return Fraction(1, 2 * self.dimension)


@dataclass(frozen=True)
class PathCount:
    """Closed-path count out of all (2k)^2n step sequences."""

    count: int
    total_paths: int

    def __post_init__(self) -> None:
        if not 0 <= self.count <= self.total_paths:
            raise ValueError("count must lie in [0, total_paths]")

    @property
    def probability(self) -> Fraction:
        return Fraction(self.count, self.total_paths)

    def to_json_obj(self) -> dict:
        return {
            "count": str(self.count),
            "totalPaths": str(self.total_paths),
            "probability": fraction_str(self.probability),
            "decimal": decimal15(self.probability),
        }


@dataclass(frozen=True)
class SimulationResult:
    """Monte Carlo estimate with its exact reference and z-score.

    ``hits`` is the origin-return count for walk simulations and None for
    moment sampling, where the summand is bounded but not Bernoulli and
    ``std_error`` is the sample standard error of the mean.
    """

    trials: int
    hits: Optional[int]
    estimate: float
    std_error: float
    exact_reference: Fraction
    z_score: float
    seed: int
    workers: int

    def to_json_obj(self) -> dict:
        return {
            "trials": self.trials,
            "hits": self.hits,
            "estimate": self.estimate,
            "stdError": self.std_error,
            "exactReference": fraction_str(self.exact_reference),
            "exactDecimal": decimal15(self.exact_reference),
            "zScore": self.z_score,
            "seed": self.seed,
            "workers": self.workers,
        }


# ---------------------------------------------------------------------------
# exact probabilities
# ---------------------------------------------------------------------------


def path_count(dim: int, half_steps: int) -> PathCount:
    """Closed-path count via the per-axis round-trip composition sum."""
    if dim < 1 or half_steps < 1:
        raise ValueError("dim and half_steps must be >= 1")
    two_n = 2 * half_steps
    f2n = factorial(two_n)
    count = 0
    for comp in weak_compositions(half_steps, dim):
        term = f2n
        for i in comp:
            fi = factorial(i)
            term //= fi * fi
        count += term
    return PathCount(count, (2 * dim) ** two_n)


def return_probability(dim: int, half_steps: int) -> Fraction:
    """Probability the walk on Z^dim sits at the origin after 2n steps."""
    return path_count(dim, half_steps).probability


def return_probability_odd(dim: int, steps: int) -> Fraction:
    """After an odd number of steps the walk cannot be at the origin."""
    if steps < 1 or steps % 2 == 0:
        raise ValueError("steps must be a positive odd integer")
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return Fraction(0)


def closed_form_1d(n: int) -> Fraction:
    """C(2n, n) / 4^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Fraction(binomial(2 * n, n), 4 ** n)


def closed_form_2d(n: int) -> Fraction:
    """C(2n, n)^2 / 4^(2n), the planar reduction via Vandermonde."""
    if n < 1:
        raise ValueError("n must be >= 1")
    central = binomial(2 * n, n)
    return Fraction(central * central, 4 ** (2 * n))


# ---------------------------------------------------------------------------
# exhaustive oracle
# ---------------------------------------------------------------------------


def brute_force_return(dim: int, half_steps: int,
                       budget: int = DEFAULT_PATH_BUDGET) -> PathCount:
    """Count closed paths by walking every one of the (2k)^2n sequences.

    Each path is a base-(2k) digit string (digit d: axis d//2, direction
    +1 for even d, -1 for odd) advanced odometer-style, so the per-axis
    displacement is updated incrementally instead of being recomputed.
    """
    if dim < 1 or half_steps < 1:
        raise ValueError("dim and half_steps must be >= 1")
    steps = 2 * half_steps
    base = 2 * dim
    total = base ** steps
    if total > budget:
        raise PathBudgetError(total, budget)

    digits = [0] * steps
    disp = [0] * dim
    disp[0] = steps  # all-zero digit string: every step is +1 along axis 0
    zero_axes = dim - 1
    hits = 0
    for _ in range(total - 1):
        if zero_axes == dim:
            hits += 1
        # odometer advance, displacement maintained per digit change
        i = 0
        while True:
            d = digits[i]
            axis = d >> 1
            old = disp[axis]
            new = old - 1 if d & 1 == 0 else old + 1  # undo step d
            disp[axis] = new
            if old == 0:
                zero_axes -= 1
            elif new == 0:
                zero_axes += 1
            d += 1
            if d == base:
                digits[i] = 0
                old = disp[0]
                disp[0] = old + 1  # apply step 0: +1 along axis 0
                if old == 0:
                    zero_axes -= 1
                elif old == -1:
                    zero_axes += 1
                i += 1
            else:
                digits[i] = d
                axis = d >> 1
                old = disp[axis]
                new = old + 1 if d & 1 == 0 else old - 1  # apply step d
                disp[axis] = new
                if old == 0:
                    zero_axes -= 1
                elif new == 0:
                    zero_axes += 1
                break
    if zero_axes == dim:  # last path: all digits base-1
        hits += 1
    return PathCount(hits, total)


# ---------------------------------------------------------------------------
# Monte Carlo
#
# Streams are counter-based (Philox) and derived per worker from
# (seed, worker_index); trial t belongs to worker t mod workers.  Partial
# results merge in worker-index order, so for fixed (seed, trials, workers)
# every run is bit-identical.
# ---------------------------------------------------------------------------


def _worker_rng(seed: int, worker_index: int) -> np.random.Generator:
    root = np.random.SeedSequence(entropy=seed & 0xFFFFFFFFFFFFFFFF,
                                  spawn_key=(worker_index,))
    return np.random.Generator(np.random.Philox(root))


def _worker_counts(trials: int, workers: int) -> list[int]:
    return [len(range(i, trials, workers)) for i in range(workers)]


def _run_workers(fn, workers: int) -> list:
    if workers == 1:
        return [fn(0)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(workers)))


def simulate_walk(spec: WalkSpec, trials: int, seed: int,
                  workers: int = 1) -> SimulationResult:
    """Estimate the return probability from independent simulated walks."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    dim, steps = spec.dimension, 2 * spec.half_steps
    counts = _worker_counts(trials, workers)

    def run(worker_index: int) -> int:
        rng = _worker_rng(seed, worker_index)
        remaining = counts[worker_index]
        hits = 0
        while remaining:
            m = min(remaining, _CHUNK)
            draws = rng.integers(0, 2 * dim, size=(m, steps), dtype=np.uint8)
            sign = np.where(draws & 1, -1, 1).astype(np.int8)
            axis = draws >> 1
            at_origin = np.ones(m, dtype=bool)
            for a in range(dim):
                disp = np.where(axis == a, sign, 0).sum(axis=1,
                                                        dtype=np.int64)
                at_origin &= disp == 0
            hits += int(np.count_nonzero(at_origin))
            remaining -= m
        return hits

    hits = sum(_run_workers(run, workers))
    estimate = hits / trials
    std_error = math.sqrt(estimate * (1.0 - estimate) / trials)
    reference = return_probability(spec.dimension, spec.half_steps)
    z_score = _z_score(estimate, std_error, reference)
    return SimulationResult(trials, hits, estimate, std_error, reference,
                            z_score, seed, workers)


def simulate_beta_moment(dim: int, half_steps: int, trials: int, seed: int,
                         workers: int = 1) -> SimulationResult:
    """Estimate the matching arcsine-beta moment by direct sampling.

    Each variate is V = -cos(pi W) with W uniform on (0, 1) -- the exact
    inverse CDF of the centered arcsine law, one uniform and one cosine per
    draw.  The estimate averages ((V_1+..+V_k)/k)^(2n); chunk sums merge
    through math.fsum, which is exact compensated summation.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if dim < 1 or half_steps < 1:
        raise ValueError("dim and half_steps must be >= 1")
    power = 2 * half_steps
    counts = _worker_counts(trials, workers)

    def run(worker_index: int) -> tuple[list[float], list[float]]:
        rng = _worker_rng(seed, worker_index)
        remaining = counts[worker_index]
        sums: list[float] = []
        squares: list[float] = []
        while remaining:
            m = min(remaining, _CHUNK)
            uniforms = rng.random((m, dim))
            variates = -np.cos(np.pi * uniforms)
            sample = (variates.sum(axis=1) / dim) ** power
            sums.append(float(sample.sum()))
            squares.append(float((sample * sample).sum()))
            remaining -= m
        return sums, squares

    partials = _run_workers(run, workers)
    total = math.fsum(s for sums, _ in partials for s in sums)
    total_sq = math.fsum(s for _, squares in partials for s in squares)
    estimate = total / trials
    if trials > 1:
        variance = max(0.0, (total_sq - trials * estimate * estimate)
                       / (trials - 1))
        std_error = math.sqrt(variance / trials)
    else:
        std_error = 0.0
    reference = return_probability(dim, half_steps)
    z_score = _z_score(estimate, std_error, reference)
    return SimulationResult(trials, None, estimate, std_error, reference,
                            z_score, seed, workers)


def _z_score(estimate: float, std_error: float, reference: Fraction) -> float:
    if std_error > 0.0:
        return (estimate - float(reference)) / std_error
    if estimate == float(reference):
        return 0.0
    return math.copysign(math.inf, estimate - float(reference))
