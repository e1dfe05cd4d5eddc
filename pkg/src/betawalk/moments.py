"""Even moments of weighted sums of centered symmetric-beta variables.

Let X_1..X_k be iid Be(p, p) on [0, 1] and U_i = 2X_i - 1 the centered
copies on [-1, 1].  The 2n-th moment of c_1 U_1 + ... + c_k U_k has two
independent exact expansions (both normalized by B(p,p)^k so each equals the
probabilistic moment):

  raw expansion     sum over weak compositions (j_1..j_{k+1}) of 2n of
                    multi(2n; j) * C^{j_1} * prod_s (-2 c_s)^{j_{s+1}}
                                             * B(j_{s+1} + p, p)
                    where C = c_1 + ... + c_k  (alternating terms)

  even expansion    2^-(2p-1)k * sum over weak compositions (i_1..i_k) of n
                    of multi(2n; 2i_1..2i_k) * prod_j c_j^{2 i_j}
                                             * B(i_j + 1/2, p)
                    (all terms positive; odd single-variable moments vanish)

``verify_master`` evaluates both and reports exact equality.  Everything here
is a pure function; composition streams may be split across threads by rank
range and the exact partial sums merged in chunk order, so results are
identical for any thread count.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .compositions import (
    composition_range,
    count_weak_compositions,
    weak_compositions,
)
from .exact import (
    HalfInt,
    PiRational,
    RationalLike,
    as_fraction,
    beta_half,
    factorial,
)

__all__ = [
    "CoefficientVector",
    "IdentityReport",
    "even_moment",
    "odd_moment",
    "lhs_master",
    "rhs_master",
    "verify_master",
    "verify_equal_coeff_form",
]

UPPER_LIMIT_NOTE = (
    "one-variable reduction is summed to 2n; the commonly stated upper "
    "limit n fails (n=1, p=1/2 gives -1 instead of 1/2)"
)


@dataclass(frozen=True)
class CoefficientVector:
    """Strictly positive rational weights c_1..c_k with their cached sum."""

    coeffs: tuple[Fraction, ...]
    total: Fraction = field(init=False)

    def __post_init__(self) -> None:
        cs = tuple(as_fraction(c) for c in self.coeffs)
        if not cs:
            raise ValueError("at least one coefficient is required")
        if any(c <= 0 for c in cs):
            raise ValueError("coefficients must be strictly positive")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "total", sum(cs, Fraction(0)))

    @classmethod
    def of(cls, values: Union["CoefficientVector", Iterable[RationalLike]]
           ) -> "CoefficientVector":
        if isinstance(values, CoefficientVector):
            return values
        return cls(tuple(values))

    def __len__(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one exact identity check.

    In exact mode ``verified`` holds iff lhs and rhs are identical
    PiRational values.
    """

    identity_name: str
    parameters: dict[str, str]
    lhs: PiRational
    rhs: PiRational
    verified: bool
    mode: str = "exact"
    elapsed: float = 0.0
    notes: tuple[str, ...] = ()

    def to_json_obj(self) -> dict:
        return {
            "identity": self.identity_name,
            "parameters": dict(self.parameters),
            "lhs": self.lhs.to_json_obj(),
            "rhs": self.rhs.to_json_obj(),
            "verified": self.verified,
            "mode": self.mode,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# single-variable moments
# ---------------------------------------------------------------------------


def even_moment(n: int, p) -> PiRational:
    """E[U^(2n)] = B(n + 1/2, p) / (B(p, p) * 2^(2p-1)), exactly.

    The sqrt(pi) contents of the two beta values cancel, so the result
    always has exponent 0.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    p = HalfInt.of(p)
    numer = beta_half(HalfInt(2 * n + 1), p)
    # 2p - 1 = doubled - 1 is a non-negative integer for half-integer p > 0
    scale = Fraction(2) ** (p.doubled - 1)
    return numer / beta_half(p, p) / scale


def odd_moment(n: int, p) -> PiRational:
    """E[U^(2n+1)]: identically zero, the centered density is symmetric."""
    return PiRational.ZERO


# ---------------------------------------------------------------------------
# the two expansions
# ---------------------------------------------------------------------------


def _beta_family(offset_doubled: int, p: HalfInt,
                 count: int) -> tuple[list[Fraction], int]:
    """Coefficients of B(j + offset, p) for j = 0..count-1.

    For fixed p every member shares one sqrt(pi) exponent, which is returned
    separately so sums can run in plain Fraction arithmetic.
    """
    values = [beta_half(HalfInt(2 * j + offset_doubled), p)
              for j in range(count)]
    return [v.coeff for v in values], values[0].sqrt_pi_pow


def _composition_sum(total: int, parts: int,
                     term: Callable[[tuple[int, ...]], Fraction],
                     threads: int = 1) -> Fraction:
    """Exact sum of term() over all weak compositions, optionally chunked.

    Chunks are disjoint rank ranges merged in order; exactness makes the
    result independent of the chunking.
    """
    count = count_weak_compositions(total, parts)
    if threads <= 1 or count < 2 * threads:
        acc = Fraction(0)
        for comp in weak_compositions(total, parts):
            acc += term(comp)
        return acc
    bounds = [count * i // threads for i in range(threads + 1)]

    def chunk(lo: int, hi: int) -> Fraction:
        acc = Fraction(0)
        for comp in composition_range(total, parts, lo, hi):
            acc += term(comp)
        return acc

    with ThreadPoolExecutor(max_workers=threads) as pool:
        partials = list(pool.map(chunk, bounds[:-1], bounds[1:]))
    return sum(partials, Fraction(0))


def _lhs_raw(n: int, coeffs: Sequence[Fraction], p: HalfInt,
             threads: int = 1) -> PiRational:
    """Raw-expansion sum before division by B(p,p)^k.

    Tolerates zero coefficients (0^0 = 1 drops the slot), which realizes
    dimension shrinking without a separate formula.
    """
    k = len(coeffs)
    two_n = 2 * n
    c_total = sum(coeffs, Fraction(0))
    betas, beta_pow = _beta_family(p.doubled, p, two_n + 1)
    total_pows = [c_total ** j for j in range(two_n + 1)]
    slot_pows = [[(-2 * c) ** j for j in range(two_n + 1)] for c in coeffs]
    f2n = factorial(two_n)

    def term(comp: tuple[int, ...]) -> Fraction:
        multi = f2n
        for j in comp:
            multi //= factorial(j)
        value = multi * total_pows[comp[0]]
        for s in range(k):
            j = comp[s + 1]
            value *= slot_pows[s][j] * betas[j]
        return value

    raw = _composition_sum(two_n, k + 1, term, threads)
    return PiRational(raw, k * beta_pow)


def _rhs_raw(n: int, coeffs: Sequence[Fraction], p: HalfInt,
             threads: int = 1) -> PiRational:
    """Even-expansion sum (with its 2^-(2p-1)k prefactor) before division
    by B(p,p)^k."""
    k = len(coeffs)
    two_n = 2 * n
    betas, beta_pow = _beta_family(1, p, n + 1)  # B(i + 1/2, p)
    slot_pows = [[c ** (2 * i) for i in range(n + 1)] for c in coeffs]
    f2n = factorial(two_n)

    def term(comp: tuple[int, ...]) -> Fraction:
        multi = f2n
        value = Fraction(1)
        for s, i in enumerate(comp):
            multi //= factorial(2 * i)
            value *= slot_pows[s][i] * betas[i]
        return multi * value

    raw = _composition_sum(n, k, term, threads)
    prefactor = Fraction(1, 2 ** ((p.doubled - 1) * k))
    return PiRational(raw * prefactor, k * beta_pow)


def lhs_master(n: int, coeffs, p, threads: int = 1) -> PiRational:
    """E[(sum c_i U_i)^(2n)] by the raw (alternating) expansion."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c = CoefficientVector.of(coeffs)
    p = HalfInt.of(p)
    return _lhs_raw(n, c.coeffs, p, threads) / beta_half(p, p) ** len(c)


def rhs_master(n: int, coeffs, p, threads: int = 1) -> PiRational:
    """E[(sum c_i U_i)^(2n)] by the even-moment expansion."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c = CoefficientVector.of(coeffs)
    p = HalfInt.of(p)
    return _rhs_raw(n, c.coeffs, p, threads) / beta_half(p, p) ** len(c)


def _master_parameters(n: int, c: CoefficientVector, p: HalfInt) -> dict:
    return {
        "n": str(n),
        "k": str(len(c)),
        "p": str(p),
        "coeffs": ",".join(str(x) for x in c.coeffs),
    }


def verify_master(n: int, coeffs, p, mode: str = "exact",
                  tolerance: float = 1e-10, threads: int = 1):
    """Check the two expansions against each other.

    Exact mode returns an IdentityReport with bit-exact comparison; float
    mode delegates to the floating-point path (arbitrary real p > 0) and
    returns its FloatVerification.  A failed comparison is reported, never
    raised.
    """
    if mode == "float":
        from .numeric import verify_master_float
        return verify_master_float(n, [float(as_fraction(x)) if not
                                       isinstance(x, float) else x
                                       for x in coeffs],
                                   float(as_fraction(p)) if not
                                   isinstance(p, float) else p,
                                   tolerance=tolerance)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    c = CoefficientVector.of(coeffs)
    p = HalfInt.of(p)
    start = time.perf_counter()
    lhs = lhs_master(n, c, p, threads)
    rhs = rhs_master(n, c, p, threads)
    elapsed = time.perf_counter() - start
    return IdentityReport(
        identity_name="master",
        parameters=_master_parameters(n, c, p),
        lhs=lhs,
        rhs=rhs,
        verified=lhs == rhs,
        mode="exact",
        elapsed=elapsed,
    )


def verify_equal_coeff_form(n: int, k: int, p,
                            threads: int = 1) -> IdentityReport:
    """Check the coefficient-free symmetric form and its scale invariance.

    With all weights equal the identity loses its constants: the raw sides
    are compared as stated (weight 1, no B(p,p)^k normalization), and on top
    of that the full check must scale by exactly c^(2n) for c in
    {1/4, 1, 7/3}.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    p = HalfInt.of(p)
    start = time.perf_counter()
    ones = (Fraction(1),) * k
    lhs = _lhs_raw(n, ones, p, threads)
    rhs = _rhs_raw(n, ones, p, threads)
    verified = lhs == rhs

    base = verify_master(n, ones, p, threads=threads)
    verified = verified and base.verified
    for c in (Fraction(1, 4), Fraction(1), Fraction(7, 3)):
        rep = verify_master(n, (c,) * k, p, threads=threads)
        scale = PiRational(c ** (2 * n))
        verified = (verified and rep.verified
                    and rep.lhs == base.lhs * scale
                    and rep.rhs == base.rhs * scale)
    elapsed = time.perf_counter() - start
    return IdentityReport(
        identity_name="equal-coeff",
        parameters={"n": str(n), "k": str(k), "p": str(p)},
        lhs=lhs,
        rhs=rhs,
        verified=verified,
        mode="exact",
        elapsed=elapsed,
        notes=("scale invariance checked for equal weights in {1/4, 1, 7/3}",),
    )
