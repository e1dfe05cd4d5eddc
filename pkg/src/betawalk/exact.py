"""Exact arithmetic: big rationals, powers of sqrt(pi), half-integer gamma/beta.

Gamma at a positive half-odd argument is a rational multiple of sqrt(pi)
(duplication formula: Gamma(n + 1/2) = (2n)!/(4^n n!) * sqrt(pi)) and gamma at
a positive integer is a plain factorial, so every gamma/beta value needed here
has the exact shape q * pi^(e/2) with q rational and e an integer.
``PiRational`` stores that pair; no operation in this module ever rounds.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

RationalLike = Union[int, Fraction, str]

__all__ = [
    "HalfInt",
    "PiRational",
    "as_fraction",
    "factorial",
    "set_factorial_cache_limit",
    "binomial",
    "multinomial",
    "pochhammer",
    "gamma_half",
    "beta_half",
]


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or "a/b" string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


# ---------------------------------------------------------------------------
# factorial with an on-demand memo table
# ---------------------------------------------------------------------------

_fact_lock = threading.Lock()
_fact_table: list[int] = [1, 1]
_fact_cap = 100_000  # max table entries; larger arguments fall through


def set_factorial_cache_limit(entries: int) -> None:
    """Bound the factorial memo table (entries, not bytes)."""
    global _fact_cap
    if entries < 1:
        raise ValueError("cache limit must be at least 1")
    with _fact_lock:
        _fact_cap = entries
        del _fact_table[entries:]


def factorial(n: int) -> int:
    """n! exactly, memoized up to the configured table cap."""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    if n >= _fact_cap:
        return math.factorial(n)
    table = _fact_table
    if n < len(table):
        return table[n]
    with _fact_lock:
        # re-check under the lock; another thread may have grown the table
        value = table[-1]
        for m in range(len(table), n + 1):
            value *= m
            table.append(value)
    return table[n]


def binomial(n: int, k: int) -> int:
    """C(n, k); zero when k lies outside [0, n]."""
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def multinomial(n: int, parts: Sequence[int]) -> int:
    """n! / (parts[0]! * parts[1]! * ...) for a composition of n."""
    total = 0
    for p in parts:
        if p < 0:
            raise ValueError("multinomial parts must be non-negative")
        total += p
    if total != n:
        raise ValueError(f"parts sum to {total}, expected {n}")
    result = factorial(n)
    for p in parts:
        result //= factorial(p)
    return result


def pochhammer(a: RationalLike, m: int) -> Fraction:
    """Rising factorial a(a+1)...(a+m-1); 1 when m = 0."""
    if m < 0:
        raise ValueError("pochhammer requires m >= 0")
    a = as_fraction(a)
    result = Fraction(1)
    for i in range(m):
        result *= a + i
    return result


# ---------------------------------------------------------------------------
# half-integers
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class HalfInt:
    """A number m/2 for integer m, stored as the doubled value m."""

    doubled: int

    @classmethod
    def of(cls, value: Union["HalfInt", RationalLike]) -> "HalfInt":
        """Accept a HalfInt, an int, a Fraction, or an "a/b" string.

        Rejects values that are not integer multiples of 1/2.
        """
        if isinstance(value, HalfInt):
            return value
        frac = as_fraction(value)
        if frac.denominator not in (1, 2):
            raise ValueError(f"{frac} is not a half-integer")
        return cls(frac.numerator * (2 // frac.denominator))

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def __add__(self, other: Union["HalfInt", int]) -> "HalfInt":
        if isinstance(other, HalfInt):
            return HalfInt(self.doubled + other.doubled)
        if isinstance(other, int):
            return HalfInt(self.doubled + 2 * other)
        return NotImplemented

    __radd__ = __add__

    def __str__(self) -> str:
        return str(self.as_fraction())


# ---------------------------------------------------------------------------
# rational multiples of integer powers of sqrt(pi)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PiRational:
    """An exact value coeff * pi^(sqrt_pi_pow / 2).

    The exponent is kept in units of sqrt(pi) because Gamma(1/2) = sqrt(pi)
    makes that the natural atom.  Zero is canonical: coeff == 0 forces the
    exponent to 0, so equality is plain field equality.  Addition is defined
    only between values with equal exponents (or with zero); anything else
    would leave the exact closure and raises.
    """

    coeff: Fraction
    sqrt_pi_pow: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.coeff, Fraction):
            object.__setattr__(self, "coeff", as_fraction(self.coeff))
        if self.coeff == 0 and self.sqrt_pi_pow != 0:
            object.__setattr__(self, "sqrt_pi_pow", 0)

    @classmethod
    def of(cls, value: Union["PiRational", RationalLike]) -> "PiRational":
        if isinstance(value, PiRational):
            return value
        return cls(as_fraction(value))

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    def __add__(self, other: "PiRational") -> "PiRational":
        if not isinstance(other, PiRational):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.sqrt_pi_pow != other.sqrt_pi_pow:
            raise ValueError(
                "cannot add exact pi-powers with different exponents: "
                f"pi^({self.sqrt_pi_pow}/2) vs pi^({other.sqrt_pi_pow}/2)"
            )
        return PiRational(self.coeff + other.coeff, self.sqrt_pi_pow)

    def __sub__(self, other: "PiRational") -> "PiRational":
        return self + (-other)

    def __neg__(self) -> "PiRational":
        return PiRational(-self.coeff, self.sqrt_pi_pow)

    def __mul__(self, other: Union["PiRational", RationalLike]) -> "PiRational":
        if isinstance(other, PiRational):
            return PiRational(self.coeff * other.coeff,
                              self.sqrt_pi_pow + other.sqrt_pi_pow)
        return PiRational(self.coeff * as_fraction(other), self.sqrt_pi_pow)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["PiRational", RationalLike]) -> "PiRational":
        if isinstance(other, PiRational):
            if other.is_zero:
                raise ZeroDivisionError("division by an exact zero")
            return PiRational(self.coeff / other.coeff,
                              self.sqrt_pi_pow - other.sqrt_pi_pow)
        frac = as_fraction(other)
        if frac == 0:
            raise ZeroDivisionError("division by an exact zero")
        return PiRational(self.coeff / frac, self.sqrt_pi_pow)

    def __pow__(self, exponent: int) -> "PiRational":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0 and self.is_zero:
            raise ZeroDivisionError("zero to a negative power")
        return PiRational(self.coeff ** exponent, self.sqrt_pi_pow * exponent)

    def __float__(self) -> float:
        return float(self.coeff) * math.pi ** (self.sqrt_pi_pow / 2.0)

    def __str__(self) -> str:
        if self.sqrt_pi_pow == 0:
            return str(self.coeff)
        if self.sqrt_pi_pow == 1:
            tail = "sqrt(pi)"
        elif self.sqrt_pi_pow == 2:
            tail = "pi"
        elif self.sqrt_pi_pow % 2 == 0:
            tail = f"pi^{self.sqrt_pi_pow // 2}"
        else:
            tail = f"pi^({self.sqrt_pi_pow}/2)"
        return f"{self.coeff}*{tail}"

    def to_json_obj(self) -> dict:
        return {
            "coeff": f"{self.coeff.numerator}/{self.coeff.denominator}",
            "sqrtPiPow": self.sqrt_pi_pow,
        }


PiRational.ZERO = PiRational(Fraction(0))
PiRational.ONE = PiRational(Fraction(1))


# ---------------------------------------------------------------------------
# gamma and beta at half-integer arguments
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def gamma_half(a: HalfInt) -> PiRational:
    """Gamma(a) for a positive half-integer a, exactly.

    Integer a = m gives (m-1)!; half-odd a = n + 1/2 gives
    (2n)!/(4^n n!) * sqrt(pi) by the duplication formula.
    """
    if a.doubled <= 0:
        raise ValueError(f"gamma requires a positive argument, got {a}")
    if a.is_integer:
        return PiRational(Fraction(factorial(a.doubled // 2 - 1)))
    n = (a.doubled - 1) // 2
    return PiRational(Fraction(factorial(2 * n), 4 ** n * factorial(n)), 1)


@lru_cache(maxsize=4096)
def beta_half(a: HalfInt, b: HalfInt) -> PiRational:
    """B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b) for positive half-integers."""
    if a.doubled <= 0 or b.doubled <= 0:
        raise ValueError(f"beta requires positive arguments, got ({a}, {b})")
    return gamma_half(a) * gamma_half(b) / gamma_half(a + b)
