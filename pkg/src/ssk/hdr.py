"""High-dynamic-range nonnegative scalars.

Kernel values on long strings involve decay powers like lambda**(-16384),
far outside the native float range in both directions.  An ``HdrScalar``
stores ``mantissa * 2**exponent`` with the mantissa normalized to
[0.5, 1) (exactly 0.0 for zero) and an unbounded integer exponent, so
sums and products of such powers never overflow or underflow.  Each
add/mul costs one double rounding, like native arithmetic.

The njit engines in :mod:`ssk._hdrops` perform the identical frexp/ldexp
operation sequence on raw (mantissa, exponent) pairs, so values computed
there match values computed here bit for bit.
"""

from __future__ import annotations

import math

# Below this exponent gap the smaller addend cannot perturb a double
# mantissa, denormals included.  Must stay in sync with ssk._hdrops.
MIN_ALIGN = -1074

_LN2 = math.log(2.0)


class HdrScalar:
    __slots__ = ("mantissa", "exponent")

    def __init__(self, mantissa: float, exponent: int = 0):
        if mantissa < 0.0 or math.isnan(mantissa) or math.isinf(mantissa):
            raise ValueError(f"HdrScalar mantissa must be finite and >= 0, got {mantissa}")
        if mantissa == 0.0:
            object.__setattr__(self, "mantissa", 0.0)
            object.__setattr__(self, "exponent", 0)
        else:
            m, e = math.frexp(mantissa)
            object.__setattr__(self, "mantissa", m)
            object.__setattr__(self, "exponent", exponent + e)

    # instances are immutable once built
    def __setattr__(self, name, value):
        raise AttributeError("HdrScalar is immutable")

    @classmethod
    def from_float(cls, value: float) -> "HdrScalar":
        return cls(float(value), 0)

    @classmethod
    def from_lambda_power(cls, lam: float, k: int) -> "HdrScalar":
        """lambda**k for any integer k, without over/underflow.

        Requires 0 < lam <= 1.  Evaluated by square-and-multiply on HDR
        values; for lam = 0.5 every step is exact.
        """
        if not (0.0 < lam <= 1.0):
            raise ValueError(f"lambda must be in (0, 1], got {lam}")
        if k < 0:
            base = cls.from_float(1.0 / lam)
            k = -k
        else:
            base = cls.from_float(lam)
        result = ONE
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0.0

    def __bool__(self) -> bool:
        return self.mantissa != 0.0

    def __add__(self, other: "HdrScalar") -> "HdrScalar":
        m1, e1 = self.mantissa, self.exponent
        m2, e2 = other.mantissa, other.exponent
        if m1 == 0.0:
            return other
        if m2 == 0.0:
            return self
        if e1 < e2:
            m1, e1, m2, e2 = m2, e2, m1, e1
        d = e2 - e1
        if d < MIN_ALIGN:
            return _raw(m1, e1)
        return _raw(m1 + math.ldexp(m2, d), e1)

    def __sub__(self, other: "HdrScalar") -> "HdrScalar":
        """self - other, clamped at zero.

        Intended for prefix-sum differences where self >= other holds up to
        rounding; a tiny negative residue collapses to zero.
        """
        m1, e1 = self.mantissa, self.exponent
        m2, e2 = other.mantissa, other.exponent
        if m2 == 0.0:
            return self
        d = e2 - e1
        if d > 0:
            return ZERO
        if d < MIN_ALIGN:
            return self
        m = m1 - math.ldexp(m2, d)
        if m <= 0.0:
            return ZERO
        return _raw(m, e1)

    def __mul__(self, other: "HdrScalar") -> "HdrScalar":
        m1, m2 = self.mantissa, other.mantissa
        if m1 == 0.0 or m2 == 0.0:
            return ZERO
        return _raw(m1 * m2, self.exponent + other.exponent)

    def log(self) -> float:
        """Natural log of the value; -inf for zero."""
        if self.mantissa == 0.0:
            return -math.inf
        return math.log(self.mantissa) + self.exponent * _LN2

    def to_float(self) -> float:
        """Native float value; inf/0.0 when out of double range."""
        if self.mantissa == 0.0:
            return 0.0
        try:
            return math.ldexp(self.mantissa, self.exponent)
        except OverflowError:
            return math.inf

    def _key(self):
        if self.mantissa == 0.0:
            return (float("-inf"), 0.0)
        return (float(self.exponent), self.mantissa)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HdrScalar):
            return NotImplemented
        return self.mantissa == other.mantissa and (
            self.mantissa == 0.0 or self.exponent == other.exponent
        )

    def __lt__(self, other: "HdrScalar") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "HdrScalar") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "HdrScalar") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "HdrScalar") -> bool:
        return self._key() >= other._key()

    def __hash__(self):
        return hash((self.mantissa, self.exponent if self.mantissa else 0))

    def __repr__(self) -> str:
        if self.mantissa == 0.0:
            return "HdrScalar(0)"
        return f"HdrScalar({self.mantissa!r} * 2**{self.exponent})"


def _raw(mantissa: float, exponent: int) -> HdrScalar:
    """Construct with renormalization but without the sign check."""
    out = object.__new__(HdrScalar)
    if mantissa == 0.0:
        object.__setattr__(out, "mantissa", 0.0)
        object.__setattr__(out, "exponent", 0)
    else:
        m, e = math.frexp(mantissa)
        object.__setattr__(out, "mantissa", m)
        object.__setattr__(out, "exponent", exponent + e)
    return out


ZERO = HdrScalar(0.0)
ONE = HdrScalar(1.0)


def compare(a: HdrScalar, b: HdrScalar) -> int:
    """-1, 0 or 1 as a is below, equal to or above b."""
    if a == b:
        return 0
    return -1 if a < b else 1


def rel_deviation(log_a: float, log_b: float) -> float:
    """Relative deviation of two positive values given their natural logs.

    Returns 0.0 when both are zero (-inf logs), inf when exactly one is.
    """
    if log_a == log_b:
        return 0.0
    if math.isinf(log_a) or math.isinf(log_b):
        return math.inf
    d = abs(log_a - log_b)
    if d > 1.0:
        return math.inf
    return abs(math.expm1(-d))
