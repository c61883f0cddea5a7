"""
Exact parameter arithmetic for G-function and hypergeometric records.

Parameters entered as integers, fractions, rational strings ("3/2", "0.25")
or short decimal floats are kept as exact rationals, so the block
identities (reduction, integer swaps) can match parameters exactly along a
chain of transforms. Anything else falls back to a float-backed value that
is matched with an absolute tolerance.
"""

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

MATCH_TOL = 1e-12

# floats whose shortest repr has at most this many significant digits are
# treated as the decimal the user typed
_EXACT_DIGITS = 12


@dataclass(frozen=True)
class Param:
    """A complex parameter with rational real and imaginary parts."""

    re: Fraction
    im: Fraction = Fraction(0)
    exact: bool = True

    @classmethod
    def of(cls, value: "ParamLike") -> "Param":
        """
        Coerce a number or string into a Param.

        Args:
            value: int, Fraction, float, complex, numeric string or Param

        Returns:
            Param, exact when the input is syntactically rational
        """
        if isinstance(value, Param):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not parameters")
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, numbers.Real):
            return cls._from_float(float(value))
        if isinstance(value, numbers.Complex):
            re = cls._from_float(float(value.real))
            im = cls._from_float(float(value.imag))
            return cls(re.re, im.re, re.exact and im.exact)
        raise TypeError(f"cannot interpret {value!r} as a parameter")

    @classmethod
    def parse(cls, text: str) -> "Param":
        """Parse "3/2", "-0.25", "1e-3" exactly; "1+2j" as a float-backed complex."""
        text = text.strip().strip("()")
        if not text:
            raise ValueError("empty parameter")
        if text.endswith("j"):
            return cls.of(complex(text))
        try:
            return cls(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a number: {text!r}") from exc

    @classmethod
    def _from_float(cls, x: float) -> "Param":
        if not math.isfinite(x):
            raise ValueError(f"parameter must be finite, got {x}")
        text = repr(x)
        mantissa = text.split("e")[0].replace("-", "").replace(".", "").strip("0")
        if len(mantissa) <= _EXACT_DIGITS:
            return cls(Fraction(text))
        return cls(Fraction(x), Fraction(0), False)

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Param":
        return other if isinstance(other, Param) else Param.of(other)

    def __add__(self, other) -> "Param":
        o = self._coerce(other)
        return Param(self.re + o.re, self.im + o.im, self.exact and o.exact)

    __radd__ = __add__

    def __neg__(self) -> "Param":
        return Param(-self.re, -self.im, self.exact)

    def __sub__(self, other) -> "Param":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Param":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Param":
        o = self._coerce(other)
        return Param(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
            self.exact and o.exact,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Param":
        o = self._coerce(other)
        if o.im != 0:
            raise TypeError("division by a complex parameter is not supported")
        if o.re == 0:
            raise ZeroDivisionError("parameter division by zero")
        return Param(self.re / o.re, self.im / o.re, self.exact and o.exact)

    # inspection -------------------------------------------------------

    @property
    def value(self) -> complex:
        return complex(float(self.re), float(self.im))

    @property
    def real(self) -> float:
        return float(self.re)

    def __complex__(self) -> complex:
        return self.value

    def __float__(self) -> float:
        if self.im != 0:
            raise TypeError("complex parameter has no float value")
        return float(self.re)

    @property
    def is_real(self) -> bool:
        if self.exact:
            return self.im == 0
        return abs(float(self.im)) <= MATCH_TOL

    def nearest_int(self) -> int:
        return int(round(self.re))

    def is_integer(self) -> bool:
        if not self.is_real:
            return False
        if self.exact:
            return self.re.denominator == 1
        return abs(float(self.re) - round(float(self.re))) <= MATCH_TOL

    def is_nonpositive_integer(self) -> bool:
        return self.is_integer() and self.nearest_int() <= 0

    def matches(self, other: "ParamLike") -> bool:
        """Equality used by the block identities: exact or within MATCH_TOL."""
        o = self._coerce(other)
        if self.exact and o.exact:
            return self.re == o.re and self.im == o.im
        return abs(self.value - o.value) <= MATCH_TOL

    def __str__(self) -> str:
        if self.exact and self.im == 0:
            return str(self.re)
        if self.im == 0:
            return repr(float(self.re))
        return repr(self.value)


ParamLike = Union[Param, int, float, complex, Fraction, str]


def as_params(values) -> tuple:
    return tuple(Param.of(v) for v in values)


def strictly_less(lhs, rhs, exact: bool = True) -> bool:
    """
    Strict comparison of extended reals used by the condition checks.

    Exact inputs compare with tolerance 0, others must clear MATCH_TOL.
    """
    if exact:
        return lhs < rhs
    return float(lhs) < float(rhs) - MATCH_TOL
