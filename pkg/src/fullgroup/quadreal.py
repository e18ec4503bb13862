"""Exact arithmetic in a real quadratic field Q(sqrt d)."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union[int, Fraction, "QuadReal"]


def _squarefree_part(n: int) -> tuple[int, int]:
    """Return (k, m) with n = k*k*m and m square-free."""
    k, m = 1, n
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        p += 1
    return k, m


class QuadReal:
    """The real number ``a + b*sqrt(d)`` with rational ``a``, ``b``.

    ``d`` is square-free (or 0 for plain rationals).  Values with different
    radicands only mix when one of them is rational.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Union[int, Fraction] = 0, b: Union[int, Fraction] = 0, d: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        if d < 0:
            raise ValueError("radicand must be non-negative")
        if d in (0, 1) or b == 0:
            if d == 1:
                a += b
            b = Fraction(0)
            d = 0
        else:
            k, m = _squarefree_part(d)
            if m == 1:
                a += b * k
                b, d = Fraction(0), 0
            else:
                b *= k
                d = m
        self.a = a
        self.b = b
        self.d = d

    # -- construction -------------------------------------------------
    @classmethod
    def from_parts(cls, p: int, q: int, d: int, r: int = 1) -> "QuadReal":
        """``(p + q*sqrt(d)) / r`` from integers."""
        if r == 0:
            raise ZeroDivisionError("denominator r must be nonzero")
        return cls(Fraction(p, r), Fraction(q, r), d)

    @classmethod
    def coerce(cls, x: Number) -> "QuadReal":
        if isinstance(x, QuadReal):
            return x
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x))
        raise TypeError(f"cannot convert {type(x).__name__} to QuadReal")

    @classmethod
    def parse(cls, text: str) -> "QuadReal":
        """Parse strings such as ``"sqrt(2)-1"``, ``"1/3"``, ``"(-1+sqrt(5))/2"``."""
        s = text.replace(" ", "").replace("√", "sqrt")
        denom = Fraction(1)
        m = re.fullmatch(r"\((.*)\)/(\d+)", s)
        if m:
            s, denom = m.group(1), Fraction(int(m.group(2)))
        total = cls(0)
        for sign, term in re.findall(r"([+-]?)([^+-]+)", s):
            coef = -1 if sign == "-" else 1
            tm = re.fullmatch(r"(?:(\d+(?:/\d+)?)\*?)?sqrt\((\d+)\)(?:/(\d+))?", term)
            if tm:
                c = Fraction(tm.group(1)) if tm.group(1) else Fraction(1)
                if tm.group(3):
                    c /= int(tm.group(3))
                total = total + cls(0, coef * c, int(tm.group(2)))
            elif re.fullmatch(r"\d+(/\d+)?", term):
                total = total + cls(coef * Fraction(term))
            else:
                raise ValueError(f"cannot parse quadratic number {text!r}")
        return total / cls(denom)

    # -- helpers ------------------------------------------------------
    def _radicand_with(self, other: "QuadReal") -> int:
        if self.d == 0:
            return other.d
        if other.d == 0 or other.d == self.d:
            return self.d
        raise ValueError(f"mixed radicands sqrt({self.d}) and sqrt({other.d})")

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def conjugate(self) -> "QuadReal":
        return QuadReal(self.a, -self.b, self.d)

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        diff = a * a - b * b * self.d
        # diff != 0 because d is square-free
        if a > 0:
            return 1 if diff > 0 else -1
        return 1 if diff < 0 else -1

    def __floor__(self) -> int:
        if self.b == 0:
            return math.floor(self.a)
        den = math.lcm(self.a.denominator, self.b.denominator)
        A = int(self.a * den)
        B = int(self.b * den)
        s = math.isqrt(B * B * self.d)
        if B > 0:
            return (A + s) // den
        return (A - s - 1) // den

    def floor(self) -> int:
        return self.__floor__()

    def frac(self) -> "QuadReal":
        """Fractional part, in [0, 1)."""
        return self - math.floor(self)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: Number) -> "QuadReal":
        try:
            o = QuadReal.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadReal(self.a + o.a, self.b + o.b, self._radicand_with(o))

    __radd__ = __add__

    def __neg__(self) -> "QuadReal":
        return QuadReal(-self.a, -self.b, self.d)

    def __sub__(self, other: Number) -> "QuadReal":
        try:
            o = QuadReal.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadReal(self.a - o.a, self.b - o.b, self._radicand_with(o))

    def __rsub__(self, other: Number) -> "QuadReal":
        return QuadReal.coerce(other) - self

    def __mul__(self, other: Number) -> "QuadReal":
        try:
            o = QuadReal.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._radicand_with(o)
        return QuadReal(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "QuadReal":
        try:
            o = QuadReal.coerce(other)
        except TypeError:
            return NotImplemented
        norm = o.a * o.a - o.b * o.b * o.d
        if norm == 0:
            raise ZeroDivisionError("division by zero QuadReal")
        num = self * o.conjugate()
        return QuadReal(num.a / norm, num.b / norm, num.d)

    def __rtruediv__(self, other: Number) -> "QuadReal":
        return QuadReal.coerce(other) / self

    def __abs__(self) -> "QuadReal":
        return -self if self.sign() < 0 else self

    # -- comparison ---------------------------------------------------
    def _cmp(self, other: Number) -> int:
        return (self - other).sign()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (QuadReal, int, Rational)):
            return NotImplemented
        o = QuadReal.coerce(other)
        return self.a == o.a and self.b == o.b and (self.b == 0 or self.d == o.d)

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other: Number) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Number) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Number) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Number) -> bool:
        return self._cmp(other) >= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self) -> str:
        return f"QuadReal({self})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        mag = abs(self.b)
        coef = "" if mag == 1 else f"{mag}*"
        return f"{self.a} {sign} {coef}√{self.d}"
