"""Rational functions over Q in lowest terms with integral parts.

Normalization: numerator and denominator are coprime polynomials in Z[t]
whose integer contents are coprime, and the denominator has positive
leading coefficient.  With that convention the constant terms nu = num(0)
and delta = den(0) are well defined, which is what the integrality bounds
consume.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .poly import Poly, poly_gcd


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = Poly([num])
        if den is None:
            den = Poly([1])
        elif isinstance(den, (int, Fraction)):
            den = Poly([den])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        g = poly_gcd(num, den)
        if g.degree and g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        # clear rational contents: num = cn * N, den = cd * D with N, D primitive
        cn, cd = num.content(), den.content()
        scale = cn / cd  # overall rational factor
        num = num.primitive()
        den = den.primitive()
        num = num * scale.numerator
        den = den * scale.denominator
        # contents are now |scale.numerator| and |scale.denominator|, coprime
        if den.leading() < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    # -- inspection ----------------------------------------------------

    def nu(self) -> int:
        """Constant term of the numerator."""
        return self.num[0]

    def delta(self) -> int:
        """Constant term of the denominator."""
        return self.den[0]

    def is_polynomial(self) -> bool:
        return self.den.degree == 0 and self.den[0] == 1

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError("not a polynomial")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def value_at_zero(self) -> Fraction:
        if self.delta() == 0:
            raise ZeroDivisionError("pole at t = 0")
        return Fraction(self.nu(), self.delta())

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole at evaluation point")
        n = self.num(x)
        if isinstance(n, int) and isinstance(d, int):
            return Fraction(n, d)
        return n / d

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunction(other if isinstance(other, Poly) else Poly([other]))
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- field operations ----------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Poly):
            return RationalFunction(x)
        if isinstance(x, (int, Fraction)):
            return RationalFunction(Poly([x]))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RationalFunction)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        if e >= 0:
            return RationalFunction(self.num ** e, self.den ** e)
        if self.is_zero():
            raise ZeroDivisionError("negative power of zero")
        return RationalFunction(self.den ** (-e), self.num ** (-e))

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def compose_linear(self, k) -> "RationalFunction":
        """r(k*t)."""
        return RationalFunction(self.num.compose_linear(k), self.den.compose_linear(k))

    def at_infinity(self) -> tuple["RationalFunction", int]:
        """Rewrite r(1/s) = s^(-m) * g(s) with g finite and nonzero at s = 0.

        Returns (g, m); m is the order of the pole of r at t = infinity
        (negative if r vanishes there).
        """
        dn, dd = self.num.degree, self.den.degree
        if dn is None:
            return RationalFunction(Poly()), 0
        g = RationalFunction(self.num.reversal(dn), self.den.reversal(dd))
        return g, dn - dd

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"


def nu_delta(r: RationalFunction) -> tuple[int, int]:
    """Constant terms (numerator, denominator) of a lowest-terms rational function."""
    return r.nu(), r.delta()
