"""Dense univariate polynomials with exact rational coefficients.

Everything downstream (rational functions, Picard-Fuchs elimination,
recurrence weights) is built on this class.  Coefficients are Python ints
whenever the value is integral and ``fractions.Fraction`` otherwise, so
integer polynomials stay fast.  The zero polynomial has no well-defined
degree; ``Poly.degree`` returns ``None`` for it rather than an integer
sentinel that could leak into degree arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    if isinstance(c, float):
        raise TypeError("floating-point coefficient in exact polynomial")
    return c


class Poly:
    """Polynomial in one variable over Q, dense coefficient list, index = degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_norm_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
              for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(c) -> "Poly":
        return Poly([c])

    @staticmethod
    def x() -> "Poly":
        return Poly([0, 1])

    # -- basic structure ----------------------------------------------

    @property
    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly([-other]))

    def __rsub__(self, other):
        return Poly([other]) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly()
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; x may be int, Fraction, mpf, interval, ..."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- calculus and structure maps ----------------------------------

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose_linear(self, k) -> "Poly":
        """p(k*t) for a scalar k."""
        out, kk = [], 1
        for c in self.coeffs:
            out.append(c * kk)
            kk = kk * k
        return Poly(out)

    def reversal(self, d: int) -> "Poly":
        """t^d * p(1/t); requires d >= deg p."""
        if self.is_zero():
            return Poly()
        if d < self.degree:
            raise ValueError("insufficient degree shift")
        out = [0] * (d + 1)
        for i, c in enumerate(self.coeffs):
            out[d - i] = c
        return Poly(out)

    def shift_up(self, k: int) -> "Poly":
        """t^k * p."""
        if self.is_zero():
            return Poly()
        return Poly((0,) * k + self.coeffs)

    # -- content, primitive part, gcd ---------------------------------

    def content(self) -> Fraction:
        """Positive rational c with p/c primitive integral; 0 for the zero polynomial."""
        if self.is_zero():
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            f = Fraction(c)
            num = gcd(num, f.numerator)
            den = den * f.denominator // gcd(den, f.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Primitive integer polynomial p / content(p) (sign of the lead preserved)."""
        if self.is_zero():
            return Poly()
        c = self.content()
        return Poly([int(Fraction(x) / c) for x in self.coeffs])

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = Poly()
        r = self
        d = other.degree
        lead = Fraction(other.leading())
        while not r.is_zero() and r.degree >= d:
            k = r.degree - d
            c = Fraction(r.leading()) / lead
            term = Poly([0] * k + [c])
            q = q + term
            r = r - term * other
        return q, r

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("polynomial division is not exact")
        return q

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "t" if i == 1 else f"t^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """gcd in Q[t], returned as a primitive integer polynomial with positive lead."""
    while not b.is_zero():
        r = a % b
        if not r.is_zero():
            r = r.primitive()
        a, b = b, r
    if a.is_zero():
        return Poly()
    g = a.primitive()
    if g.leading() < 0:
        g = -g
    return g


def content_gcd(polys) -> int:
    """gcd of the integer contents of a family of integer polynomials."""
    g = 0
    for p in polys:
        for c in p.coeffs:
            g = gcd(g, c)
    return g
