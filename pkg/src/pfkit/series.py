"""Truncated power/Laurent series with exact rational coefficients.

A series knows three things: its lowest stored exponent (``offset``, which
may be negative for expansions at infinity), its coefficients, and the
exponent of the first unknown term (``order``).  Binary operations truncate
to the weakest participant; coefficients past ``order`` are never invented.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly
from .ratfunc import RationalFunction


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class TruncatedSeries:
    __slots__ = ("offset", "coeffs", "order")

    def __init__(self, offset: int, coeffs, order: int):
        cs = [_norm(c if isinstance(c, (int, Fraction)) else Fraction(c)) for c in coeffs]
        if len(cs) != order - offset:
            raise ValueError("coefficient count does not match offset/order")
        # strip leading zeros so offset equals the valuation (zero series: offset == order)
        while cs and cs[0] == 0:
            cs.pop(0)
            offset += 1
        self.offset = offset
        self.coeffs = tuple(cs)
        self.order = order

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(order: int) -> "TruncatedSeries":
        return TruncatedSeries(order, (), order)

    @staticmethod
    def one(order: int) -> "TruncatedSeries":
        return TruncatedSeries.monomial(0, 1, order)

    @staticmethod
    def identity(order: int) -> "TruncatedSeries":
        """The series t."""
        return TruncatedSeries.monomial(1, 1, order)

    @staticmethod
    def monomial(exp: int, c, order: int) -> "TruncatedSeries":
        if exp >= order:
            return TruncatedSeries.zero(order)
        return TruncatedSeries(exp, [c] + [0] * (order - exp - 1), order)

    @staticmethod
    def from_poly(p: Poly, order: int) -> "TruncatedSeries":
        cs = list(p.coeffs[:max(order, 0)])
        cs += [0] * (order - len(cs))
        return TruncatedSeries(0, cs, order)

    # -- inspection -------------------------------------------------------

    def __getitem__(self, exp: int):
        """Coefficient of t^exp; raises for exponents at or past the order."""
        if exp >= self.order:
            raise IndexError(f"coefficient of t^{exp} is beyond known order {self.order}")
        if exp < self.offset:
            return 0
        return self.coeffs[exp - self.offset]

    def coefficients(self, lo: int, hi: int) -> list:
        """Coefficients for exponents lo..hi-1 (all must be known)."""
        return [self[e] for e in range(lo, hi)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self):
        """Exponent of the first nonzero known coefficient (None if all known are zero)."""
        return self.offset if self.coeffs else None

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.offset, self.coeffs, self.order) == (other.offset, other.coeffs, other.order)

    def __hash__(self):
        return hash((self.offset, self.coeffs, self.order))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.monomial(0, other, self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        order = min(self.order, other.order)
        lo = min(self.offset, other.offset, order)
        cs = [self[e] + other[e] for e in range(lo, order)]
        return TruncatedSeries(lo, cs, order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.offset, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.monomial(0, other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return TruncatedSeries.zero(self.order)
            return TruncatedSeries(self.offset, [c * other for c in self.coeffs], self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        # a zero factor has unknown valuation >= order; the product is then
        # known to vanish up to order + other's offset
        va = self.offset   # valuation (or order when zero)
        vb = other.offset
        order = min(self.order + vb, other.order + va)
        if self.is_zero() or other.is_zero():
            return TruncatedSeries.zero(order)
        n = order - (va + vb)
        out = [0] * n
        for i, ca in enumerate(self.coeffs):
            if ca == 0 or i >= n:
                continue
            top = min(len(other.coeffs), n - i)
            for j in range(top):
                cb = other.coeffs[j]
                if cb:
                    out[i + j] += ca * cb
        return TruncatedSeries(va + vb, out, order)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        """1/series; valuation must be exactly known (nonzero leading coefficient)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of (known-)zero series")
        v = self.offset
        a = self.coeffs
        n = len(a)
        inv0 = Fraction(1, 1) / Fraction(a[0])
        out = [inv0] + [Fraction(0)] * (n - 1)
        for k in range(1, n):
            s = Fraction(0)
            for i in range(1, k + 1):
                if a[i] != 0:
                    s += Fraction(a[i]) * out[k - i]
            out[k] = -inv0 * s
        return TruncatedSeries(-v, out, self.order - 2 * v)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = None
        for _ in range(e):
            out = self if out is None else out * self
        if out is None:
            # x^0 = 1 known to the same precision as repeated multiplication would give
            out = TruncatedSeries.one(self.order)
        return out

    def derivative(self) -> "TruncatedSeries":
        cs = [(self.offset + i) * c for i, c in enumerate(self.coeffs)]
        return TruncatedSeries(self.offset - 1, cs, self.order - 1)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k."""
        return TruncatedSeries(self.offset + k, self.coeffs, self.order + k)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        lo = min(self.offset, order)
        return TruncatedSeries(lo, [self[e] for e in range(lo, order)], order)

    # -- composition-type operations ---------------------------------------

    def pow_fractional(self, num: int, den: int) -> "TruncatedSeries":
        """Binomial expansion of series^(num/den); requires offset 0 and unit constant term."""
        if self.offset != 0 or not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("non-unit constant term")
        e = Fraction(num, den)
        n = self.order
        h = self - 1  # valuation >= 1
        out = TruncatedSeries.one(n)
        power = TruncatedSeries.one(n)
        binom = Fraction(1)
        v = h.offset if not h.is_zero() else n
        k = 1
        while k * v < n and k <= n:
            power = (power * h).truncate(n)
            binom *= Fraction(e - (k - 1), k)
            out = out + power * binom
            if power.is_zero():
                break
            k += 1
        return out.truncate(n)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner); inner must have valuation >= 1."""
        if not inner.is_zero() and inner.offset < 1:
            raise ValueError("composition requires inner valuation >= 1")
        if self.offset < 0:
            raise ValueError("cannot compose a Laurent series")
        v = inner.offset if not inner.is_zero() else inner.order
        # outer truncation error enters at t^(order_outer * v), inner's at t^(order_inner)
        order = min(self.order * max(v, 1), inner.order)
        out = TruncatedSeries.zero(order)
        power = TruncatedSeries.one(order)
        for _ in range(self.offset):
            power = (power * inner).truncate(order)
        for k in range(self.offset, self.order):
            if k > self.offset:
                power = (power * inner).truncate(order)
            if power.is_zero():
                break
            c = self[k]
            if c != 0:
                out = out + power * c
        return out

    def reversion(self) -> "TruncatedSeries":
        """Compositional inverse via Lagrange inversion; requires offset 1, unit lead."""
        if self.offset != 1 or not self.coeffs:
            raise ValueError("not a reversible series")
        c1 = self.coeffs[0]
        if c1 not in (1, -1):
            raise ValueError("leading coefficient must be a unit")
        n = self.order - 1  # number of inverse coefficients we can produce
        # b_m = [t^(m-1)] (t/f(t))^m / m
        t_over_f = TruncatedSeries(0, self.coeffs, n).inverse()
        out = [Fraction(0)] * n
        power = TruncatedSeries.one(n)
        for m in range(1, n + 1):
            power = (power * t_over_f).truncate(n)
            out[m - 1] = Fraction(power[m - 1], m)
        return TruncatedSeries(1, out, n + 1)

    def evaluate(self, x):
        """Partial-sum value at x (Horner over known coefficients)."""
        if self.offset < 0 and isinstance(x, int):
            x = Fraction(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.offset:
            acc = acc * x ** self.offset
        return acc

    def __str__(self):
        if self.is_zero():
            return f"O(t^{self.order})"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = self.offset + i
            body = str(c) if e == 0 else (f"{c}*t^{e}" if e != 1 else f"{c}*t")
            parts.append(body)
            if len(parts) >= 8:
                parts.append("...")
                break
        return " + ".join(parts).replace("+ -", "- ") + f" + O(t^{self.order})"

    def __repr__(self):
        return f"TruncatedSeries(offset={self.offset}, coeffs={list(self.coeffs)!r}, order={self.order})"


def expand_ratfunc(r: RationalFunction, at: str, order: int) -> TruncatedSeries:
    """Exact series expansion of a rational function at 0 or infinity.

    At infinity the expansion variable is s = 1/t and the result may have a
    negative offset (pole at infinity).
    """
    if at == "infinity":
        g, m = r.at_infinity()
        if g.is_zero():
            return TruncatedSeries.zero(order)
        return expand_ratfunc(g, "zero", order + m).shift(-m)
    if at != "zero":
        raise ValueError("expansion point must be 'zero' or 'infinity'")
    if r.is_zero():
        return TruncatedSeries.zero(order)
    num, den = r.num, r.den
    if den[0] == 0:
        raise ZeroDivisionError("pole at expansion point")
    vn = next(i for i, c in enumerate(num.coeffs) if c != 0)
    n = order - vn
    if n <= 0:
        return TruncatedSeries.zero(order)
    a = [num[vn + i] for i in range(n)]
    b = [den[i] for i in range(n)]
    inv0 = Fraction(1) / Fraction(b[0])
    out = [Fraction(0)] * n
    for k in range(n):
        s = Fraction(a[k])
        for i in range(1, k + 1):
            if b[i] != 0:
                s -= Fraction(b[i]) * out[k - i]
        out[k] = s * inv0
    return TruncatedSeries(vn, out, order)
