"""Picard-Fuchs equations and their holonomic coefficient recurrences.

The second-order equation P2 F'' + P1 F' + P0 F = 0 is obtained by
eliminating the second component from the first-order system

    d/dt (f1, f2)^T = (1/(24 Delta)) [[-2 Delta', 36 gamma],
                                      [-3 g2 gamma, 2 Delta']] (f1, f2)^T,

i.e. substituting f2 = (f1' - A f1)/B into the second row and clearing
denominators.  The triple is normalized primitive over Z with lead(P2) > 0,
which makes comparisons against tabulated equations exact.

Equating the t^n coefficient of P0 f + P1 f' + P2 f'' = 0 gives the
holonomic relation sum_k w_k(n) u_{n-k} = 0 (w_{-1} multiplies u_{n+1}) with

    w_k(n) = p_k + q_{k+1} (n-k) + r_{k+2} (n-k-1)(n-k).

A Laurent solution sum_m V_m t^(-m) at infinity satisfies the reflected
relation sum_k w_k(-m) V_{m+k} = 0; re-indexing so the sequence starts at
its offset delta puts it back in the standard shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .curves import InvariantSet, WeierstrassFamily, compute_invariants
from .poly import Poly, content_gcd, poly_gcd
from .ratfunc import RationalFunction
from .series import TruncatedSeries, expand_ratfunc


class RecurrenceShapeError(ValueError):
    pass


def _clear_denominators(polys):
    den = 1
    for p in polys:
        for c in p.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
    return [p * den for p in polys]


def _primitive_list(polys):
    polys = _clear_denominators(polys)
    g = content_gcd(polys)
    if g > 1:
        polys = [Poly([c // g for c in p.coeffs]) for p in polys]
    return polys


@dataclass(frozen=True)
class SecondOrderODE:
    """P2 F'' + P1 F' + P0 F = 0 with a primitive integer triple, lead(P2) > 0."""

    P0: Poly
    P1: Poly
    P2: Poly

    def __post_init__(self):
        if self.P2.is_zero():
            raise ValueError("P2 must be nonzero")

    def apply_to(self, f: TruncatedSeries) -> TruncatedSeries:
        """P2 f'' + P1 f' + P0 f as a truncated series (identically 0 for solutions)."""
        pad = max(p.degree or 0 for p in (self.P0, self.P1, self.P2)) + 2
        fp = f.derivative()
        fpp = fp.derivative()
        return (TruncatedSeries.from_poly(self.P0, f.order + pad) * f
                + TruncatedSeries.from_poly(self.P1, f.order + pad) * fp
                + TruncatedSeries.from_poly(self.P2, f.order + pad) * fpp)

    def compose_linear(self, k) -> "SecondOrderODE":
        """Equation satisfied by F(k t)."""
        k = Fraction(k)
        if k == 0:
            raise ValueError("scale factor must be nonzero")
        trip = _primitive_list([
            self.P0.compose_linear(k) * (k * k),
            self.P1.compose_linear(k) * k,
            self.P2.compose_linear(k),
        ])
        if trip[2].leading() < 0:
            trip = [-p for p in trip]
        return SecondOrderODE(*trip)


def derive_ode(arg) -> SecondOrderODE:
    """Picard-Fuchs equation of a family (or of a precomputed invariant set)."""
    inv = compute_invariants(arg) if isinstance(arg, WeierstrassFamily) else arg
    if not isinstance(inv, InvariantSet):
        raise TypeError("expected a WeierstrassFamily or InvariantSet")
    if inv.gamma.is_zero():
        raise ValueError("degenerate system: constant j")
    delta, gamma, g2 = inv.delta, inv.gamma, inv.g2
    scale = 24 * delta
    A = (-2) * delta.derivative() / scale
    B = 36 * gamma / scale
    C = (-3) * g2 * gamma / scale
    D = 2 * delta.derivative() / scale
    # substitute f2 = (f1' - A f1)/B into f2' = C f1 + D f2:
    R2 = B
    R1 = -(A * B + B.derivative() + D * B)
    R0 = A * B.derivative() + A * B * D - A.derivative() * B - C * B * B
    num_gcd = poly_gcd(poly_gcd(R2.num, R1.num), R0.num)
    den_lcm = R2.den
    for other in (R1.den, R0.den):
        den_lcm = den_lcm * other.exact_div(poly_gcd(den_lcm, other))
    trip = [R.num.exact_div(num_gcd) * den_lcm.exact_div(R.den) for R in (R0, R1, R2)]
    trip = _primitive_list(trip)
    if trip[2].leading() < 0:
        trip = [-p for p in trip]
    return SecondOrderODE(*trip)


# ---------------------------------------------------------------------------
# holonomic recurrences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HolonomicRecurrence:
    """Relation sum_{k=-1}^{L} weight(k)(n) * u_{n-k} = 0.

    ``weights[0]`` (k = -1) multiplies u_{n+1} and is normalized to have a
    positive leading coefficient in n.  ``initials`` pins leading sequence
    entries the relation alone does not determine (u_0 = 1 for Picard-Fuchs
    recurrences).  ``offset`` is the exponent of entry 0: delta for
    expansions at infinity (in s = 1/t), 0 at the origin.
    """

    weights: tuple[Poly, ...]
    initials: tuple = (Fraction(1),)
    offset: int = 0

    @property
    def span(self) -> int:
        """Deepest back-reference L; the relation touches u_{n-L} .. u_{n+1}."""
        return len(self.weights) - 2

    def weight(self, k: int) -> Poly:
        """Weight of u_{n-k}, for k = -1 .. span."""
        return self.weights[k + 1]

    def leading(self) -> Poly:
        return self.weights[0]

    def rhs_weights(self) -> tuple[Poly, ...]:
        """Weights of the solved form  leading(n) u_{n+1} = sum_k rhs[k](n) u_{n-k}."""
        return tuple(-w for w in self.weights[1:])

    def terms(self, count: int):
        """First ``count`` sequence entries as exact rationals."""
        u = [Fraction(x) for x in self.initials[:count]]
        lead = self.leading()
        L = self.span
        while len(u) < count:
            m = len(u) - 1  # relation at n = m yields u_{m+1}
            c = lead(m)
            if c == 0:
                raise RecurrenceShapeError(f"vanishing leading weight at n = {m}")
            s = Fraction(0)
            for k in range(0, L + 1):
                if m - k >= 0:
                    w = self.weight(k)(m)
                    if w:
                        s += w * u[m - k]
            u.append(-s / c)
        return u

    def rescale(self, k) -> "HolonomicRecurrence":
        """Recurrence for the coefficients of f(k t): weight(j) -> k^(j+1) weight(j)."""
        k = Fraction(k)
        if k == 0:
            raise ValueError("rescaling factor must be nonzero")
        scaled = [self.weight(j) * k ** (j + 1) for j in range(-1, self.span + 1)]
        scaled = _primitive_list(scaled)
        inits = tuple(Fraction(x) * k ** i for i, x in enumerate(self.initials))
        return HolonomicRecurrence(tuple(scaled), inits, self.offset)

    def poincare_limits(self):
        """k_j = -lim w_j(n)/w_{-1}(n) for j = 0..span, as exact rationals."""
        lead = self.leading()
        d = lead.degree
        if d is None:
            raise RecurrenceShapeError("zero leading weight")
        out = []
        for k in range(0, self.span + 1):
            w = self.weight(k)
            if not w.is_zero() and w.degree > d:
                raise RecurrenceShapeError(
                    f"weight of u_(n-{k}) has n-degree {w.degree} > leading degree {d}")
            out.append(-Fraction(w[d], lead[d]))
        return out


def _weights_from_triple(P0: Poly, P1: Poly, P2: Poly) -> list[Poly]:
    p, q, r = P0, P1, P2
    L = max(p.degree if p.degree is not None else -1,
            q.degree - 1 if q.degree is not None else -1,
            r.degree - 2 if r.degree is not None else -1)
    n = Poly([0, 1])
    out = []
    for k in range(-1, L + 1):
        w = Poly([p[k]] if k >= 0 else [])
        w = w + q[k + 1] * (n - k)
        w = w + r[k + 2] * (n - k - 1) * (n - k)
        out.append(w)
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return out


def _sign_normalize(ws: list[Poly]) -> tuple[Poly, ...]:
    lead = ws[0]
    if lead.is_zero():
        raise RecurrenceShapeError("relation does not involve u_{n+1}")
    if lead.leading() < 0:
        ws = [-w for w in ws]
    g = content_gcd(ws)
    if g > 1:
        ws = [Poly([c // g for c in w.coeffs]) for w in ws]
    return tuple(ws)


def ode_to_recurrence(ode: SecondOrderODE, point: str = "zero") -> HolonomicRecurrence:
    """Holonomic recurrence of the distinguished solution at 0 or infinity."""
    if point == "zero":
        return _recurrence_at_zero(ode)
    if point == "infinity":
        return _recurrence_at_infinity(ode)
    raise ValueError("point must be 'zero' or 'infinity'")


def _recurrence_at_zero(ode: SecondOrderODE) -> HolonomicRecurrence:
    r = ode.P2
    if r[0] != 0:
        raise RecurrenceShapeError(
            "P2(0) != 0: relation would involve u_{n+2} (origin is not a singular fiber)")
    if r[1] == 0:
        raise RecurrenceShapeError("recurrence has apparent singularity at origin")
    ws = _sign_normalize(_weights_from_triple(ode.P0, ode.P1, ode.P2))
    return HolonomicRecurrence(ws, (Fraction(1),), 0)


def _poly_sub_linear(p: Poly, a: int, b: int) -> Poly:
    """p(a*n + b) as a polynomial in n."""
    arg = Poly([b, a])
    acc = Poly()
    for c in reversed(p.coeffs):
        acc = acc * arg + c
    return acc


def _recurrence_at_infinity(ode: SecondOrderODE) -> HolonomicRecurrence:
    ws = _weights_from_triple(ode.P0, ode.P1, ode.P2)
    L = len(ws) - 2
    wL = ws[-1]
    if wL.is_zero():
        raise RecurrenceShapeError("trailing weight vanishes")
    # Admissible offsets delta are integer roots of x -> w_L(-(x - L)): the
    # relation at absolute index m = delta - L must not force V_delta = 0.
    bound = (ode.P2.degree or 0) + 2
    roots = [x for x in range(0, bound + 1) if wL(L - x) == 0]
    if not roots:
        raise RecurrenceShapeError("no admissible exponent offset at infinity")
    # starting below the largest root would hit a zero leading weight there
    delta = max(roots)
    out = []
    for j in range(-1, L + 1):
        k = L - 1 - j
        out.append(_poly_sub_linear(ws[k + 1], -1, -(1 - L + delta)))
    return HolonomicRecurrence(_sign_normalize(out), (Fraction(1),), delta)


def expand_solution(rec: HolonomicRecurrence, count: int) -> TruncatedSeries:
    """Series sum_j u_j x^(offset+j) over the first ``count`` entries
    (x = t at the origin, x = 1/t at infinity)."""
    u = rec.terms(count)
    return TruncatedSeries(rec.offset, u, rec.offset + count)


# ---------------------------------------------------------------------------
# hypergeometric oracle
# ---------------------------------------------------------------------------

def hypergeometric_oracle(inv: InvariantSet, count: int, point: str = "zero") -> TruncatedSeries:
    """Independent expansion of the same solution from the classical closed
    form (12 g2 / normalization)^(-1/4) * F(5/12, 1/12; 1; 1/j).

    At zero the normalization is 12 g2(0); at infinity it is the leading
    coefficient of the polynomial 12 g2 and the variable is s = 1/t.
    """
    invj = 1 / inv.j
    if point == "zero":
        if inv.delta.nu() != 0:
            raise ValueError("oracle at zero requires Delta(0) = 0")
        c0 = inv.g2_12.value_at_zero()
        if c0 == 0:
            raise ValueError("oracle at zero requires g2(0) != 0")
        pre = expand_ratfunc(inv.g2_12 / c0, "zero", count).pow_fractional(-1, 4)
        z = expand_ratfunc(invj, "zero", count)
        if z.is_zero() or z.offset < 1:
            raise ValueError("1/j must vanish at the expansion point")
        return (pre * _gauss_f_5_1_12(z, count)).truncate(count)
    if point != "infinity":
        raise ValueError("point must be 'zero' or 'infinity'")
    if not inv.g2_12.is_polynomial():
        raise ValueError("oracle at infinity requires polynomial coordinates")
    g2_poly = inv.g2_12.as_poly()
    d = g2_poly.degree
    if d is None or d % 4 != 0:
        raise ValueError("oracle at infinity requires 4 | deg g2")
    alpha = g2_poly.leading()
    order = count + d // 4
    z = expand_ratfunc(invj, "infinity", order)
    if z.is_zero() or z.offset < 1:
        raise ValueError("oracle at infinity requires j(infinity) = infinity")
    G = TruncatedSeries.from_poly(g2_poly.reversal(d), order) * Fraction(1, alpha)
    pre = G.pow_fractional(-1, 4).shift(d // 4)
    return (pre * _gauss_f_5_1_12(z, order)).truncate(d // 4 + count)


def _gauss_f_5_1_12(z: TruncatedSeries, order: int) -> TruncatedSeries:
    """F(5/12, 1/12; 1; z(t)) summed exactly; z must have valuation >= 1."""
    out = TruncatedSeries.one(order)
    power = TruncatedSeries.one(order)
    coeff = Fraction(1)
    k = 0
    v = max(z.offset, 1)
    while (k + 1) * v < order:
        power = (power * z).truncate(order)
        if power.is_zero():
            break
        coeff *= (Fraction(5, 12) + k) * (Fraction(1, 12) + k) / Fraction((k + 1) * (k + 1))
        out = out + power * coeff
        k += 1
    return out
