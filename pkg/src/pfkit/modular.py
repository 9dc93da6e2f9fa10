"""q-expansions of eta quotients and periodic-exponent products, change of
variable into a Hauptmodul, and Atkin-Swinnerton-Dyer congruence sweeps.

All series here have integer coefficients and are exact to their stated
order; congruences are evaluated with exact modular arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .picard_fuchs import HolonomicRecurrence
from .poly import Poly
from .series import TruncatedSeries


@dataclass(frozen=True)
class PeriodicExponentProduct:
    """q^leading_power * prod_{n>=1} (1 - q^n)^(exponents[n mod M])."""

    leading_power: int
    exponents: tuple

    @property
    def period(self) -> int:
        return len(self.exponents)


@dataclass(frozen=True)
class EtaQuotientSpec:
    """prod eta(m tau)^e for factors (m, e); requires 24 | sum m*e."""

    factors: tuple

    def q_prefactor(self) -> int:
        total = sum(m * e for m, e in self.factors)
        if total % 24:
            raise ValueError("non-integral q-exponent: 24 does not divide sum(m*e)")
        return total // 24


def _mul_one_minus_qm(c: list, m: int, e: int) -> None:
    """Multiply the coefficient array in place by (1 - q^m)^e (e of either sign)."""
    N = len(c)
    if e > 0:
        for _ in range(e):
            for i in range(N - 1, m - 1, -1):
                c[i] -= c[i - m]
    else:
        for _ in range(-e):
            for i in range(m, N):
                c[i] += c[i - m]


def expand_product(spec: PeriodicExponentProduct, N: int) -> TruncatedSeries:
    """Integer q-expansion to order N (exponents below N)."""
    if N < 1:
        raise ValueError("order must be positive")
    size = max(N - spec.leading_power, 1)
    c = [0] * size
    c[0] = 1
    M = spec.period
    for n in range(1, size):
        e = spec.exponents[n % M]
        if e:
            _mul_one_minus_qm(c, n, e)
    return TruncatedSeries(spec.leading_power, c, spec.leading_power + size)


def expand_eta_quotient(spec: EtaQuotientSpec, N: int) -> TruncatedSeries:
    """Integer q-expansion of an eta quotient to order N."""
    lead = spec.q_prefactor()
    size = max(N - lead, 1)
    c = [0] * size
    c[0] = 1
    for m, e in spec.factors:
        for n in range(m, size, m):
            _mul_one_minus_qm(c, n, e)
    return TruncatedSeries(lead, c, lead + size)


def form_in_hauptmodul(fq: TruncatedSeries, tq: TruncatedSeries) -> TruncatedSeries:
    """Coefficients v_n with f(tau) = sum v_n t(tau)^n, via series reversion."""
    if tq.offset != 1:
        raise ValueError("Hauptmodul series must have valuation 1")
    return fq.compose(tq.reversion())


def verrill_identity_check(fq: TruncatedSeries, tq: TruncatedSeries,
                           gq: TruncatedSeries, N: int) -> bool:
    """Check f * (q/t) * dt/dq = g through q^N (exact integer arithmetic)."""
    needed = N + 1
    if min(fq.order, tq.order, gq.order) < needed:
        raise ValueError(f"insufficient precision: need series through q^{N} "
                         f"(order >= {needed})")
    q_over_t = tq.shift(-1).inverse()
    lhs = fq * q_over_t * tq.derivative()
    diff = lhs - gq
    if diff.order < needed:
        raise ValueError(f"insufficient precision after arithmetic: order {diff.order}")
    return diff.is_zero() or diff.valuation() > N


def legendre_symbol(a: int, p: int) -> int:
    """(a|p) by Euler's criterion; p an odd prime."""
    if p <= 2 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _primes_upto(n: int):
    sieve = bytearray([1]) * (n + 1)
    out = []
    for p in range(2, n + 1):
        if sieve[p]:
            out.append(p)
            for q in range(p * p, n + 1, p):
                sieve[q] = 0
    return out


@dataclass
class CongruenceReport:
    checks: list          # dicts: p, r, m, lhs (reduced), ok
    passed: int
    failed: int
    skipped_primes: list

    def all_pass(self) -> bool:
        return self.failed == 0 and self.passed > 0


def asd_congruence_sweep(v, gamma_of, p_max: int, r_max: int, n_max: int,
                         char_modulus: int = 7) -> CongruenceReport:
    """Three-term congruence sweep  v_{m p^r} - g_p v_{m p^(r-1)} + eps_p p^2 v_{m p^(r-2)}
    = 0 mod p^r  for primes p <= p_max (p not dividing char_modulus), r <= r_max,
    m p^r <= n_max.  For r = 1 the two-term form v_{mp} = g_p v_m (mod p) is used.

    ``v`` is an integer sequence indexed from 0 (length > n_max); ``gamma_of``
    maps a prime p to the p-th q-coefficient of the weight-3 form.
    """
    checks = []
    skipped = []
    passed = failed = 0
    for p in _primes_upto(p_max):
        if char_modulus % p == 0:
            skipped.append(p)
            continue
        gp = gamma_of(p)
        eps = legendre_symbol(p, char_modulus)
        for r in range(1, r_max + 1):
            mod = p ** r
            m = 1
            while m * p ** r <= n_max:
                if r == 1:
                    lhs = v[m * p] - gp * v[m]
                else:
                    lhs = (v[m * p ** r] - gp * v[m * p ** (r - 1)]
                           + eps * p * p * v[m * p ** (r - 2)])
                ok = lhs % mod == 0
                checks.append({"p": p, "r": r, "m": m, "lhs_mod": lhs % mod, "ok": ok})
                if ok:
                    passed += 1
                else:
                    failed += 1
                m += 1
    return CongruenceReport(checks=checks, passed=passed, failed=failed,
                            skipped_primes=skipped)


# ---------------------------------------------------------------------------
# the index-24 genus-zero case at level 7
# ---------------------------------------------------------------------------

# exponent patterns by residue class mod 7 (index = n mod 7)
G17_HAUPTMODUL = PeriodicExponentProduct(1, (0, 3, -2, -1, -1, -2, 3))
G17_WEIGHT1_FORM = PeriodicExponentProduct(1, (2, 0, 1, -2, -2, 1, 0))
G17_CUSP_FORM = EtaQuotientSpec(((1, 3), (7, 3)))


def g17_v_recurrence() -> HolonomicRecurrence:
    """Recurrence of the coefficients of the weight-1 form in the Hauptmodul
    (v_0 = 0, v_1 = 1, v_2 = 3, v_3 = 12, v_4 = 59, ...)."""
    n = Poly([0, 1])
    weights = (
        n * n,                                   # multiplies v_{n+1}
        -(9 * n * n - 9 * n + 3),
        13 * n * n - 26 * n + 15,
        -((2 * n - 3) ** 2),
        -((n - 2) ** 2),
    )
    return HolonomicRecurrence(weights, (Fraction(0), Fraction(1)), 0)


def g17_gamma(p: int, _cache: dict = {}) -> int:
    """p-th q-coefficient of the level-7 weight-3 cusp form eta(z)^3 eta(7z)^3."""
    if p not in _cache:
        series = expand_eta_quotient(G17_CUSP_FORM, p + 1)
        for e in range(1, p + 1):
            _cache[e] = series[e]
    return _cache[p]
