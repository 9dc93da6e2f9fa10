"""Denominator bounds, p-adic reductions, and integral-level measurement.

Two sources of information are combined and kept clearly apart:

* certificates (upper bounds on the integral level): the 8*(12g2(0))^4 and
  8*delta(Delta)*nu(12g2)^4 bounds, sharpened by the p-adic recurrence
  reduction, optionally once more through the even-subsequence trick when
  the solution is an even function;
* measurements (lower bounds): exact expansion of u_0..u_N and the p-adic
  growth of the denominators.

The level is reported as exact only when the two sides meet.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curves import InvariantSet, WeierstrassFamily, compute_invariants, reduce_mod_t
from .picard_fuchs import (HolonomicRecurrence, RecurrenceShapeError, SecondOrderODE,
                           derive_ode, ode_to_recurrence, _primitive_list)
from .poly import Poly
from .series import TruncatedSeries


class ReductionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# theoretical bounds
# ---------------------------------------------------------------------------

def genint_bound(inv: InvariantSet) -> int:
    """d_n | bound^n with bound = 8*(12g2(0))^4, for polynomial coordinates."""
    if not (inv.g2_12.is_polynomial() and inv.delta.is_polynomial()):
        raise ValueError("coordinates are not polynomial; use strongint_bound")
    if inv.delta.nu() != 0:
        raise ValueError("Delta(0) != 0; shift the parameter first")
    c = inv.g2_12.value_at_zero()
    if c == 0:
        raise ValueError("12 g2(0) = 0; use strongint_bound")
    return 8 * int(c) ** 4


def strongint_bound(inv: InvariantSet) -> int:
    """d_n | bound^n with bound = |8 * delta(Delta) * nu(12g2)^4| for Z(t) coordinates."""
    if inv.delta.nu() != 0:
        raise ValueError("Delta(0) != 0; shift the parameter first")
    return abs(8 * inv.delta.delta() * inv.g2_12.nu() ** 4)


# ---------------------------------------------------------------------------
# Theorem-shaped p-adic reduction
# ---------------------------------------------------------------------------

def _vp(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class Reduction:
    p: int
    k0: int
    s: int
    reduced: HolonomicRecurrence


def sharperub_reduce(rec: HolonomicRecurrence, p: int, k0: int | None = None) -> Reduction:
    """p-adic reduction of an integral (n+1)^2-leading recurrence.

    Writes the relation as (n+1)^2 u_{n+1} = sum_i p^{k_i} q_i(n) u_{n-i} and,
    with s = ceil(k0 - 2/(p-1)), certifies p^(n*s) | u_n and returns the
    recurrence of v_n = u_n / p^(n*s).  By default k0 is maximal subject to
    k_i >= (1+i) k0 over the terms actually present (a missing u_n term, or
    one with spare p-content, leaves k0 free up to floor(k_i/(1+i))).
    """
    if rec.leading() != Poly([1, 2, 1]):
        raise ReductionError("reduction hypotheses not met: leading weight is not (n+1)^2")
    if not rec.initials or Fraction(rec.initials[0]) != 1:
        raise ReductionError("reduction hypotheses not met: u_0 != 1")
    kvals: dict[int, int] = {}
    for i in range(0, rec.span + 1):
        w = rec.weight(i)
        if w.is_zero():
            continue
        if not w.is_integral():
            raise ReductionError("reduction hypotheses not met: non-integral weights")
        kvals[i] = _vp(int(w.content()), p)
    if not kvals:
        raise ReductionError("reduction hypotheses not met: empty right-hand side")
    feasible = min(k // (1 + i) for i, k in kvals.items())
    if k0 is None:
        k0 = feasible
    elif k0 > feasible:
        raise ReductionError(
            f"reduction hypotheses not met: k_i >= (1+i)k0 fails for k0 = {k0}")
    # s = ceil(k0 - 2/(p-1)), computed without floats
    s = -((2 - k0 * (p - 1)) // (p - 1))
    if s <= 0:
        return Reduction(p=p, k0=k0, s=0, reduced=rec)
    reduced = rec.rescale(Fraction(1, p ** s))
    for i in range(0, reduced.span + 1):
        if not reduced.weight(i).is_integral():
            raise ReductionError("internal: reduced weights not integral")
    return Reduction(p=p, k0=k0, s=s, reduced=reduced)


# ---------------------------------------------------------------------------
# empirical measurement
# ---------------------------------------------------------------------------

def _prime_factors(x: int) -> list[int]:
    x = abs(x)
    out = []
    d = 2
    while d * d <= x:
        if x % d == 0:
            out.append(d)
            while x % d == 0:
                x //= d
        d += 1 if d == 2 else 2
    if x > 1:
        out.append(x)
    return out


@dataclass
class EmpiricalLevel:
    N_used: int
    per_prime: dict  # p -> {"e": Fraction, "argmax": n, "ceil": int}
    integer_candidate: int
    all_integral: bool

    def exponent(self, p: int) -> Fraction:
        return self.per_prime.get(p, {"e": Fraction(0)})["e"]


def empirical_level(rec: HolonomicRecurrence, N: int, primes: list[int] | None = None) -> EmpiricalLevel:
    """Measure e_p = max_{1<=n<=N} ord_p(denominator(u_n))/n from exact terms.

    This is a lower-bound measurement: larger N can only raise it.  When
    ``primes`` is omitted the prime support of the observed denominators is
    factored directly.
    """
    terms = rec.terms(N + 1)
    dens = [t.denominator for t in terms]
    if primes is None:
        primes = set()
        for d in dens:
            if d > 1:
                primes.update(_prime_factors(d))
        primes = sorted(primes)
    per: dict[int, dict] = {}
    for p in primes:
        best = Fraction(0)
        arg = None
        worst_ceil = 0
        for n in range(1, N + 1):
            v = 0
            d = dens[n]
            while d % p == 0:
                d //= p
                v += 1
            if v:
                r = Fraction(v, n)
                if r > best:
                    best, arg = r, n
                c = -(-v // n)
                if c > worst_ceil:
                    worst_ceil = c
        if best > 0:
            per[p] = {"e": best, "argmax": arg, "ceil": worst_ceil}
    cand = 1
    for p, info in per.items():
        cand *= p ** info["ceil"]
    return EmpiricalLevel(N_used=N, per_prime=per, integer_candidate=cand,
                          all_integral=(cand == 1 and all(d == 1 for d in dens)))


# ---------------------------------------------------------------------------
# fourth-power tests (for the fourth-root hypotheses)
# ---------------------------------------------------------------------------

def fourth_power_test(pol: Poly, mode: str = "mod8", order: int = 64):
    """Test whether pol (constant term 1) is a fourth power where it matters.

    mode='mod8': exhaustive search for g with g^4 = pol (mod 8) and
    deg g <= deg(pol)/4; a witness certifies that pol has a fourth root in
    Z[[t]].  mode='series': expand pol^(1/4) and report the first
    non-integral coefficient (necessary condition only).
    """
    if pol[0] != 1:
        raise ValueError("constant term must be 1")
    if mode == "series":
        s = TruncatedSeries.from_poly(pol, order).pow_fractional(1, 4)
        for e in range(order):
            c = s[e]
            if isinstance(c, Fraction) and c.denominator != 1:
                return {"mode": "series", "integral_to": e, "first_bad": e}
        return {"mode": "series", "integral_to": order, "first_bad": None}
    if mode != "mod8":
        raise ValueError("mode must be 'mod8' or 'series'")
    d = pol.degree or 0
    dmax = d // 4
    target = [pol[i] % 8 for i in range(d + 1)]

    def coeff_of_g4(g: list[int], m: int) -> int:
        total = 0
        for i in range(min(m, len(g) - 1) + 1):
            gi = g[i]
            if not gi:
                continue
            for j in range(min(m - i, len(g) - 1) + 1):
                gj = g[j]
                if not gj:
                    continue
                for k in range(min(m - i - j, len(g) - 1) + 1):
                    l = m - i - j - k
                    if 0 <= l < len(g):
                        total += gi * gj * g[k] * g[l]
        return total % 8

    def extend(g: list[int]):
        m = len(g)
        if m > dmax:
            for mm in range(m, d + 1):
                if coeff_of_g4(g, mm) != target[mm]:
                    return None
            return g
        for c in range(8):
            g.append(c)
            if coeff_of_g4(g, m) == target[m]:
                found = extend(g)
                if found is not None:
                    return found
            g.pop()
        return None

    for g0 in (1, 3, 5, 7):
        found = extend([g0])
        if found is not None:
            return {"mode": "mod8", "witness": Poly(found)}
    return {"mode": "mod8", "witness": None}


# ---------------------------------------------------------------------------
# inspection-only sufficient conditions
# ---------------------------------------------------------------------------

def syntactic_checks(fam: WeierstrassFamily) -> dict:
    """Flags for the by-inspection integrality conditions.

    intp1: polynomial coordinates reducing mod t to y^2 +- xy = x^3 (then all
    u_n are integers).  ratcor2: rational coordinates reducing to y^2 + xy = x^3
    with unit denominator constant terms (then the integral level is 1).
    """
    out = {"intp1": False, "ratcor2": False}
    try:
        red = reduce_mod_t(fam)
    except ZeroDivisionError:
        return out
    if red["multiplicative_shape"] and fam.has_polynomial_coordinates():
        out["intp1"] = True
    vals = red["values"]
    if vals["a1"] == 1 and all(vals[k] == 0 for k in ("a2", "a3", "a4", "a6")):
        if all(a.delta() in (1, -1) for a in fam.coordinates()):
            out["ratcor2"] = True
    return out


# ---------------------------------------------------------------------------
# even-subsequence trick
# ---------------------------------------------------------------------------

def even_part_ode(ode: SecondOrderODE) -> SecondOrderODE:
    """ODE satisfied by g where f(t) = g(t^2), for parity-split equations.

    Requires P2, P0 odd and P1 even; then with P2 = t E2(t^2) etc. the even
    part satisfies 4 z E2 g'' + (2 E2 + 2 E1) g' + E0 g = 0.
    """
    def split(p: Poly, want_odd: bool) -> Poly:
        for e, c in enumerate(p.coeffs):
            if c and (e % 2 == 0) == want_odd:
                raise RecurrenceShapeError("equation lacks the parity structure for t^2 -> t")
        start = 1 if want_odd else 0
        return Poly(p.coeffs[start::2])

    E2 = split(ode.P2, True)
    E1 = split(ode.P1, False)
    E0 = split(ode.P0, True)
    z = Poly([0, 1])
    trip = _primitive_list([E0, 2 * E2 + 2 * E1, 4 * z * E2])
    if trip[2].leading() < 0:
        trip = [-p for p in trip]
    return SecondOrderODE(*trip)


# ---------------------------------------------------------------------------
# full level analysis
# ---------------------------------------------------------------------------

@dataclass
class IntegralityCertificate:
    theoretical_bound: int
    per_prime_reductions: list
    certified_scale: int              # f(certified_scale * t) in Z[[t]] is proven
    empirical: EmpiricalLevel
    N_used: int
    verdicts: dict
    fractional_certified: dict        # p -> Fraction exponent e with p^(e n) clearing d_n
    level_lower: int
    level_upper: int
    level_exact: int | None
    even_trick_used: bool = False
    notes: list = field(default_factory=list)


def _reduce_to_fixpoint(rec: HolonomicRecurrence, scale: int):
    """Iterate the p-adic reduction over all primes of ``scale`` until stable."""
    log = []
    while scale > 1:
        progress = False
        for p in _prime_factors(scale):
            current = rec.rescale(scale)
            try:
                red = sharperub_reduce(current, p)
            except ReductionError as exc:
                log.append({"p": p, "skipped": str(exc)})
                continue
            if red.s > 0:
                log.append({"p": p, "k0": red.k0, "s": red.s})
                scale //= p ** min(red.s, _vp(scale, p))
                progress = True
        if not progress:
            break
    return scale, log


def analyze_level(fam: WeierstrassFamily, N: int = 200) -> IntegralityCertificate:
    """Combine bounds, reductions, the even-subsequence trick, and exact
    expansion into a level verdict for the family's holomorphic solution."""
    inv = compute_invariants(fam)
    notes = []
    bound = strongint_bound(inv)
    ode = derive_ode(inv)
    rec = ode_to_recurrence(ode, "zero")

    certified, reductions = _reduce_to_fixpoint(rec, bound)

    checks = syntactic_checks(fam)
    if checks["intp1"] or checks["ratcor2"]:
        certified = 1
        notes.append("level 1 by inspection (reduction mod t)")

    emp = empirical_level(rec, N, primes=_prime_factors(bound) or None)

    fractional = {p: Fraction(_vp(certified, p)) for p in _prime_factors(certified)}
    even_used = False
    terms = rec.terms(N + 1)
    if certified > 1 and all(terms[j] == 0 for j in range(1, N + 1, 2)):
        try:
            ode_even = even_part_ode(ode)
            rec_even = ode_to_recurrence(ode_even, "zero")
            K, even_log = _reduce_to_fixpoint(rec_even, certified ** 2)
            even_used = True
            notes.append(f"even function: certified h({K} z) integral for h(t^2) = f(t)")
            reductions.extend({"even": True, **entry} for entry in even_log)
            fractional = {p: Fraction(_vp(K, p), 2) for p in _prime_factors(K)}
        except RecurrenceShapeError as exc:
            notes.append(f"even-subsequence trick unavailable: {exc}")

    upper = 1
    for p, e in fractional.items():
        upper *= p ** -((-e.numerator) // e.denominator)  # ceil(e)
    lower = emp.integer_candidate
    exact = upper if upper == lower else None
    return IntegralityCertificate(
        theoretical_bound=bound,
        per_prime_reductions=reductions,
        certified_scale=certified,
        empirical=emp,
        N_used=N,
        verdicts=checks,
        fractional_certified=fractional,
        level_lower=lower,
        level_upper=upper,
        level_exact=exact,
        even_trick_used=even_used,
        notes=notes,
    )
