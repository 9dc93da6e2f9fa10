"""Dominant-root asymptotics of Poincare-type recurrences.

For a recurrence (n+1)^2 u_{n+1} = sum_k p_k(n) u_{n-k} with quadratic
weights p_k(n) = a_k n^2 + b_k n + c_k, the limit coefficients a_k define
the characteristic polynomial chi, whose unique positive root lambda
controls u_n ~ ell0 * lambda^n / n when a_k(k-1)+b_k = 0, c_k + k a_k >= 0,
lambda is dominant in modulus, and u_n is eventually positive.

The profile v_n = n u_n / lambda^n is iterated in interval arithmetic seeded
by a rational lambda enclosure.  Two certified bounds come out of one scan:

* an upper tail bound ell_hat = max(window near N) * exp(2 beta / N), where
  beta bounds the perturbation R(L+1)/(gamma (n-L)(n+1)) * n^2 over n >= N;
* a two-sided bracket for ell0 = lim v_n from the telescoped invariant
  Phi(n) = sum_j alpha_j v_{n-j} whose increments are exactly the positive
  residual terms: ell0 = (Phi(M) + sum_{m>=M} R_{m+1}) / psi, with the
  residual sum enclosed through sum_{m>=M} 1/((m-k)(m+1)) in closed form
  and rigorous enclosures [m0, V] of v on the tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath
from mpmath import iv, mp

from .picard_fuchs import HolonomicRecurrence, RecurrenceShapeError
from .poly import Poly
from .roots import isolate_real_roots, poly_gcd, refine_root, square_free_part


def _frac_iv(x: Fraction):
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def _interval_iv(lo: Fraction, hi: Fraction):
    return iv.mpf([_frac_iv(lo).a, _frac_iv(hi).b])


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mp.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    val = Fraction(man) * Fraction(2) ** exp
    return -val if sign else val


# ---------------------------------------------------------------------------
# characteristic data
# ---------------------------------------------------------------------------

@dataclass
class CharacteristicData:
    chi: Poly                          # integer, monic up to clearing
    limits: list                       # k_j as Fractions
    lambda_enclosure: tuple | None     # (Fraction lo, Fraction hi)
    positive_root_unique: bool
    dominance: str                     # "true" | "false" | "unverified"
    dominance_method: str
    decomposition: list | None         # per k: dict(a, b, c, residual Poly)
    leading_is_unit: bool

    def residuals(self):
        if self.decomposition is None:
            return None
        return [d["residual"] for d in self.decomposition]


def characteristic_polynomial(rec: HolonomicRecurrence, tol: Fraction = Fraction(1, 10 ** 9),
                              refine: bool = True) -> CharacteristicData:
    """Limit polynomial, dominant-root enclosure, and quadratic decomposition."""
    ks = rec.poincare_limits()
    L = rec.span
    den = 1
    for k in ks:
        den = den * k.denominator // gcd(den, k.denominator)
    chi = Poly([0] * (L + 1) + [den]) - Poly([int(k * den) for k in reversed(ks)])
    chi = chi.primitive()

    unit_lead = rec.leading() == Poly([1, 2, 1])
    decomposition = None
    if unit_lead:
        decomposition = []
        for k, p in enumerate(rec.rhs_weights()):
            a = p[2]
            residual = p - a * Poly([-k, 1]) * Poly([1, 1])  # p - a(n+1)(n-k)
            decomposition.append({"a": a, "b": p[1], "c": p[0], "residual": residual})

    intervals = isolate_real_roots(chi)
    positive = _positive_roots(chi, intervals)
    unique = len(positive) == 1
    enclosure = None
    lam_origin = None
    if positive:
        # candidate dominant eigenvalue: the largest positive real root
        (a, b), lam_origin = positive[-1]
        if refine:
            a, b = refine_root(chi, a, b, tol)
        enclosure = (a, b)

    dominance, method = _dominance(chi, intervals, enclosure, lam_origin)
    return CharacteristicData(chi=chi, limits=ks, lambda_enclosure=enclosure,
                              positive_root_unique=unique, dominance=dominance,
                              dominance_method=method, decomposition=decomposition,
                              leading_is_unit=unit_lead)


def _positive_roots(chi: Poly, intervals):
    """Refined enclosures of the strictly positive real roots, with their
    original isolating intervals attached."""
    out = []
    for a, b in intervals:
        lo, hi = refine_root(chi, a, b, Fraction(1, 10 ** 6))
        if hi <= 0 or (lo == hi == 0):
            continue
        if lo <= 0:
            lo, hi = refine_root(chi, lo, hi, Fraction(1, 10 ** 12))
            if hi <= 0 or lo <= 0:
                continue  # root is 0 or negative (or too close to 0 to matter)
        out.append(((lo, hi), (a, b)))
    return out


def _dominance(chi: Poly, intervals, enclosure, lam_origin) -> tuple[str, str]:
    if enclosure is None:
        return "false", "no positive real root"
    lam_lo, lam_hi = enclosure
    sf = square_free_part(chi)
    # exact tie test: -lambda is a root iff gcd(chi(x), chi(-x)) vanishes at lambda
    mirror = Poly([c if i % 2 == 0 else -c for i, c in enumerate(sf.coeffs)])
    g = poly_gcd(sf, mirror)
    if g.degree and g.degree > 0:
        va, vb = g(lam_lo), g(lam_hi)
        if va == 0 or vb == 0 or (va > 0) != (vb > 0):
            return "false", "exact: -lambda is also a root"
    # other real roots: refine until |root| is strictly below lambda
    for orig in intervals:
        if orig == lam_origin:
            continue
        lo, hi = orig
        tol = (lam_hi - lam_lo) if lam_hi > lam_lo else lam_lo / 10 ** 9
        for _ in range(8):
            lo, hi = refine_root(chi, lo, hi, tol)
            mod_hi = max(abs(lo), abs(hi))
            mod_lo = min(abs(lo), abs(hi)) if (lo > 0 or hi < 0) else Fraction(0)
            if mod_hi < lam_lo:
                break
            if mod_lo > lam_hi:
                return "false", "exact: real root of larger modulus"
            tol /= 2 ** 10
        else:
            # never separated: equal-modulus tie was excluded above, so this is
            # a refinement shortfall, not a mathematical tie
            return "unverified", "real-root modulus comparison did not separate"
    n_real = len(intervals)
    if n_real == (sf.degree or 0):
        return "true", "exact real-root isolation"
    # complex roots remain: numeric bound with margin
    try:
        old = mp.dps
        mp.dps = 60
        roots = mpmath.polyroots([mp.mpf(c) for c in reversed(sf.coeffs)], maxsteps=200,
                                 extraprec=120)
        mp.dps = old
    except Exception:
        return "unverified", "numeric root finding failed"
    lam_mid = (lam_lo + lam_hi) / 2
    lam_f = mp.mpf(lam_mid.numerator) / lam_mid.denominator
    margin = lam_f * mp.mpf("1e-10")
    worst = None
    for r in roots:
        if abs(mp.im(r)) < mp.mpf("1e-30"):
            continue
        if worst is None or abs(r) > worst:
            worst = abs(r)
    if worst is None or worst < lam_f - margin:
        return "true", "numeric margin on complex roots"
    return "unverified", "complex root modulus too close to lambda"


def dominant_root(chi: Poly, tol: Fraction = Fraction(1, 10 ** 9)) -> tuple[Fraction, Fraction]:
    """Rational enclosure of width <= tol of the unique positive real root."""
    intervals = isolate_real_roots(chi)
    positive = []
    for a, b in intervals:
        lo, hi = refine_root(chi, a, b, Fraction(1, 10 ** 6))
        if hi > 0 and lo > 0:
            positive.append((lo, hi))
        elif hi > 0 and lo <= 0:
            lo2, hi2 = refine_root(chi, a, b, Fraction(1, 10 ** 12))
            if lo2 > 0:
                positive.append((lo2, hi2))
    if not positive:
        raise ValueError("no positive root")
    if len(positive) > 1:
        raise ValueError("positive real root is not unique")
    a, b = positive[0]
    return refine_root(chi, a, b, tol)


def condition_checks(cd: CharacteristicData) -> dict:
    """Hypothesis flags for the growth theorems, per k and aggregated."""
    if cd.decomposition is None:
        raise ValueError("no quadratic decomposition (leading weight is not (n+1)^2)")
    a_nonneg, linear_le, linear_eq, c_ka = [], [], [], []
    for k, d in enumerate(cd.decomposition):
        a, b, c = d["a"], d["b"], d["c"]
        a_nonneg.append(a >= 0)
        linear_le.append(a * (k - 1) + b <= 0)
        linear_eq.append(a * (k - 1) + b == 0)
        c_ka.append(c + k * a >= 0)
    return {
        "a_nonneg": a_nonneg,
        "upper_bound_form": all(a_nonneg) and all(linear_le),
        "linear_le": linear_le,
        "linear_eq": linear_eq,
        "equality_form": all(a_nonneg) and all(linear_eq),
        "c_plus_ka_nonneg": c_ka,
        "limit_form": all(a_nonneg) and all(linear_eq) and all(c_ka),
    }


# ---------------------------------------------------------------------------
# profile scan in interval arithmetic
# ---------------------------------------------------------------------------

@dataclass
class ProfileScan:
    N: int
    M: int
    seeds: list                # iv values v_{M-L}..v_M
    window: list               # iv values v_{N-L}..v_N
    v_at: dict                 # n -> iv value for requested checkpoints
    vmax_sup: object           # float-ish upper bound over scanned range
    vmin_inf: object
    ratio_dev_sup: object | None
    prec_bits: int


def profile_scan(rec: HolonomicRecurrence, lam: tuple[Fraction, Fraction], N: int,
                 M: int | None = None, collect=(), ratio_range=None,
                 prec_bits: int = 120) -> ProfileScan:
    """Iterate v_n = n u_n / lambda^n in interval arithmetic from exact seeds.

    ``collect`` requests v at specific indices; ``ratio_range=(lo, hi)`` also
    tracks sup |lambda * v_{n+1}/v_n - lambda| (the n-corrected ratio deviation)
    over lo <= n < hi.
    """
    L = rec.span
    if M is None:
        M = max(L + 1, 8)
    if rec.leading() != Poly([1, 2, 1]):
        raise RecurrenceShapeError("profile scan requires leading weight (n+1)^2")
    old_prec = iv.prec
    iv.prec = prec_bits
    try:
        lam_iv = _interval_iv(*lam)
        inv_lam = [1 / lam_iv ** (k + 1) for k in range(L + 1)]
        weights = rec.rhs_weights()
        u = rec.terms(M + 1)
        for x in u:
            if x.denominator != 1:
                raise RecurrenceShapeError("profile scan requires an integer sequence")
        lam_pows = {}
        def v_exact(n):
            return iv.mpf(n * int(u[n])) / lam_iv ** n
        vs = [v_exact(M - L + j) for j in range(L + 1)]
        seeds = list(vs)
        vmax = max(x.b for x in vs)
        vmin = min(x.a for x in vs)
        out_at = {}
        ratio_dev = None
        n = M
        want = set(collect)
        while n < N:
            acc = iv.mpf(0)
            for k in range(L + 1):
                w = weights[k](n)
                if w:
                    acc += (iv.mpf(w) / ((n - k) * (n + 1))) * inv_lam[k] * vs[L - k]
            if ratio_range and ratio_range[0] <= n < ratio_range[1]:
                dev = abs(lam_iv * acc / vs[L] - lam_iv)
                if ratio_dev is None or dev.b > ratio_dev:
                    ratio_dev = dev.b
            vs = vs[1:] + [acc]
            n += 1
            if acc.b > vmax:
                vmax = acc.b
            if acc.a < vmin:
                vmin = acc.a
            if n in want:
                out_at[n] = acc
        return ProfileScan(N=N, M=M, seeds=seeds, window=list(vs), v_at=out_at,
                           vmax_sup=vmax, vmin_inf=vmin, ratio_dev_sup=ratio_dev,
                           prec_bits=prec_bits)
    finally:
        iv.prec = old_prec


# ---------------------------------------------------------------------------
# certified bounds for ell0
# ---------------------------------------------------------------------------

@dataclass
class EllBracket:
    lower: Fraction | None
    upper: Fraction | None
    ell_hat: Fraction          # boundingaround-style tail upper bound
    beta: Fraction
    R: int
    v_last: tuple              # (Fraction lo, Fraction hi) for v_N
    conditions: dict
    certified: bool
    note: str = ""


def ell_upper_bound(rec: HolonomicRecurrence, lam: tuple[Fraction, Fraction], N: int,
                    R: int | None = None, scan: ProfileScan | None = None,
                    prec_bits: int = 120) -> tuple[Fraction, Fraction]:
    """(ell_hat, beta): u_n < ell_hat lambda^n / n for all n > N, from the
    tail window and the e^(-2 beta / n) propagation argument."""
    cd = characteristic_polynomial(rec, refine=False)
    checks = condition_checks(cd)
    if not checks["upper_bound_form"]:
        raise ValueError("upper-bound hypotheses fail (a_k >= 0 and a_k(k-1)+b_k <= 0)")
    L = rec.span
    if R is None:
        # with a_k(k-1)+b_k <= 0 each residual's linear part is nonpositive, so
        # its supremum over n >= 0 is the constant term
        R = max(1, max(int(d["residual"][0]) for d in cd.decomposition))
    if scan is None:
        scan = profile_scan(rec, lam, N, prec_bits=prec_bits)
    old = iv.prec
    iv.prec = scan.prec_bits
    try:
        lam_lo = _frac_iv(lam[0])
        beta_iv = (iv.mpf(R * (L + 1)) / lam_lo) * iv.mpf(N) ** 2 / (iv.mpf(N - L) * iv.mpf(N + 1))
        if N < max(3, float(mp.mpf(beta_iv.b)) / 2):
            raise ValueError("N too small for the propagation step")
        wmax = max(x.b for x in scan.window)
        ell = iv.mpf(wmax) * iv.exp(2 * beta_iv / iv.mpf(N)) * (1 + iv.mpf(2) ** -40)
        return _mpf_to_fraction(ell.b), _mpf_to_fraction(beta_iv.b)
    finally:
        iv.prec = old


def ell_bracket(rec: HolonomicRecurrence, lam: tuple[Fraction, Fraction], N: int,
                M: int = 1000, prec_bits: int = 120) -> EllBracket:
    """Certified interval for ell0 = lim n u_n / lambda^n.

    Uses the invariant functional whose step increments equal the residual
    terms: ell0 = (Phi(M) + sum_{m >= M} R_{m+1}) / psi, with the residual sum
    bounded through the exact tail sums of 1/((m-k)(m+1)) and enclosures of v
    from one interval scan to N.  The scan also yields the tail upper bound
    ell_hat, which caps the bracket.
    """
    cd = characteristic_polynomial(rec, refine=False)
    checks = condition_checks(cd)
    L = rec.span
    if cd.dominance != "true" or not checks["limit_form"]:
        scan = profile_scan(rec, lam, N, collect=(N,), prec_bits=prec_bits)
        vN = scan.window[-1]
        return EllBracket(lower=None, upper=None,
                          ell_hat=Fraction(0), beta=Fraction(0), R=0,
                          v_last=(_mpf_to_fraction(vN.a), _mpf_to_fraction(vN.b)),
                          conditions=checks, certified=False,
                          note="no bracket; empirical v_N only")
    scan = profile_scan(rec, lam, N, M=M, prec_bits=prec_bits)
    ell_hat, beta = ell_upper_bound(rec, lam, N, scan=scan, prec_bits=prec_bits)
    R = max(1, max(int(d["residual"][0]) for d in cd.decomposition))
    old = iv.prec
    iv.prec = prec_bits
    try:
        lam_iv = _interval_iv(*lam)
        inv_lam = [1 / lam_iv ** (k + 1) for k in range(L + 1)]
        g = [iv.mpf(cd.decomposition[k]["a"]) * inv_lam[k] for k in range(L + 1)]
        alpha = [iv.mpf(1)]
        for j in range(1, L + 1):
            alpha.append(alpha[-1] - g[j - 1])
        psi = iv.mpf(1) + sum(iv.mpf(k) * g[k] for k in range(L + 1))
        phi = sum(alpha[j] * scan.seeds[L - j] for j in range(L + 1))
        m0 = min(x.a for x in scan.seeds)
        if not m0 > 0:
            return EllBracket(lower=None, upper=None, ell_hat=ell_hat, beta=beta, R=R,
                              v_last=(_mpf_to_fraction(scan.window[-1].a),
                                      _mpf_to_fraction(scan.window[-1].b)),
                              conditions=checks, certified=False,
                              note="no bracket; seed profile not positive")
        V = iv.mpf(max(scan.vmax_sup, _frac_iv(ell_hat).b))
        T = iv.mpf(0)
        for k in range(L + 1):
            rk = int(cd.decomposition[k]["residual"][0])
            if rk == 0:
                continue
            Sk = sum(Fraction(1, j) for j in range(M - k, M + 1)) / (k + 1)
            T += iv.mpf(rk) * inv_lam[k] * _frac_iv(Sk)
        lower_iv = (phi + iv.mpf(m0) * T) / psi
        upper_iv = (phi + V * T) / psi
        lower = _mpf_to_fraction(lower_iv.a)
        upper = min(_mpf_to_fraction(upper_iv.b), ell_hat)
        vN = scan.window[-1]
        return EllBracket(lower=lower, upper=upper, ell_hat=ell_hat, beta=beta, R=R,
                          v_last=(_mpf_to_fraction(vN.a), _mpf_to_fraction(vN.b)),
                          conditions=checks, certified=True)
    finally:
        iv.prec = old


# ---------------------------------------------------------------------------
# closed-form constants and the log-singularity check
# ---------------------------------------------------------------------------

CLOSED_FORM_TAGS = ("gamma1_7", "gamma_8_4_1_2", "gamma1_10")


def closed_form_constant(tag: str, dps: int = 60):
    """High-precision value of the tabulated growth constant a with u_n ~ a lambda^n/n."""
    old = mp.dps
    mp.dps = dps
    try:
        if tag == "gamma1_7":
            val = 7 * mp.sin(4 * mp.pi / 7) / (256 * mp.pi * mp.sin(6 * mp.pi / 7) ** 3
                                               * mp.sin(2 * mp.pi / 7) ** 5)
        elif tag == "gamma_8_4_1_2":
            val = 2 / mp.pi
        elif tag == "gamma1_10":
            val = 2 / (mp.pi * mp.sqrt(5 + 2 * mp.sqrt(5)))
        else:
            raise ValueError(f"unknown tag {tag!r}; known: {CLOSED_FORM_TAGS}")
        return +val
    finally:
        mp.dps = old


@dataclass
class LogSingularityReport:
    eps_values: list
    partial_values: list       # f(t)+a*log(1-lambda t) at t=(1-eps)/lambda
    tail_bounds: list
    trend: object              # extrapolated limit (mpf)
    trend_minus_b: object | None
    monotone_from: int | None  # onset index for decreasing u_n lambda^-n
    positive_from: int | None


def modform_hypothesis_check(rec: HolonomicRecurrence, lam: tuple[Fraction, Fraction],
                             a_const, b_const=None, N: int = 5000,
                             eps_ladder=("0.1", "0.05", "0.02"),
                             monotone_span: int = 5000, dps: int = 50) -> LogSingularityReport:
    """Check the log-singularity normalization: partial sums of
    f(t) + a log(1 - lambda t) at t = (1-eps)/lambda along an eps-ladder,
    tail-bounded via u_n <= ell lambda^n / n, extrapolated to eps -> 0 with
    the singular basis {1, eps*log(eps), eps}; plus positivity/monotonicity
    onset of u_n lambda^(-n)."""
    L = rec.span
    u = rec.terms(max(N, monotone_span) + 2)
    # onset indices, scanned with exact arithmetic against the rational enclosure:
    # u_n lambda^-n decreasing at n is certified by u_{n+1} < lam_lo * u_n
    lam_lo, lam_hi = lam
    positive_from = 0
    monotone_from = 0
    for n in range(len(u) - 1):
        if u[n] <= 0:
            positive_from = n + 1
        if not (u[n] > 0 and u[n + 1] < lam_lo * u[n]):
            monotone_from = n + 1
    if positive_from >= len(u) - 1:
        positive_from = None
    if monotone_from >= len(u) - 1:
        monotone_from = None
    old = mp.dps
    mp.dps = dps
    try:
        lam_f = (mp.mpf(lam_lo.numerator) / lam_lo.denominator
                 + mp.mpf(lam_hi.numerator) / lam_hi.denominator) / 2
        a_f = mp.mpf(a_const)
        weights = rec.rhs_weights()
        eps_vals, values, tails = [], [], []
        # conservative ell for the tail bound
        ell_guess = None
        for n in range(max(10, N - 20), N):
            vn = mp.mpf(int(u[n])) * n / lam_f ** n
            ell_guess = vn if ell_guess is None else max(ell_guess, vn)
        ell_guess *= mp.mpf("1.01")
        for es in eps_ladder:
            e = mp.mpf(es)
            th = (1 - e) / lam_f
            w = [mp.mpf(int(u[j])) * th ** j for j in range(L + 1)]
            S = sum(w)
            th_pows = [th ** (k + 1) for k in range(L + 1)]
            for n in range(L, N):
                acc = mp.mpf(0)
                for k in range(L + 1):
                    c = weights[k](n)
                    if c:
                        acc += c * w[L - k] * th_pows[k]
                acc /= (n + 1) ** 2
                w = w[1:] + [acc]
                S += acc
            tail = ell_guess * (1 - e) ** (N + 1) / ((N + 1) * e)
            if tail > mp.mpf("1e-9"):
                need = int(mp.log(mp.mpf("1e-9") * (N * e) / ell_guess) / mp.log(1 - e)) + 1
                raise ValueError(f"insufficient N for eps={es}: need about N={need}")
            eps_vals.append(e)
            values.append(S + a_f * mp.log(e))
            tails.append(tail)
        # extrapolate with basis {1, eps log eps, eps}
        rows = [[mp.mpf(1), e * mp.log(e), e] for e in eps_vals[-3:]]
        rhs = mpmath.matrix(values[-3:])
        sol = mpmath.lu_solve(mpmath.matrix(rows), rhs)
        trend = sol[0]
        diff = trend - mp.mpf(b_const) if b_const is not None else None
        return LogSingularityReport(eps_values=eps_vals, partial_values=values,
                                    tail_bounds=tails, trend=trend, trend_minus_b=diff,
                                    monotone_from=monotone_from, positive_from=positive_from)
    finally:
        mp.dps = old
