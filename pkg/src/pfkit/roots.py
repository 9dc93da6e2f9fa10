"""Exact real-root isolation and refinement for integer polynomials.

Sturm sequences over Q give exact root counts on half-open intervals
(a, b]; bisection from a Cauchy bound isolates the real roots, and further
bisection refines an isolated simple root to any rational tolerance.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, poly_gcd


def square_free_part(p: Poly) -> Poly:
    g = poly_gcd(p, p.derivative())
    if g.degree in (None, 0):
        return p.primitive()
    return p.exact_div(g).primitive()


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append(-r.primitive())
    return chain


def _variations(chain, x: Fraction) -> int:
    signs = []
    for q in chain:
        v = q(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B]."""
    lead = abs(Fraction(p.leading()))
    m = max(abs(Fraction(c)) for c in p.coeffs[:-1]) if p.degree else Fraction(0)
    return 1 + m / lead


def count_roots(p: Poly, a: Fraction, b: Fraction, chain=None) -> int:
    """Number of distinct real roots in (a, b]."""
    q = square_free_part(p)
    ch = chain if chain is not None else sturm_chain(q)
    return _variations(ch, a) - _variations(ch, b)


def isolate_real_roots(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals (a, b], each containing exactly one real root."""
    q = square_free_part(p)
    if q.degree in (None, 0):
        return []
    chain = sturm_chain(q)
    B = root_bound(q)
    out = []
    stack = [(-B, B, _variations(chain, -B) - _variations(chain, B))]
    while stack:
        a, b, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        va, vm, vb = _variations(chain, a), _variations(chain, m), _variations(chain, b)
        stack.append((a, m, va - vm))
        stack.append((m, b, vm - vb))
    return sorted(out)


def refine_root(p: Poly, a: Fraction, b: Fraction, tol: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval (a, b] of a simple root to width <= tol."""
    q = square_free_part(p)
    fb = q(b)
    if fb == 0:
        return (b, b)
    fa = q(a)
    if fa == 0:
        # a itself is a neighboring root; walk right until the sign change brackets
        while True:
            m = (a + b) / 2
            fm = q(m)
            if fm == 0:
                return (m, m)
            if (fm > 0) != (fb > 0):
                a, fa = m, fm
                break
            b, fb = m, fm
    if (fa > 0) == (fb > 0):
        raise ValueError("interval does not bracket a sign change of the square-free part")
    while b - a > tol:
        m = (a + b) / 2
        fm = q(m)
        if fm == 0:
            return (m, m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return (a, b)
