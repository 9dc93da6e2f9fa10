"""Weierstrass families of elliptic curves and their modular invariants.

A family is y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with coordinates
in Z(t).  The invariants are kept in the integrally-scaled forms 12*g2 and
-216*g3, from which Delta = g2^3 - 27 g3^2, j = g2^3/Delta and
gamma = 3 g3 g2' - 2 g2 g3' are derived.

The sign convention for g3 is the classical one (216*g3 equals
-b2^3 + 36 b2 b4 - 216 b6 in terms of the b-invariants); it is the unique
choice under which Delta and j come out consistent, and g3's own sign never
enters downstream (only g3^2 and gamma-up-to-global-sign do).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .parsing import ParseError, parse_rational
from .ratfunc import RationalFunction

COORDINATE_NAMES = ("a1", "a2", "a3", "a4", "a6")


class SingularFamilyError(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassFamily:
    a1: RationalFunction
    a2: RationalFunction
    a3: RationalFunction
    a4: RationalFunction
    a6: RationalFunction
    name: str = ""

    def coordinates(self) -> tuple[RationalFunction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def has_polynomial_coordinates(self) -> bool:
        return all(a.is_polynomial() for a in self.coordinates())


@dataclass(frozen=True)
class InvariantSet:
    g2_12: RationalFunction       # 12 * g2
    g3_m216: RationalFunction     # -216 * g3
    delta: RationalFunction       # g2^3 - 27 g3^2
    j: RationalFunction           # g2^3 / Delta
    gamma: RationalFunction       # 3 g3 g2' - 2 g2 g3'

    @property
    def g2(self) -> RationalFunction:
        return self.g2_12 / 12

    @property
    def g3(self) -> RationalFunction:
        return self.g3_m216 / (-216)


def family_from_strings(coords: dict, name: str = "") -> WeierstrassFamily:
    vals = {}
    for key in COORDINATE_NAMES:
        text = coords.get(key, "0")
        vals[key] = text if isinstance(text, RationalFunction) else parse_rational(text)
    return WeierstrassFamily(name=name, **vals)


def parse_family_file(text: str, name_hint: str = "") -> WeierstrassFamily:
    """Parse the plain-text family format: ``key = value`` per line.

    Recognized keys: name, a1..a6 (missing coordinates default to 0).
    Blank lines and lines starting with '#' are ignored.
    """
    coords: dict[str, str] = {}
    name = name_hint
    seen_any = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value'", 0)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "name":
            name = value
            seen_any = True
            continue
        if key not in COORDINATE_NAMES:
            raise ParseError(f"line {lineno}: unknown key {key!r}", 0)
        coords[key] = value
        seen_any = True
    if not seen_any:
        raise ParseError("empty family file", 0)
    return family_from_strings(coords, name=name)


def compute_invariants(fam: WeierstrassFamily) -> InvariantSet:
    a1, a2, a3, a4, a6 = fam.coordinates()
    b2 = a1 * a1 + 4 * a2
    b4 = a1 * a3 + 2 * a4
    b6 = a3 * a3 + 4 * a6
    g2_12 = b2 * b2 - 24 * b4
    g3_m216 = b2 * b2 * b2 - 36 * b2 * b4 + 216 * b6
    g2 = g2_12 / 12
    g3 = g3_m216 / (-216)
    delta = g2 ** 3 - 27 * g3 * g3
    if delta.is_zero():
        raise SingularFamilyError("identically singular family")
    j = g2 ** 3 / delta
    gamma = 3 * g3 * g2.derivative() - 2 * g2 * g3.derivative()
    return InvariantSet(g2_12=g2_12, g3_m216=g3_m216, delta=delta, j=j, gamma=gamma)


def reduce_mod_t(fam: WeierstrassFamily) -> dict:
    """Constant terms a_i(0) and whether the reduction is y^2 +- xy = x^3."""
    values = {}
    for key, a in zip(COORDINATE_NAMES, fam.coordinates()):
        if a.delta() == 0:
            raise ZeroDivisionError(f"coordinate {key} has pole at origin")
        values[key] = a.value_at_zero()
    shape = (values["a1"] in (1, -1)
             and all(values[k] == 0 for k in ("a2", "a3", "a4", "a6")))
    return {"values": values, "multiplicative_shape": shape}


def check_delta_vanishes_at_zero(inv: InvariantSet) -> bool:
    """True iff Delta(0) = 0 (numerator constant term vanishes)."""
    return inv.delta.nu() == 0


def delta_integer_roots(inv: InvariantSet) -> list[int]:
    """Integer roots of Delta's numerator -- candidate shifts when Delta(0) != 0."""
    num = inv.delta.num
    c0 = num[0]
    if c0 == 0:
        roots = [0]
        trimmed = list(num.coeffs)
        while trimmed and trimmed[0] == 0:
            trimmed.pop(0)
        c0 = trimmed[0] if trimmed else 0
    else:
        roots = []
    if c0 == 0:
        return roots
    for d in range(1, abs(c0) + 1):
        if c0 % d:
            continue
        for cand in (d, -d):
            if cand not in roots and num(cand) == 0:
                roots.append(cand)
    return sorted(roots)
