"""Conditions checker and four-family classification of Jones polynomials.

A Jones polynomial of a knot satisfies five exact conditions at the root
of unity points t = 1, i, zeta3, zeta6.  Any polynomial passing all five
splits uniquely as V = p + (multiple of f) where p is a degree-at-most-7
polynomial drawn from one of four one-parameter families built on the
polynomials of the unknot, the trefoil, the (2,5) torus knot, and 8_21.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .laurent import (
    EisensteinInt,
    GaussianInt,
    LaurentPoly,
    SQRT_MINUS_3,
    divide_by,
    eval_special,
    parse_poly,
)

# Shared reference material: h has a double root at 1 and single roots at
# the primitive cube roots; f = (t^2-t+1) h picks up the sixth roots and i.
H = parse_poly("t^6-t^5+t^4-2t^3+t^2-t+1")
F = parse_poly("t^8-2t^7+3t^6-4t^5+4t^4-4t^3+3t^2-2t+1")

V31 = parse_poly("-t^4+t^3+t")
V51 = parse_poly("-t^7+t^6-t^5+t^4+t^2")
V821 = parse_poly("t^7-2t^6+2t^5-3t^4+3t^3-2t^2+2t")

FAMILIES = ("I", "II", "III", "IV")

_H_TIMES_2T_MINUS_1 = H * parse_poly("2t-1")


class ConditionsFailed(ValueError):
    """The polynomial does not satisfy all five root-of-unity conditions."""


@dataclass(frozen=True)
class ConditionsReport:
    """Outcome of the five conditions, with the data they carry.

    arf_sign is the sign of V(i) and is only defined when c4 holds;
    m and zeta6_sign describe V(zeta6) = zeta6_sign * sqrt(-3)^m and are
    only defined when c5 holds.
    """

    c1: bool
    c2: bool
    c3: bool
    c4: bool
    c5: bool
    arf_sign: Optional[int] = None
    m: Optional[int] = None
    zeta6_sign: Optional[int] = None

    @property
    def all_pass(self) -> bool:
        return self.c1 and self.c2 and self.c3 and self.c4 and self.c5


@dataclass(frozen=True)
class Classification:
    """Family tag, parameter, and the base polynomial p with V = p mod f."""

    family: str
    n: int
    base: LaurentPoly
    realizable_n: bool


def _power_of_three_exponent(x: int) -> Optional[int]:
    """Return m with x = 3^m, or None.  Exact division only, no logarithms."""
    if x < 1:
        return None
    m = 0
    while x % 3 == 0:
        x //= 3
        m += 1
    return m if x == 1 else None


def check_conditions(V: LaurentPoly) -> ConditionsReport:
    """Evaluate conditions (1)-(5) on an integer Laurent polynomial.

    Failures are reported as false flags, never as exceptions.
    """
    sv = eval_special(V)
    c1 = sv.at_one == 1
    c2 = sv.deriv_at_one == 0
    c3 = sv.at_zeta3 == EisensteinInt(1, 0)

    c4 = sv.at_i in (GaussianInt(1, 0), GaussianInt(-1, 0))
    arf_sign = sv.at_i.re if c4 else None

    c5 = False
    m: Optional[int] = None
    zeta6_sign: Optional[int] = None
    exponent = _power_of_three_exponent(sv.at_zeta6.norm())
    if exponent is not None:
        root_power = SQRT_MINUS_3 ** exponent
        if sv.at_zeta6 == root_power:
            c5, m, zeta6_sign = True, exponent, 1
        elif sv.at_zeta6 == -root_power:
            c5, m, zeta6_sign = True, exponent, -1

    return ConditionsReport(c1, c2, c3, c4, c5, arf_sign, m, zeta6_sign)


def reference_poly(family: str, n: int) -> LaurentPoly:
    """The degree-at-most-7 base polynomial of the given family at n."""
    if family == "I":
        return LaurentPoly.one() + n * H
    if family == "II":
        return V31 + n * _H_TIMES_2T_MINUS_1
    if family == "III":
        return V51 + n * H
    if family == "IV":
        return V821 + n * _H_TIMES_2T_MINUS_1
    raise ValueError(f"unknown family {family!r}")


def is_n_realizable(n: int) -> bool:
    """Whether 2n = +-1 +-3^l has a solution, i.e. |2n-1| or |2n+1| is a
    power of 3 (3^0 included)."""
    return (_power_of_three_exponent(abs(2 * n - 1)) is not None
            or _power_of_three_exponent(abs(2 * n + 1)) is not None)


def classify(V: LaurentPoly) -> Classification:
    """Resolve V into its unique (family, n) with V - base divisible by f.

    Dispatch is by the parity of m and the sign at i; n is then solved
    exactly from V(zeta6).  Trial division against the chosen base is kept
    as a defensive cross-check and can only fail on an internal bug.
    """
    if V.modulus is not None:
        raise ValueError("classification is defined over Z; reduce afterwards")
    report = check_conditions(V)
    if not report.all_pass:
        flags = [name for name, ok in zip(
            ("c1", "c2", "c3", "c4", "c5"),
            (report.c1, report.c2, report.c3, report.c4, report.c5)) if not ok]
        raise ConditionsFailed(f"conditions failed: {', '.join(flags)}")

    value = eval_special(V).at_zeta6
    m_odd = report.m % 2 == 1
    if not m_odd:
        family = "I" if report.arf_sign == 1 else "III"
        # V(zeta6) is the plain integer a; h contributes 2 per step of n.
        a = value.a
        n = (a - 1) // 2 if family == "I" else (a + 1) // 2
    else:
        family = "IV" if report.arf_sign == 1 else "II"
        # V(zeta6) = c * sqrt(-3) with sqrt(-3) = -1 + 2*zeta6.
        if value.b % 2 != 0 or value.a != -(value.b // 2):
            raise RuntimeError("value at zeta6 is not a multiple of sqrt(-3)")
        c = value.b // 2
        n = (c - 1) // 2

    base = reference_poly(family, n)
    _, _, divisible = divide_by(V - base, F)
    if not divisible:
        raise RuntimeError(
            f"difference with family {family} base at n={n} is not "
            "divisible; classification invariant violated")
    return Classification(family, n, base, is_n_realizable(n))
