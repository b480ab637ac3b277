"""Exact Laurent polynomial arithmetic over Z and over prime fields F_p.

The polynomial type is the universal value carrier for the whole package:
Jones polynomials, the reference polynomials h and f, and their mod-p
reductions are all LaurentPoly values.  Alongside it live two tiny exact
rings, the Gaussian integers (values at t = i) and the Eisenstein integers
written on the basis {1, zeta6} (values at t = zeta3 and t = zeta6), plus
an evaluator that produces all special values of a polynomial at once.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional, Tuple, Union


def is_prime(p: int) -> bool:
    """Deterministic primality test for the moduli used here."""
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    # Deterministic Miller-Rabin; the witness set covers all 64-bit inputs.
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class ModulusMismatch(ValueError):
    """Two polynomials reduced modulo different primes were combined."""


class PolySyntaxError(ValueError):
    """Input text does not conform to the polynomial grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


Scalar = int


class LaurentPoly:
    """Immutable Laurent polynomial, exact over Z or over F_p.

    Coefficients are stored ascending from min_degree.  Invariants: the
    first and last stored coefficients are nonzero (the zero polynomial
    stores an empty tuple), and when a modulus p is present every
    coefficient lies in [0, p).
    """

    __slots__ = ("coeffs", "min_degree", "modulus")

    def __init__(self, coeffs: Iterable[int], min_degree: int = 0,
                 modulus: Optional[int] = None):
        if modulus is not None and not is_prime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        cs = [int(c) for c in coeffs]
        if modulus is not None:
            cs = [c % modulus for c in cs]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            object.__setattr__(self, "coeffs", ())
            object.__setattr__(self, "min_degree", 0)
        else:
            object.__setattr__(self, "coeffs", tuple(cs[lo:hi]))
            object.__setattr__(self, "min_degree", int(min_degree) + lo)
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, modulus: Optional[int] = None) -> "LaurentPoly":
        return cls((), 0, modulus)

    @classmethod
    def one(cls, modulus: Optional[int] = None) -> "LaurentPoly":
        return cls((1,), 0, modulus)

    @classmethod
    def term(cls, coeff: int, degree: int,
             modulus: Optional[int] = None) -> "LaurentPoly":
        return cls((coeff,), degree, modulus)

    @classmethod
    def from_dict(cls, d: dict, modulus: Optional[int] = None) -> "LaurentPoly":
        if not d:
            return cls.zero(modulus)
        lo = min(d)
        hi = max(d)
        return cls([d.get(k, 0) for k in range(lo, hi + 1)], lo, modulus)

    # -- basic accessors -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def min_deg(self) -> Optional[int]:
        """Lowest exponent with nonzero coefficient; None for the zero poly."""
        return self.min_degree if self.coeffs else None

    def max_deg(self) -> Optional[int]:
        return self.min_degree + len(self.coeffs) - 1 if self.coeffs else None

    def span(self) -> Optional[int]:
        """max_deg - min_deg; None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def coeff(self, degree: int) -> int:
        k = degree - self.min_degree
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def as_dict(self) -> dict:
        return {self.min_degree + k: c
                for k, c in enumerate(self.coeffs) if c != 0}

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.coeffs == other.coeffs
                and self.min_degree == other.min_degree
                and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.coeffs, self.min_degree, self.modulus))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic -------------------------------------------------------

    def _joint_modulus(self, other: "LaurentPoly") -> Optional[int]:
        # One operand over Z lifts into the other's field.
        if self.modulus is None:
            return other.modulus
        if other.modulus is None or other.modulus == self.modulus:
            return self.modulus
        raise ModulusMismatch(
            f"cannot combine polynomials mod {self.modulus} and mod {other.modulus}")

    def __add__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly((other,), 0, self.modulus)
        m = self._joint_modulus(other)
        if not self.coeffs:
            return LaurentPoly(other.coeffs, other.min_degree, m)
        if not other.coeffs:
            return LaurentPoly(self.coeffs, self.min_degree, m)
        lo = min(self.min_degree, other.min_degree)
        hi = max(self.min_degree + len(self.coeffs),
                 other.min_degree + len(other.coeffs))
        out = [0] * (hi - lo)
        for k, c in enumerate(self.coeffs):
            out[self.min_degree - lo + k] += c
        for k, c in enumerate(other.coeffs):
            out[other.min_degree - lo + k] += c
        return LaurentPoly(out, lo, m)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly([-c for c in self.coeffs], self.min_degree,
                           self.modulus)

    def __sub__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly((other,), 0, self.modulus)
        return self + (-other)

    def __rsub__(self, other: int) -> "LaurentPoly":
        return LaurentPoly((other,), 0, self.modulus) - self

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly([other * c for c in self.coeffs],
                               self.min_degree, self.modulus)
        m = self._joint_modulus(other)
        if not self.coeffs or not other.coeffs:
            return LaurentPoly.zero(m)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for j, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for k, b in enumerate(other.coeffs):
                out[j + k] += a * b
        return LaurentPoly(out, self.min_degree + other.min_degree, m)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers of a polynomial are not defined")
        result = LaurentPoly.one(self.modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly(self.coeffs, self.min_degree + k, self.modulus)

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            deg = self.min_degree + k
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if deg == 0:
                body = str(mag)
            elif mag == 1:
                body = "t" if deg == 1 else f"t^{deg}"
            else:
                body = f"{mag}t" if deg == 1 else f"{mag}t^{deg}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = (first_sign if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def __repr__(self) -> str:
        tag = f" mod {self.modulus}" if self.modulus is not None else ""
        return f"LaurentPoly({self}{tag})"


def parse_poly(text: str, modulus: Optional[int] = None) -> LaurentPoly:
    """Parse the signed-monomial-sum grammar into a normalized LaurentPoly.

    Grammar: poly := term (('+'|'-') term)* | '0'
             term := coeff | coeff? 't' ('^' int)?
    with an optional sign before the first term and whitespace ignored.
    """
    s = text
    i = 0
    n = len(s)

    def skip_ws(j: int) -> int:
        while j < n and s[j].isspace():
            j += 1
        return j

    coeffs: dict = {}
    i = skip_ws(i)
    if i >= n:
        raise PolySyntaxError("empty input", i)
    first = True
    while True:
        i = skip_ws(i)
        sign = 1
        if i < n and s[i] in "+-":
            if first and s[i] == "+":
                raise PolySyntaxError("unexpected leading '+'", i)
            sign = -1 if s[i] == "-" else 1
            i += 1
            i = skip_ws(i)
        elif not first:
            break
        # term: coeff? 't' ('^' int)?  or bare coeff
        start = i
        mag = None
        while i < n and s[i].isdigit():
            i += 1
        if i > start:
            mag = int(s[start:i])
        i = skip_ws(i)
        if i < n and s[i] == "t":
            i += 1
            deg = 1
            j = skip_ws(i)
            if j < n and s[j] == "^":
                i = skip_ws(j + 1)
                neg = False
                if i < n and s[i] == "-":
                    neg = True
                    i += 1
                dstart = i
                while i < n and s[i].isdigit():
                    i += 1
                if i == dstart:
                    raise PolySyntaxError("expected exponent digits", i)
                deg = int(s[dstart:i])
                if neg:
                    deg = -deg
            c = mag if mag is not None else 1
        else:
            if mag is None:
                raise PolySyntaxError("expected a term", start)
            deg = 0
            c = mag
        coeffs[deg] = coeffs.get(deg, 0) + sign * c
        first = False
        i = skip_ws(i)
        if i >= n:
            break
        if s[i] not in "+-":
            raise PolySyntaxError(f"unexpected character {s[i]!r}", i)
    return LaurentPoly.from_dict(coeffs, modulus)


def poly_arith(kind: str, a: LaurentPoly,
               b: Union[LaurentPoly, int, None] = None) -> LaurentPoly:
    """Named dispatch over the ring operations (add|sub|mul|negate|scale|shift)."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "negate":
        return -a
    if kind == "scale":
        if not isinstance(b, int):
            raise TypeError("scale expects an integer scalar")
        return a * b
    if kind == "shift":
        if not isinstance(b, int):
            raise TypeError("shift expects an integer exponent")
        return a.shift(b)
    raise ValueError(f"unknown operation {kind!r}")


def invert_variable(a: LaurentPoly) -> LaurentPoly:
    """Substitute t -> 1/t: reverse the coefficients, negate the degree range."""
    if not a.coeffs:
        return a
    hi = a.min_degree + len(a.coeffs) - 1
    return LaurentPoly(tuple(reversed(a.coeffs)), -hi, a.modulus)


def divide_by(g: LaurentPoly,
              d: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly, bool]:
    """Long division of g by d: returns (quotient, remainder, divisible).

    Both inputs are shifted to ordinary polynomials first; divisibility is
    shift-invariant because t is a unit and the lowest coefficient of a
    normalized nonzero divisor never vanishes.  The identity
    g = d*quotient + remainder holds exactly on the Laurent level.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    m = g._joint_modulus(d)
    lead = d.coeffs[-1]
    if m is None:
        if lead not in (1, -1):
            raise ValueError(
                f"divisor leading coefficient {lead} is not a unit over Z")
        inv_lead = lead
        reduce = lambda x: x
    else:
        inv_lead = pow(lead, m - 2, m)
        reduce = lambda x: x % m
    if g.is_zero():
        return LaurentPoly.zero(m), LaurentPoly.zero(m), True

    mg, md = g.min_degree, d.min_degree
    rem = list(g.coeffs)
    dc = list(d.coeffs)
    dn = len(dc)
    qlen = len(rem) - dn + 1
    quot = [0] * max(qlen, 0)
    for k in range(qlen - 1, -1, -1):
        c = reduce(rem[k + dn - 1] * inv_lead)
        quot[k] = c
        if c:
            for j in range(dn):
                rem[k + j] = reduce(rem[k + j] - c * dc[j])
    q = LaurentPoly(quot, mg - md, m)
    r = LaurentPoly(rem[:max(dn - 1, 0)] if qlen > 0 else rem, mg, m)
    return q, r, r.is_zero()


def reduce_mod_p(g: LaurentPoly, p: int) -> LaurentPoly:
    """Coefficientwise reduction of an integer polynomial into F_p."""
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if g.modulus is not None:
        if g.modulus == p:
            return g
        raise ModulusMismatch(f"polynomial is already mod {g.modulus}")
    return LaurentPoly(g.coeffs, g.min_degree, p)


class GaussianInt(NamedTuple):
    """Exact element re + im*i of Z[i]."""

    re: int
    im: int

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __str__(self) -> str:
        return f"{self.re}{self.im:+d}i"


class EisensteinInt(NamedTuple):
    """Exact element a + b*zeta6 of Z[zeta6], with zeta6^2 = zeta6 - 1.

    zeta3 is zeta6 - 1 and sqrt(-3) is 2*zeta6 - 1 on this basis.
    """

    a: int
    b: int

    def __add__(self, other: "EisensteinInt") -> "EisensteinInt":
        return EisensteinInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "EisensteinInt") -> "EisensteinInt":
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __mul__(self, other: "EisensteinInt") -> "EisensteinInt":
        # (a + b z)(c + d z) = ac + (ad + bc) z + bd z^2,  z^2 = z - 1
        a, b, c, d = self.a, self.b, other.a, other.b
        return EisensteinInt(a * c - b * d, a * d + b * c + b * d)

    def __neg__(self) -> "EisensteinInt":
        return EisensteinInt(-self.a, -self.b)

    def __pow__(self, n: int) -> "EisensteinInt":
        if n < 0:
            raise ValueError("negative powers are not defined here")
        result = EisensteinInt(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "EisensteinInt":
        """Complex conjugation: a + b*zeta6 -> (a + b) - b*zeta6."""
        return EisensteinInt(self.a + self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b + self.b * self.b

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}z6"


SQRT_MINUS_3 = EisensteinInt(-1, 2)

# Power cycles: i^k repeats with period 4, zeta6^k with period 6.
_I_CYCLE = (GaussianInt(1, 0), GaussianInt(0, 1),
            GaussianInt(-1, 0), GaussianInt(0, -1))
_Z6_CYCLE = (EisensteinInt(1, 0), EisensteinInt(0, 1), EisensteinInt(-1, 1),
             EisensteinInt(-1, 0), EisensteinInt(0, -1), EisensteinInt(1, -1))


class SpecialValues(NamedTuple):
    """Exact values of an integer Laurent polynomial at 1, i, zeta3, zeta6,
    together with the derivative at 1."""

    at_one: int
    deriv_at_one: int
    at_i: GaussianInt
    at_zeta3: EisensteinInt
    at_zeta6: EisensteinInt


def eval_special(g: LaurentPoly) -> SpecialValues:
    """Evaluate at the four special points using the exact power cycles."""
    if g.modulus is not None:
        raise ValueError("special values are defined over Z, not mod p")
    at_one = 0
    deriv = 0
    at_i = GaussianInt(0, 0)
    at_z3 = EisensteinInt(0, 0)
    at_z6 = EisensteinInt(0, 0)
    for k, c in enumerate(g.coeffs):
        if c == 0:
            continue
        deg = g.min_degree + k
        at_one += c
        deriv += c * deg
        ik = _I_CYCLE[deg % 4]
        at_i = GaussianInt(at_i.re + c * ik.re, at_i.im + c * ik.im)
        # zeta3 = zeta6^2, so the exponent doubles.
        z3k = _Z6_CYCLE[(2 * deg) % 6]
        at_z3 = EisensteinInt(at_z3.a + c * z3k.a, at_z3.b + c * z3k.b)
        z6k = _Z6_CYCLE[deg % 6]
        at_z6 = EisensteinInt(at_z6.a + c * z6k.a, at_z6.b + c * z6k.b)
    return SpecialValues(at_one, deriv, at_i, at_z3, at_z6)
