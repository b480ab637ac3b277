"""Mod-p reference sets, canonical residues, and admissible enumeration.

Reducing the four-family classification modulo a prime p turns the
parameter n into an element of F_p, leaving at most 4p reference
polynomials.  Any Jones polynomial mod p must agree with one of them
modulo f-bar, the reduction of f.  Fixing a degree window [a, b] that a
reduced polynomial must live in bounds the number of admissible
candidates by 4p * p^(b-a-7), a density of 4/p^7 of the whole window.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Optional, Set, Tuple

from .classify import F, FAMILIES, reference_poly
from .laurent import LaurentPoly, divide_by, is_prime, reduce_mod_p

MEMBER_CAP = 1 << 16


class ReferenceEntry(NamedTuple):
    family: str
    n: int
    poly: LaurentPoly


@dataclass(frozen=True)
class ReferenceSet:
    """The 4p family polynomials reduced mod p (possibly with collisions)."""

    p: int
    entries: Tuple[ReferenceEntry, ...]
    distinct_count: int


def reference_set(p: int) -> ReferenceSet:
    """All reference polynomials for n in {0, ..., p-1}, family-major order."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    entries = []
    for family in FAMILIES:
        for n in range(p):
            entries.append(ReferenceEntry(
                family, n, reduce_mod_p(reference_poly(family, n), p)))
    distinct = len({e.poly for e in entries})
    return ReferenceSet(p, tuple(entries), distinct)


def refined_reference_set(p: int) -> ReferenceSet:
    """Reference entries whose n survives the power-of-3 constraint.

    Over Z the zeta6-value forces 1+2n = +-3^l (families I, II, IV) or
    2n-1 = +-3^l (family III).  Mod p >= 5 the right side ranges over
    +-(powers of 3 mod p), never 0, so some residues n drop out.
    """
    if not is_prime(p) or p < 5:
        raise ValueError("refinement requires a prime p >= 5")
    powers = set()
    x = 1
    while True:
        powers.add(x)
        x = x * 3 % p
        if x == 1:
            break
    allowed = powers | {(-x) % p for x in powers}
    entries = []
    for family in FAMILIES:
        for n in range(p):
            key = (2 * n - 1) % p if family == "III" else (1 + 2 * n) % p
            if key in allowed:
                entries.append(ReferenceEntry(
                    family, n, reduce_mod_p(reference_poly(family, n), p)))
    distinct = len({e.poly for e in entries})
    return ReferenceSet(p, tuple(entries), distinct)


# The relation f(t) = 0 with unit constant term isolates t^(-1) as a
# degree-7 polynomial, making every Laurent class land in degrees [0, 7].
T_INVERSE = LaurentPoly((2, -3, 4, -4, 4, -3, 2, -1))


def canonical_residue(g: LaurentPoly) -> LaurentPoly:
    """The unique degree-window-[0,7] representative of g modulo f-bar.

    Works over Z as well as over F_p; the divisor is f reduced to g's
    modulus.  Negative exponents are folded in through the inverse of t,
    and the nonnegative part is reduced by dense long division against
    the monic f-bar (divide_by is unsuitable here: its Laurent remainder
    carries the input's degree offset instead of landing in [0, 7]).
    """
    modulus = g.modulus
    if g.is_zero():
        return g
    if g.min_degree < 0:
        inv = T_INVERSE if modulus is None else reduce_mod_p(T_INVERSE, modulus)
        g = LaurentPoly(g.coeffs, 0, modulus) * inv ** (-g.min_degree)
    coeffs = g.as_dict()
    fbar = F if modulus is None else reduce_mod_p(F, modulus)
    fc = [fbar.coeff(d) for d in range(9)]  # monic: fc[8] == 1
    for deg in range(max(coeffs), 7, -1):
        c = coeffs.pop(deg, 0)
        if c:
            for j in range(8):
                coeffs[deg - 8 + j] = coeffs.get(deg - 8 + j, 0) - c * fc[j]
    if modulus is not None:
        coeffs = {d: c % modulus for d, c in coeffs.items()}
    return LaurentPoly.from_dict(coeffs, modulus)


def is_admissible(g: LaurentPoly) -> Optional[int]:
    """Index of the first reference entry matching g modulo f-bar, if any."""
    if g.modulus is None:
        raise ValueError("admissibility is a mod-p notion; reduce first")
    target = canonical_residue(g)
    for k, entry in enumerate(reference_set(g.modulus).entries):
        if entry.poly == target:
            return k
    return None


def admissible_bound(p: int, a: int, b: int) -> Tuple[int, Fraction]:
    """Counting bound 4p * p^(b-a-7) and its exact density 4/p^7."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if b - a < 7:
        raise ValueError("window too narrow: need b - a >= 7")
    count_bound = 4 * p * p ** (b - a - 7)
    return count_bound, Fraction(4, p ** 7)


class AdmissibleWindow:
    """Exact admissible set inside a degree window, affinely enumerated.

    members is populated when the exact count is at most MEMBER_CAP;
    iter_members() streams the set in all cases.
    """

    def __init__(self, p: int, a: int, b: int, count: int,
                 targets: List[List[int]], matrix_data):
        self.p = p
        self.a = a
        self.b = b
        self.count = count
        self.bound, self.density = admissible_bound(p, a, b)
        self._targets = targets
        self._matrix_data = matrix_data
        self.members: Optional[Set[LaurentPoly]] = (
            set(self.iter_members()) if count <= MEMBER_CAP else None)

    def iter_members(self) -> Iterator[LaurentPoly]:
        p, a, b = self.p, self.a, self.b
        rref, pivot_cols, free_cols = self._matrix_data
        width = b - a + 1
        for tvec in self._targets:
            for free_vals in _tuples(p, len(free_cols)):
                x = [0] * width
                for col, val in zip(free_cols, free_vals):
                    x[col] = val
                # Back-substitute pivots against the reduced system.
                for row, pcol in enumerate(pivot_cols):
                    s = tvec[row]
                    for col, val in zip(free_cols, free_vals):
                        s -= rref[row][col] * val
                    x[pcol] = s % p
                yield LaurentPoly(x, a, p)


def _tuples(p: int, length: int) -> Iterator[Tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for head in _tuples(p, length - 1):
        for v in range(p):
            yield head + (v,)


def _residue_matrix(p: int, a: int, b: int):
    """Columns are the residues of t^a ... t^b as vectors in F_p^8."""
    cols = []
    cur = canonical_residue(LaurentPoly.term(1, a, p))
    t = LaurentPoly.term(1, 1, p)
    for _ in range(a, b + 1):
        cols.append([cur.coeff(d) for d in range(8)])
        cur = canonical_residue(cur * t)
    return [[cols[j][i] for j in range(len(cols))] for i in range(8)]


def _row_reduce(matrix: List[List[int]], p: int):
    """RREF over F_p; returns (rref, pivot columns, free columns)."""
    m = [row[:] for row in matrix]
    rows, cols = len(m), len(m[0])
    pivot_cols = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] % p), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [(vi - factor * vr) % p for vi, vr in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    return m[:r], pivot_cols, free_cols


def enumerate_admissible(p: int, a: int, b: int) -> AdmissibleWindow:
    """Every mod-p polynomial with support in [a, b] that is admissible.

    The residue map from the window's coefficient space onto
    F_p[t]/(f-bar) is linear and surjective, so the admissible set is a
    disjoint union of affine preimages, one per distinct reference
    residue, each of size p^(b-a-7).
    """
    admissible_bound(p, a, b)  # validates p and the window
    width = b - a + 1
    matrix = _residue_matrix(p, a, b)
    # Reduce [matrix | I8] once; the right block then transforms any
    # target residue vector into the reduced row basis.
    augmented = [matrix[i] + [1 if j == i else 0 for j in range(8)]
                 for i in range(8)]
    arref, pivots, _ = _row_reduce(augmented, p)
    if len(pivots) != 8 or max(pivots) >= width:
        raise RuntimeError("residue map is not surjective on this window; "
                           "enumeration invalid")
    rref = [row[:width] for row in arref]
    transform = [row[width:] for row in arref]
    free_cols = [c for c in range(width) if c not in pivots]

    residues = []
    seen = set()
    for entry in reference_set(p).entries:
        if entry.poly not in seen:
            seen.add(entry.poly)
            residues.append([entry.poly.coeff(d) for d in range(8)])
    targets = [[sum(transform[i][j] * r[j] for j in range(8)) % p
                for i in range(8)] for r in residues]
    count = len(residues) * p ** (b - a - 7)
    return AdmissibleWindow(p, a, b, count, targets,
                            (rref, pivots, free_cols))


def enumerate_admissible_brute(p: int, a: int, b: int) -> Set[LaurentPoly]:
    """Oracle twin of enumerate_admissible: filter the whole window.

    Iterates all p^(b-a+1) coefficient vectors; only sane for widths
    where that stays within about 2^20 candidates.
    """
    if b - a < 7:
        raise ValueError("window too narrow: need b - a >= 7")
    width = b - a + 1
    if p ** width > 1 << 20:
        raise ValueError("window too wide for brute force")
    residue_lookup = {}
    for entry in reference_set(p).entries:
        residue_lookup.setdefault(entry.poly, True)
    out = set()
    for vec in _tuples(p, width):
        g = LaurentPoly(vec, a, p)
        if canonical_residue(g) in residue_lookup:
            out.add(g)
    return out
