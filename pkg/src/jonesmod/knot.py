"""Jones polynomials from knot diagrams via the Kauffman bracket.

Diagrams come in as PD codes or braid words.  A PD crossing (a, b, c, d)
lists the four strand ends counterclockwise starting on the under-strand,
so positions {0, 2} form the under-strand and {1, 3} the over-strand.
The A-smoothing joins ends (0,1) and (2,3); the B-smoothing joins (0,3)
and (1,2).  Orientation is not stored: it is recovered by traversing the
diagram as a closed curve, which also rejects links.  The bracket is a
Laurent polynomial in A; the Jones polynomial substitutes t = A^-4 after
the writhe correction (-A)^(-3w), under which every surviving exponent
is divisible by 4.
"""

from __future__ import annotations

import re
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

from .laurent import LaurentPoly, invert_variable

NAIVE_LIMIT = 20


class PDSyntaxError(ValueError):
    """Input text is not a PD code or braid word."""


class InvalidDiagram(ValueError):
    """Labels violate the PD invariant (each of 1..2n exactly twice)."""


class MultiComponent(ValueError):
    """The diagram traverses into more than one closed curve."""


class BraidWord(NamedTuple):
    """Word in braid generators; +-k is the k-th generator or its inverse."""

    generators: Tuple[int, ...]
    strand_count: int


class BracketPoly(NamedTuple):
    """Kauffman bracket value, a Laurent polynomial in the variable A."""

    poly: LaurentPoly


class PDCode:
    """Planar diagram code of a knot: n crossings as 4-tuples of edge labels."""

    __slots__ = ("crossings",)

    def __init__(self, crossings: Iterable[Tuple[int, int, int, int]]):
        cs = tuple(tuple(int(x) for x in c) for c in crossings)
        for c in cs:
            if len(c) != 4:
                raise InvalidDiagram(f"crossing {c} is not a 4-tuple")
        n = len(cs)
        counts: Dict[int, int] = {}
        for c in cs:
            for label in c:
                counts[label] = counts.get(label, 0) + 1
        expected = set(range(1, 2 * n + 1))
        if set(counts) != expected or any(v != 2 for v in counts.values()):
            bad = sorted(set(counts) ^ expected) or sorted(
                k for k, v in counts.items() if v != 2)
            raise InvalidDiagram(
                f"labels must be 1..{2*n} each exactly twice; offending: {bad}")
        object.__setattr__(self, "crossings", cs)
        if n:
            _traverse(self)  # raises MultiComponent on links

    def __setattr__(self, name, value):
        raise AttributeError("PDCode is immutable")

    @property
    def n(self) -> int:
        return len(self.crossings)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PDCode):
            return NotImplemented
        return self.crossings == other.crossings

    def __hash__(self) -> int:
        return hash(self.crossings)

    def __str__(self) -> str:
        inner = ",".join("X[%d,%d,%d,%d]" % c for c in self.crossings)
        return f"PD[{inner}]"

    __repr__ = __str__


def parse_pd(text: str) -> PDCode:
    """Parse "PD[X[a,b,c,d],...]" or a bare "[[a,b,c,d],...]" list."""
    s = text.strip()
    if not s:
        raise PDSyntaxError("empty input")
    if s.startswith("PD"):
        body = s[2:].strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise PDSyntaxError("expected PD[...]")
        inner = body[1:-1]
        if inner.strip() == "":
            return PDCode(())
        tuples = re.findall(r"X\[([^\]]*)\]", inner)
        leftover = re.sub(r"X\[[^\]]*\]", "", inner).replace(",", "").strip()
        if not tuples or leftover:
            raise PDSyntaxError("expected X[a,b,c,d] entries")
    else:
        if not (s.startswith("[") and s.endswith("]")):
            raise PDSyntaxError("expected a bracketed list")
        inner = s[1:-1]
        if inner.strip() == "":
            return PDCode(())
        tuples = re.findall(r"\[([^\]\[]*)\]", inner)
        leftover = re.sub(r"\[[^\]\[]*\]", "", inner).replace(",", "").strip()
        if not tuples or leftover:
            raise PDSyntaxError("expected [a,b,c,d] entries")
    crossings = []
    for body in tuples:
        parts = [p.strip() for p in body.split(",")]
        if len(parts) != 4 or not all(re.fullmatch(r"\d+", p) for p in parts):
            raise PDSyntaxError(f"bad crossing tuple [{body}]")
        crossings.append(tuple(int(p) for p in parts))
    return PDCode(crossings)


def parse_braid(text: str) -> BraidWord:
    """Parse "[i1,i2,...]" with signed nonzero generator indices."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise PDSyntaxError("expected a bracketed braid word")
    inner = s[1:-1].strip()
    if not inner:
        return BraidWord((), 1)
    gens = []
    for part in inner.split(","):
        part = part.strip()
        if not re.fullmatch(r"-?\d+", part):
            raise PDSyntaxError(f"bad generator {part!r}")
        g = int(part)
        if g == 0:
            raise PDSyntaxError("generator 0 is not defined")
        gens.append(g)
    return BraidWord(tuple(gens), max(abs(g) for g in gens) + 1)


def braid_to_pd(word: BraidWord) -> PDCode:
    """PD code of the braid closure (strands flow downward, closed around).

    A positive generator k crosses the strand entering at position k+1 over
    the strand at position k, giving writhe +1 per positive letter.  The
    closure must be a single component.
    """
    gens = word.generators
    s = word.strand_count
    if not gens:
        return PDCode(())
    # Single-cycle check on the strand permutation.
    at_pos = list(range(s))
    for g in gens:
        k = abs(g) - 1
        at_pos[k], at_pos[k + 1] = at_pos[k + 1], at_pos[k]
    successor = {at_pos[j]: j for j in range(s)}
    seen = 1
    cur = successor[0]
    while cur != 0:
        cur = successor[cur]
        seen += 1
    if seen != s:
        raise MultiComponent(
            f"braid closure has {s - seen + 1 if seen < s else 1} extra "
            "component(s); only knots are accepted")

    parent: Dict[int, int] = {}

    def find(x: int) -> int:
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        parent[find(x)] = find(y)

    next_id = s
    current = list(range(s))
    crossings = []
    for g in gens:
        k = abs(g) - 1
        in_left, in_right = current[k], current[k + 1]
        out_left, out_right = next_id, next_id + 1
        next_id += 2
        if g > 0:
            # under-strand from top-left; over-strand enters top-right
            crossings.append((in_left, out_left, out_right, in_right))
        else:
            crossings.append((in_right, in_left, out_left, out_right))
        current[k], current[k + 1] = out_left, out_right
    for j in range(s):
        union(current[j], j)
    labels: Dict[int, int] = {}
    relabeled = []
    counter = 1
    for c in crossings:
        out = []
        for x in c:
            root = find(x)
            if root not in labels:
                labels[root] = counter
                counter += 1
            out.append(labels[root])
        relabeled.append(tuple(out))
    return PDCode(relabeled)


def _traverse(pd: PDCode) -> List[Tuple[int, int]]:
    """Walk the diagram as a closed curve; return the entry slots in order.

    Each step enters a crossing at slot p and leaves at slot (p+2) mod 4.
    Exactly 2n steps close up iff the diagram is a single knot component.
    """
    slots: Dict[int, List[Tuple[int, int]]] = {}
    for ci, c in enumerate(pd.crossings):
        for pi, label in enumerate(c):
            slots.setdefault(label, []).append((ci, pi))
    start = slots[1][0]
    path = []
    ci, pi = start
    while True:
        path.append((ci, pi))
        exit_label = pd.crossings[ci][(pi + 2) % 4]
        pair = slots[exit_label]
        nxt = pair[1] if pair[0] == (ci, (pi + 2) % 4) else pair[0]
        ci, pi = nxt
        if (ci, pi) == start:
            break
        if len(path) > 2 * pd.n:
            raise MultiComponent("traversal failed to close after 2n steps")
    if len(path) != 2 * pd.n:
        raise MultiComponent(
            f"diagram splits into more than one component "
            f"({len(path)} of {2 * pd.n} edge ends reached)")
    return path


def writhe(pd: PDCode) -> int:
    """Sum of crossing signs under the traversal-recovered orientation."""
    entries: Dict[int, List[int]] = {}
    for ci, pi in _traverse(pd):
        entries.setdefault(ci, []).append(pi)
    total = 0
    for ci, pis in entries.items():
        under_in = [p for p in pis if p % 2 == 0]
        over_in = [p for p in pis if p % 2 == 1]
        if len(under_in) != 1 or len(over_in) != 1:
            raise InvalidDiagram(f"crossing {ci} is not transverse")
        u = 1 if under_in[0] == 0 else -1
        o = 1 if over_in[0] == 1 else -1
        total += -u * o
    return total


_DELTA_CACHE: Dict[Optional[int], LaurentPoly] = {}


def _delta(modulus: Optional[int] = None) -> LaurentPoly:
    if modulus not in _DELTA_CACHE:
        _DELTA_CACHE[modulus] = LaurentPoly((-1, 0, 0, 0, -1), -2, modulus)
    return _DELTA_CACHE[modulus]


def _bracket_naive(pd: PDCode) -> LaurentPoly:
    """Plain 2^n state sum with union-find loop counting."""
    n = pd.n
    if n == 0:
        return LaurentPoly.one()
    delta = _delta()
    total: Dict[int, int] = {}
    size = 2 * n
    for state in range(1 << n):
        parent = list(range(size + 1))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        a_count = 0
        for i, (a, b, c, d) in enumerate(pd.crossings):
            if state >> i & 1:
                pairs = ((a, d), (b, c))  # B-smoothing
            else:
                pairs = ((a, b), (c, d))  # A-smoothing
                a_count += 1
            for x, y in pairs:
                parent[find(x)] = find(y)
        loops = len({find(x) for x in range(1, size + 1)})
        exponent = 2 * a_count - n  # (#A) - (#B)
        term = _delta() ** (loops - 1)
        for deg, coeff in term.as_dict().items():
            key = deg + exponent
            total[key] = total.get(key, 0) + coeff
    return LaurentPoly.from_dict(total)


def _half_states(crossings, boundary: FrozenSet[int]):
    """Accumulate the half-diagram state sum by boundary partition.

    Returns {frozenset of frozenset blocks: LaurentPoly in A} where the
    polynomial already carries delta^(closed internal loops).
    """
    labels = sorted({x for c in crossings for x in c})
    acc: Dict[FrozenSet[FrozenSet[int]], Dict[int, int]] = {}
    m = len(crossings)
    for state in range(1 << m):
        parent = {x: x for x in labels}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        a_count = 0
        for i, (a, b, c, d) in enumerate(crossings):
            if state >> i & 1:
                pairs = ((a, d), (b, c))
            else:
                pairs = ((a, b), (c, d))
                a_count += 1
            for x, y in pairs:
                parent[find(x)] = find(y)
        classes: Dict[int, List[int]] = {}
        for x in labels:
            classes.setdefault(find(x), []).append(x)
        internal = 0
        blocks = []
        for members in classes.values():
            edge = [x for x in members if x in boundary]
            if edge:
                blocks.append(frozenset(edge))
            else:
                internal += 1
        key = frozenset(blocks)
        poly = _delta() ** internal
        exponent = 2 * a_count - m
        bucket = acc.setdefault(key, {})
        for deg, coeff in poly.as_dict().items():
            bucket[deg + exponent] = bucket.get(deg + exponent, 0) + coeff
    return {k: LaurentPoly.from_dict(v) for k, v in acc.items()}


def _bracket_split(pd: PDCode) -> LaurentPoly:
    """Meet-in-the-middle bracket: states grouped by boundary partitions."""
    n = pd.n
    half = n // 2
    left, right = pd.crossings[:half], pd.crossings[half:]
    seen: Dict[int, int] = {}
    for c in left:
        for x in c:
            seen[x] = seen.get(x, 0) + 1
    boundary = frozenset(x for x, k in seen.items() if k == 1)
    acc_l = _half_states(left, boundary)
    acc_r = _half_states(right, boundary)
    delta = _delta()
    total = LaurentPoly.zero()
    for blocks_l, poly_l in acc_l.items():
        for blocks_r, poly_r in acc_r.items():
            parent = {x: x for x in boundary}

            def find(x: int) -> int:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for block in list(blocks_l) + list(blocks_r):
                members = sorted(block)
                for other in members[1:]:
                    parent[find(other)] = find(members[0])
            loops = len({find(x) for x in boundary})
            total = total + poly_l * poly_r * delta ** (loops - 1)
    return total


def kauffman_bracket(pd: PDCode, method: str = "auto") -> BracketPoly:
    """Kauffman bracket with <unknot> = 1.

    method: "naive" (2^n state enumeration, the oracle), "split"
    (meet-in-the-middle over boundary partitions), or "auto".
    """
    if method == "auto":
        method = "naive" if pd.n <= 8 else "split"
    if method == "naive":
        if pd.n > NAIVE_LIMIT:
            raise ValueError(f"refusing naive state sum beyond {NAIVE_LIMIT}")
        return BracketPoly(_bracket_naive(pd))
    if method == "split":
        if pd.n < 2:
            return BracketPoly(_bracket_naive(pd))
        return BracketPoly(_bracket_split(pd))
    raise ValueError(f"unknown method {method!r}")


def jones(pd: PDCode, method: str = "auto") -> LaurentPoly:
    """Jones polynomial: V = (-A)^(-3w) <K> with t = A^-4."""
    bracket = kauffman_bracket(pd, method).poly
    w = writhe(pd) if pd.n else 0
    corrected = bracket.shift(-3 * w)
    if w % 2 == 1:
        corrected = -corrected
    out: Dict[int, int] = {}
    for deg, coeff in corrected.as_dict().items():
        if deg % 4 != 0:
            raise InvalidDiagram(
                f"corrected bracket exponent {deg} not divisible by 4; "
                "diagram is not a consistently signed knot")
        out[-deg // 4] = coeff
    return LaurentPoly.from_dict(out)


def connected_sum(v1: LaurentPoly, v2: LaurentPoly) -> LaurentPoly:
    """Jones of a connected sum is the product of the summands' Jones."""
    return v1 * v2


def mirror(v: LaurentPoly) -> LaurentPoly:
    """Jones of the mirror image substitutes t -> 1/t."""
    return invert_variable(v)


def mirror_pd(pd: PDCode) -> PDCode:
    """Mirror image diagram: rotate each tuple by one (over/under swap)."""
    return PDCode(tuple((b, c, d, a) for a, b, c, d in pd.crossings))
