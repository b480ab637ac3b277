"""Curated knot table: loading, expressions, validation.

The packaged table (``data/knots.csv``) stores one knot per row with a
planar diagram, an optional expected Jones polynomial, and a free-text
provenance note.  Jones polynomials are computed once at load time and
cached on the record.

Chirality is resolved automatically: a stored diagram may be either
hand of the knot, and when its computed polynomial matches the expected
one only after mirroring, the record keeps the mirrored diagram and is
flagged ``chirality_flipped``.  A mismatch under both hands is a hard
error, as is any record violating the five polynomial conditions.

Connected sums and mirrors of table knots are written as expressions,
e.g. ``"3_1 # 4_1"`` or ``"12n237 # 12n237*"``: ``#`` multiplies Jones
polynomials and a postfix ``*`` mirrors one factor (t -> 1/t).
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, Iterator, Optional, Tuple, Union

from .classify import Classification, ConditionsReport, check_conditions, classify
from .knot import PDCode, jones, mirror, mirror_pd, parse_pd
from .laurent import LaurentPoly, parse_poly, reduce_mod_p

__all__ = [
    "DbError",
    "ExpressionSyntaxError",
    "KnotDb",
    "KnotExpression",
    "KnotRecord",
    "RecordReport",
    "DbReport",
    "REQUIRED_KNOTS",
    "UnknownKnot",
    "default_db_path",
    "evaluate_expression",
    "load_db",
    "parse_knot_expression",
    "validate_db",
]


class DbError(ValueError):
    """Malformed table file or a record failing a load-time check."""


class ExpressionSyntaxError(ValueError):
    """Text that does not parse as a knot expression."""


class UnknownKnot(ValueError):
    """Expression names a knot absent from the database."""


# Names every complete table must carry: the unknot, the prime knots up
# to 8 crossings except the four whose mod-2 class duplicates another
# entry's, and the census knots needed by the span-8 window tables.
REQUIRED_KNOTS = frozenset(
    ["O", "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3",
     "7_1", "7_2", "7_3", "7_4", "7_5", "7_6", "7_7",
     "8_1", "8_2", "8_3", "8_4", "8_5", "8_6", "8_7", "8_8",
     "8_10", "8_11", "8_12", "8_14", "8_15", "8_17", "8_19", "8_20",
     "8_21",
     "9_42", "9_43", "9_44",
     "10_124", "10_126", "10_127", "10_128", "10_133", "10_136",
     "10_140", "10_143", "10_145", "10_146", "10_147", "10_160",
     "10_163", "10_165",
     "11n63", "11n71", "11n77", "11n99", "11n118", "11n173",
     "12n237"]
)


@dataclass(frozen=True)
class KnotRecord:
    """One table entry; the polynomial is computed when the row loads."""

    name: str
    pd: PDCode
    jones_z: LaurentPoly
    expected_jones: Optional[LaurentPoly]
    chirality_flipped: bool
    source: str


class KnotDb:
    """Immutable name -> record map with stable iteration order."""

    def __init__(self, records: Iterable[KnotRecord]):
        self._records: Dict[str, KnotRecord] = {}
        for rec in records:
            if rec.name in self._records:
                raise DbError(f"duplicate knot name {rec.name!r}")
            self._records[rec.name] = rec

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, name: str) -> bool:
        return name in self._records

    def __getitem__(self, name: str) -> KnotRecord:
        try:
            return self._records[name]
        except KeyError:
            raise UnknownKnot(f"unknown knot {name!r}") from None

    def __iter__(self) -> Iterator[KnotRecord]:
        return iter(self._records.values())

    def names(self) -> Tuple[str, ...]:
        return tuple(self._records)

    def subset(self, names: Iterable[str]) -> "KnotDb":
        """A smaller view, e.g. for partial-coverage reports."""
        return KnotDb([self[name] for name in names])


def default_db_path() -> Path:
    """Location of the table file installed with the package."""
    return Path(str(resources.files(__package__).joinpath("data/knots.csv")))


def load_db(path: Union[str, Path, None] = None,
            require_manifest: bool = True) -> KnotDb:
    """Read a table file, compute all polynomials, resolve chirality.

    Raises DbError for malformed rows, records whose polynomial fails
    the five conditions, expected values matched by neither hand of the
    stored diagram, and (unless ``require_manifest`` is false) missing
    required knots.
    """
    file = Path(path) if path is not None else default_db_path()
    records = []
    with file.open(newline="") as fh:
        reader = csv.DictReader(fh)
        needed = {"name", "pd", "expected_jones", "source"}
        if reader.fieldnames is None or not needed.issubset(reader.fieldnames):
            raise DbError(f"{file}: expected columns {sorted(needed)}")
        for row in reader:
            records.append(_load_record(row, file))
    db = KnotDb(records)
    if require_manifest:
        missing = sorted(REQUIRED_KNOTS - set(db.names()), key=_name_key)
        if missing:
            raise DbError(f"{file}: missing required knots: "
                          + ", ".join(missing))
    return db


def _load_record(row: Dict[str, str], file: Path) -> KnotRecord:
    name = (row.get("name") or "").strip()
    if not name:
        raise DbError(f"{file}: row with empty name")
    try:
        pd = parse_pd(row["pd"])
    except ValueError as exc:
        raise DbError(f"{file}: {name}: bad diagram: {exc}") from None
    v = jones(pd)
    expected_text = (row.get("expected_jones") or "").strip()
    expected = parse_poly(expected_text) if expected_text else None
    flipped = False
    if expected is not None and v != expected:
        if mirror(v) == expected:
            pd, v, flipped = mirror_pd(pd), expected, True
        else:
            raise DbError(
                f"{file}: {name}: computed {v}, neither it nor its "
                f"mirror equals expected {expected}")
    if not check_conditions(v).all_pass:
        raise DbError(f"{file}: {name}: polynomial fails conditions: {v}")
    return KnotRecord(name=name, pd=pd, jones_z=v, expected_jones=expected,
                      chirality_flipped=flipped,
                      source=(row.get("source") or "").strip())


def _name_key(name: str) -> Tuple[int, str, int]:
    if name == "O":
        return (0, "", 0)
    m = re.fullmatch(r"(\d+)(n?)_?(\d+)", name)
    if m is None:
        return (99, name, 0)
    return (int(m.group(1)), m.group(2), int(m.group(3)))


# ----------------------------------------------------------- expressions

@dataclass(frozen=True)
class KnotExpression:
    """Tree of knot names under connected sum (#) and mirror (*)."""

    kind: str  # "name", "mirror" or "sum"
    name: Optional[str] = None
    left: Optional["KnotExpression"] = None
    right: Optional["KnotExpression"] = None

    def __str__(self) -> str:
        if self.kind == "name":
            return self.name
        if self.kind == "mirror":
            return f"{self.left}*"
        return f"{self.left} # {self.right}"


_NAME_RE = re.compile(r"[A-Za-z0-9]+(?:_[A-Za-z0-9]+)?")


def parse_knot_expression(text: str) -> KnotExpression:
    """Parse ``name['*'] ('#' name['*'])*``; whitespace is ignored."""
    pos = 0
    compact = "".join(text.split())
    if not compact:
        raise ExpressionSyntaxError("empty expression")

    def term() -> KnotExpression:
        nonlocal pos
        m = _NAME_RE.match(compact, pos)
        if m is None:
            raise ExpressionSyntaxError(
                f"expected a knot name at position {pos} in {text!r}")
        pos = m.end()
        node = KnotExpression(kind="name", name=m.group())
        if pos < len(compact) and compact[pos] == "*":
            pos += 1
            node = KnotExpression(kind="mirror", left=node)
        return node

    node = term()
    while pos < len(compact):
        if compact[pos] != "#":
            raise ExpressionSyntaxError(
                f"unexpected {compact[pos]!r} at position {pos} in {text!r}")
        pos += 1
        node = KnotExpression(kind="sum", left=node, right=term())
    return node


def evaluate_expression(db: KnotDb,
                        expr: Union[str, KnotExpression]) -> LaurentPoly:
    """Jones polynomial of an expression: # multiplies, * mirrors."""
    if isinstance(expr, str):
        expr = parse_knot_expression(expr)
    if expr.kind == "name":
        return db[expr.name].jones_z
    if expr.kind == "mirror":
        return mirror(evaluate_expression(db, expr.left))
    return evaluate_expression(db, expr.left) * evaluate_expression(db, expr.right)


# ------------------------------------------------------------ validation

@dataclass(frozen=True)
class RecordReport:
    """Per-record validation: conditions, classification, mod-2 range."""

    name: str
    conditions: ConditionsReport
    classification: Classification
    mod2_min_deg: Optional[int]
    mod2_max_deg: Optional[int]
    chirality_flipped: bool
    ok: bool


@dataclass(frozen=True)
class DbReport:
    """Validation of a whole database plus manifest coverage."""

    records: Tuple[RecordReport, ...]
    missing_required: Tuple[str, ...]
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "records": [
                {
                    "name": r.name,
                    "conditions_pass": r.conditions.all_pass,
                    "family": r.classification.family,
                    "n": r.classification.n,
                    "realizable_n": r.classification.realizable_n,
                    "mod2_min_deg": r.mod2_min_deg,
                    "mod2_max_deg": r.mod2_max_deg,
                    "chirality_flipped": r.chirality_flipped,
                    "ok": r.ok,
                }
                for r in self.records
            ],
            "missing_required": list(self.missing_required),
            "ok": self.ok,
        }

    def to_text(self) -> str:
        lines = [f"{'name':<10} {'ok':<4} {'family':<7} {'n':>5} "
                 f"{'mod-2 degrees':<14} flipped"]
        for r in self.records:
            rng = (f"[{r.mod2_min_deg},{r.mod2_max_deg}]"
                   if r.mod2_min_deg is not None else "-")
            lines.append(
                f"{r.name:<10} {'ok' if r.ok else 'FAIL':<4} "
                f"{r.classification.family:<7} {r.classification.n:>5} "
                f"{rng:<14} {'yes' if r.chirality_flipped else 'no'}")
        if self.missing_required:
            lines.append("missing required: "
                         + ", ".join(self.missing_required))
        lines.append(f"database {'ok' if self.ok else 'FAIL'}: "
                     f"{len(self.records)} records")
        return "\n".join(lines)


def validate_db(db: KnotDb) -> DbReport:
    """Re-check every record and report manifest coverage."""
    reports = []
    for rec in db:
        conditions = check_conditions(rec.jones_z)
        cls = classify(rec.jones_z)
        vbar = reduce_mod_p(rec.jones_z, 2)
        ok = conditions.all_pass and cls.realizable_n
        if rec.expected_jones is not None:
            ok = ok and rec.jones_z == rec.expected_jones
        reports.append(RecordReport(
            name=rec.name,
            conditions=conditions,
            classification=cls,
            mod2_min_deg=vbar.min_deg(),
            mod2_max_deg=vbar.max_deg(),
            chirality_flipped=rec.chirality_flipped,
            ok=ok,
        ))
    missing = tuple(sorted(REQUIRED_KNOTS - set(db.names()), key=_name_key))
    ok = not missing and all(r.ok for r in reports)
    return DbReport(records=tuple(reports), missing_required=missing, ok=ok)
