"""Census verification: octet realization, window rows, shift maps."""

import pytest

from jonesmod.knot import mirror, parse_pd
from jonesmod.knotdb import KnotDb, KnotRecord, UnknownKnot
from jonesmod.laurent import LaurentPoly, parse_poly, reduce_mod_p
from jonesmod.modp import enumerate_admissible, is_admissible
from jonesmod.verify import (
    OCTET_KNOTS,
    TABLE1_ROWS,
    _row_report,
    verify_reference_realization,
    verify_shift,
    verify_table1,
)

FIG8_PD = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]"


def mod2(v):
    return reduce_mod_p(v, 2)


# ------------------------------------------------------- reference octet

def test_octet_names():
    assert OCTET_KNOTS == ("O", "3_1", "5_1", "5_2", "8_21", "9_43",
                           "10_140", "10_160")


def test_reference_realization_passes(db):
    report = verify_reference_realization(db)
    assert report.ok
    assert not report.absent
    assert not report.unrealized
    assert len(report.matches) == 8
    labels = {label for _, _, label in report.matches}
    assert labels == {(fam, n) for fam in "I II III IV".split()
                      for n in (0, 1)}


def test_reference_realization_is_a_bijection(db):
    report = verify_reference_realization(db)
    polys = [vbar for _, vbar, _ in report.matches]
    assert len(set(polys)) == len(polys)


def test_reference_report_subset_db(db):
    partial = db.subset([n for n in OCTET_KNOTS if n != "10_160"])
    report = verify_reference_realization(partial)
    assert not report.ok
    assert report.absent == ("10_160",)
    assert len(report.matches) == 7
    assert len(report.unrealized) == 1
    assert "10_160" in report.to_text()
    assert report.to_json_dict()["absent"] == ["10_160"]


def test_reference_report_flags_wrong_polynomial(db):
    # swap the trefoil record for a figure-eight in disguise
    fake = KnotRecord(name="3_1", pd=parse_pd(FIG8_PD),
                      jones_z=db["4_1"].jones_z, expected_jones=None,
                      chirality_flipped=False, source="negative control")
    records = [fake if rec.name == "3_1" else rec
               for rec in db.subset(OCTET_KNOTS)]
    report = verify_reference_realization(KnotDb(records))
    assert not report.ok
    bad = [name for name, _, label in report.matches if label is None]
    assert bad == ["3_1"]
    assert len(report.unrealized) == 1
    fam, n, _ = report.unrealized[0]
    assert (fam, n) == ("II", 0)
    assert "NOT A REFERENCE" in report.to_text()


# ------------------------------------------------------------ window rows

def test_table1_has_seven_windows():
    assert sorted(TABLE1_ROWS) == [-4, -3, -2, -1, 0, 1, 2]
    for entries in TABLE1_ROWS.values():
        assert len(entries) == 16


def test_all_rows_pass(db):
    reports = verify_table1(db)
    assert len(reports) == 8  # row [1,9] appears twice
    for report in reports:
        assert report.ok, report.to_text()


def test_row_1_checked_with_both_names(db):
    reports = [r for r in verify_table1(db) if r.window == (1, 9)]
    assert [r.variant for r in reports] == ["as printed, 11n77",
                                            "11n71 substituted"]
    assert all(r.ok for r in reports)
    with_77 = next(str(e) for r in reports for e in r.claimed_entries
                   if "11n77" in str(e))
    assert with_77 == "11n77"


def test_rows_realize_exactly_the_enumeration(db):
    for report in verify_table1(db):
        a, b = report.window
        members = frozenset(enumerate_admissible(2, a, b).members)
        assert report.realized == members
        assert not report.missing and not report.extra


def test_realized_values_are_admissible(db):
    for report in verify_table1(db):
        for v in report.realized:
            assert is_admissible(v) is not None


def test_mirrored_rows_enumerate_the_mirrored_window(db):
    for report in verify_table1(db):
        a, b = report.window
        flipped = frozenset(mirror(v) for v in report.realized)
        assert flipped == frozenset(enumerate_admissible(2, -b, -a).members)


def test_duplicate_entries_are_counted_once(db):
    report = _row_report(db, -4, ("O",) * 16)
    assert report.distinct == 1
    assert not report.ok
    assert not report.equals_admissible
    assert len(report.missing) == 15


def test_row_report_out_of_window(db):
    report = _row_report(db, 2, ("3_1*",))  # degrees [-4,-1], window [2,10]
    assert not report.in_window
    assert not report.ok


def test_table1_requires_resolvable_names(db):
    partial = db.subset([n for n in db.names() if n != "11n71"])
    with pytest.raises(UnknownKnot):
        verify_table1(partial)


def test_row_report_serialization(db):
    report = verify_table1(db)[0]
    data = report.to_json_dict()
    assert data["window"] == [-4, 4]
    assert data["distinct"] == 16
    assert data["ok"] is True
    assert len(data["claimed_entries"]) == 16
    assert sorted(data["realized"]) == data["realized"]
    text = report.to_text()
    assert "row [-4,4]" in text and "PASS" in text


# ------------------------------------------------------------- shift maps

@pytest.mark.parametrize("k", range(-3, 4))
def test_shift_passes(db, k):
    report = verify_shift(db, k)
    assert report.monomial_ok
    assert report.window == (12 * k, 12 * k + 8)
    assert report.ok, report.to_text()


def test_shift_zero_is_the_base_row(db):
    report = verify_shift(db, 0)
    base = _row_report(db, 0, TABLE1_ROWS[0])
    assert report.window == (0, 8)
    assert not report.missing and not report.extra
    assert base.ok


def test_shift_monomial_is_t12(db):
    assert mod2(db["12n237"].jones_z) == mod2(parse_poly("t^12"))


def test_shift_report_serialization(db):
    report = verify_shift(db, -2)
    data = report.to_json_dict()
    assert data["window"] == [-24, -16]
    assert data["base_window"] == [0, 8]
    assert data["ok"] is True
    assert "k=-2" in report.to_text()
