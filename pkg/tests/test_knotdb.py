"""Knot table loading, expression evaluation, and validation reports."""

import csv

import pytest

from jonesmod.classify import classify
from jonesmod.knot import jones, mirror, parse_pd
from jonesmod.knotdb import (
    REQUIRED_KNOTS,
    DbError,
    ExpressionSyntaxError,
    KnotExpression,
    UnknownKnot,
    default_db_path,
    evaluate_expression,
    load_db,
    parse_knot_expression,
    validate_db,
)
from jonesmod.laurent import LaurentPoly, parse_poly, reduce_mod_p
from jonesmod.modp import enumerate_admissible, reference_set

# left-handed trefoil; the right-handed value below forces a flip on load
TREFOIL_PD = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]"
V_31 = "-t^4+t^3+t"

OCTET_BY_CLASS = {
    ("I", 0): "O", ("I", 1): "5_2",
    ("II", 0): "3_1", ("II", 1): "10_160",
    ("III", 0): "5_1", ("III", 1): "9_43",
    ("IV", 0): "8_21", ("IV", 1): "10_140",
}


def write_table(path, rows):
    with path.open("w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["name", "pd", "expected_jones", "source"])
        out.writerows(rows)
    return path


def mod2(v):
    return reduce_mod_p(v, 2)


# ------------------------------------------------------------- loading

def test_default_path_exists():
    assert default_db_path().is_file()


def test_manifest_is_56_names():
    assert len(REQUIRED_KNOTS) == 56
    assert "O" in REQUIRED_KNOTS
    assert "12n237" in REQUIRED_KNOTS
    assert "11n71" in REQUIRED_KNOTS and "11n77" in REQUIRED_KNOTS
    for skipped in ("8_9", "8_13", "8_16", "8_18"):
        assert skipped not in REQUIRED_KNOTS


def test_default_db_satisfies_manifest(db):
    assert REQUIRED_KNOTS <= set(db.names())


def test_skip_list_knots_shipped_as_extras(db):
    for name in ("8_9", "8_13", "8_16", "8_18"):
        assert name in db


def test_every_stored_polynomial_matches_its_diagram(db):
    for rec in db:
        assert jones(rec.pd) == rec.jones_z, rec.name


def test_expected_values_reproduced_exactly(db):
    rows_with_expected = [rec for rec in db if rec.expected_jones is not None]
    assert rows_with_expected
    for rec in rows_with_expected:
        assert rec.jones_z == rec.expected_jones, rec.name


def test_trefoil_loads_flipped(db):
    rec = db["3_1"]
    assert rec.jones_z == parse_poly(V_31)
    assert rec.chirality_flipped


def test_unknot_record(db):
    assert db["O"].jones_z == LaurentPoly.one()
    assert db["O"].pd.n == 0


def test_12n237_reduces_to_t12(db):
    assert mod2(db["12n237"].jones_z) == reduce_mod_p(parse_poly("t^12"), 2)


def test_9_43_class(db):
    assert mod2(db["9_43"].jones_z) == reduce_mod_p(parse_poly("1+t+t^7"), 2)


def test_octet_records_realize_reference_set(db):
    for entry in reference_set(2).entries:
        name = OCTET_BY_CLASS[(entry.family, entry.n)]
        assert mod2(db[name].jones_z) == entry.poly, name


def test_unknown_name_lookup(db):
    with pytest.raises(UnknownKnot, match="99_99"):
        db["99_99"]


# --------------------------------------------------- synthetic tables

def test_loader_flips_to_match_expected(tmp_path):
    path = write_table(tmp_path / "t.csv",
                       [["K", TREFOIL_PD, V_31, "unit test"]])
    db = load_db(path, require_manifest=False)
    rec = db["K"]
    assert rec.chirality_flipped
    assert rec.jones_z == parse_poly(V_31)
    assert jones(rec.pd) == rec.jones_z  # the stored diagram was mirrored


def test_loader_keeps_matching_hand(tmp_path):
    lefty = str(jones(parse_pd(TREFOIL_PD)))
    path = write_table(tmp_path / "t.csv",
                       [["K", TREFOIL_PD, lefty, "unit test"]])
    rec = load_db(path, require_manifest=False)["K"]
    assert not rec.chirality_flipped
    assert rec.jones_z == mirror(parse_poly(V_31))


def test_loader_without_expected_column_value(tmp_path):
    path = write_table(tmp_path / "t.csv",
                       [["K", TREFOIL_PD, "", "unit test"]])
    rec = load_db(path, require_manifest=False)["K"]
    assert rec.expected_jones is None
    assert not rec.chirality_flipped


def test_expected_mismatch_in_both_chiralities(tmp_path):
    path = write_table(tmp_path / "t.csv",
                       [["K", TREFOIL_PD, "t^2-t+1-t^-1+t^-2", "bad row"]])
    with pytest.raises(DbError, match="K"):
        load_db(path, require_manifest=False)


def test_conditions_failure_is_a_hard_error(tmp_path, monkeypatch):
    class Failing:
        all_pass = False

    import jonesmod.knotdb as knotdb_module
    monkeypatch.setattr(knotdb_module, "check_conditions",
                        lambda v: Failing())
    path = write_table(tmp_path / "t.csv",
                       [["K", TREFOIL_PD, "", "unit test"]])
    with pytest.raises(DbError, match="conditions"):
        load_db(path, require_manifest=False)


def test_missing_required_knot_is_an_error(tmp_path):
    path = write_table(tmp_path / "t.csv",
                       [["3_1", TREFOIL_PD, V_31, "unit test"]])
    with pytest.raises(DbError, match="missing required"):
        load_db(path)
    assert len(load_db(path, require_manifest=False)) == 1


def test_duplicate_name_is_an_error(tmp_path):
    path = write_table(tmp_path / "t.csv",
                       [["K", TREFOIL_PD, "", "a"],
                        ["K", TREFOIL_PD, "", "b"]])
    with pytest.raises(DbError, match="duplicate"):
        load_db(path, require_manifest=False)


def test_malformed_diagram_is_an_error(tmp_path):
    path = write_table(tmp_path / "t.csv",
                       [["K", "PD[X[1,2,3]]", "", "bad"]])
    with pytest.raises(DbError, match="K"):
        load_db(path, require_manifest=False)


def test_missing_columns_is_an_error(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("name,pd\nK,PD[]\n")
    with pytest.raises(DbError, match="columns"):
        load_db(path, require_manifest=False)


# ----------------------------------------------------------- expressions

def test_parse_single_name():
    e = parse_knot_expression("O")
    assert e == KnotExpression(kind="name", name="O")


def test_whitespace_ignored():
    assert parse_knot_expression(" 3_1  #4_1 ") == \
        parse_knot_expression("3_1#4_1")


def test_mirror_binds_to_the_name():
    e = parse_knot_expression("3_1 # 4_1*")
    assert e.kind == "sum"
    assert e.left == KnotExpression(kind="name", name="3_1")
    assert e.right.kind == "mirror"
    assert e.right.left.name == "4_1"


def test_sum_is_left_associative():
    e = parse_knot_expression("3_1* # 5_1 # O")
    assert e.kind == "sum"
    assert e.right.name == "O"
    assert e.left.kind == "sum"
    assert e.left.left.kind == "mirror"


@pytest.mark.parametrize("text", [
    "O", "3_1", "3_1*", "3_1 # 4_1", "3_1* # 5_1", "4_1 # 8_21",
    "10_136*", "4_1 # 4_1", "12n237 # 12n237*",
])
def test_str_round_trips(text):
    e = parse_knot_expression(text)
    assert parse_knot_expression(str(e)) == e


@pytest.mark.parametrize("bad", ["", "   ", "#", "3_1#", "#3_1",
                                 "3_1 4_1", "*3_1", "3_1**", "3_1 # #"])
def test_syntax_errors(bad):
    with pytest.raises(ExpressionSyntaxError):
        parse_knot_expression(bad)


def test_unknot_evaluates_to_one(db):
    assert evaluate_expression(db, "O") == LaurentPoly.one()


def test_evaluation_multiplies_and_mirrors(db):
    v31, v41 = db["3_1"].jones_z, db["4_1"].jones_z
    assert evaluate_expression(db, "3_1 # 4_1") == v31 * v41
    assert evaluate_expression(db, "3_1*") == mirror(v31)
    assert evaluate_expression(db, "3_1* # 4_1") == mirror(v31) * v41


def test_evaluation_accepts_parsed_trees(db):
    e = parse_knot_expression("4_1 # 8_21")
    assert evaluate_expression(db, e) == \
        db["4_1"].jones_z * db["8_21"].jones_z


def test_unknown_leaf_name(db):
    with pytest.raises(UnknownKnot):
        evaluate_expression(db, "99_99")


def test_12n237_with_its_mirror_is_trivial_mod_2(db):
    v = evaluate_expression(db, "12n237 # 12n237*")
    assert mod2(v) == LaurentPoly.one(modulus=2)


# ----------------------------------------------------------- coincidences

def test_skip_list_coincidences(db):
    # 8_16 shares its class with 8_1: dets 35, 13 and 27 pin the three
    # identities, and 8_1 / 8_10 hold distinct slots of the [-2,6] row.
    pairs = [("8_9", "4_1 # 4_1"), ("8_13", "8_4"),
             ("8_16", "8_1"), ("8_18", "8_12")]
    for extra, partner in pairs:
        left = mod2(db[extra].jones_z)
        right = mod2(evaluate_expression(db, partner))
        assert left == right, (extra, partner)
    assert mod2(db["8_16"].jones_z) != mod2(db["8_10"].jones_z)


def test_trefoil_fig8_sum_lands_in_two_windows(db):
    vbar = mod2(evaluate_expression(db, "3_1 # 4_1"))
    assert vbar in set(enumerate_admissible(2, -2, 6).members)
    assert vbar in set(enumerate_admissible(2, -1, 7).members)


# ------------------------------------------------------------ validation

def test_all_records_classify_as_realizable(db):
    for rec in db:
        assert classify(rec.jones_z).realizable_n, rec.name


def test_mirror_classification_covariance(db):
    for rec in db:
        c = classify(rec.jones_z)
        m = classify(mirror(rec.jones_z))
        assert m.family == c.family, rec.name
        assert m.n in (c.n, -c.n - 1), rec.name


def test_full_database_report_is_ok(db):
    report = validate_db(db)
    assert report.ok
    assert not report.missing_required
    assert len(report.records) == len(db)
    assert all(r.ok for r in report.records)


def test_subset_report_flags_missing_names(db):
    partial = db.subset([n for n in db.names() if n != "8_19"])
    report = validate_db(partial)
    assert not report.ok
    assert report.missing_required == ("8_19",)
    assert all(r.ok for r in report.records)


def test_report_json_and_text_agree(db):
    octet = db.subset(sorted(OCTET_BY_CLASS.values()))
    report = validate_db(octet)
    data = report.to_json_dict()
    assert {r["name"] for r in data["records"]} == set(octet.names())
    assert data["ok"] == report.ok
    text = report.to_text()
    for rec in report.records:
        assert rec.name in text
    assert ("database ok" in text) == report.ok
    sample = next(r for r in data["records"] if r["name"] == "3_1")
    assert sample["conditions_pass"] and sample["realizable_n"]
    assert sample["mod2_min_deg"] is not None
