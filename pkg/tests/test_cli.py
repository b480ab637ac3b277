"""End-to-end tests of the command line interface.

The mathematical content is covered by the library suites; here we pin
the envelope shape, exit codes, flag parsing, and the environment
override for the knot table.
"""

import json
import shutil

import pytest

from jonesmod.cli import ENV_DB, run
from jonesmod.knot import braid_to_pd, jones, mirror, parse_braid, parse_pd
from jonesmod.knotdb import default_db_path
from jonesmod.laurent import parse_poly, reduce_mod_p
from jonesmod.modp import reference_set

ATLAS_TREFOIL = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]"


def invoke(capsys, *args):
    rc = run(list(args))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def invoke_json(capsys, *args):
    rc, out, err = invoke(capsys, *args, "--output", "json")
    return rc, json.loads(out), err


# ---------------------------------------------------------------- compute

def test_compute_pd_text(capsys):
    rc, out, _ = invoke(capsys, "compute", "--pd", ATLAS_TREFOIL)
    assert rc == 0
    assert out.strip() == str(jones(parse_pd(ATLAS_TREFOIL)))


def test_compute_braid_matches_library(capsys):
    rc, out, _ = invoke(capsys, "compute", "--braid", "[1,1,1]")
    assert rc == 0
    expected = jones(braid_to_pd(parse_braid("[1,1,1]")))
    assert parse_poly(out.strip()) == expected


def test_compute_braid_mod_2(capsys):
    rc, out, _ = invoke(capsys, "compute", "--braid", "[1,1,1]", "--mod", "2")
    assert rc == 0
    expected = reduce_mod_p(jones(braid_to_pd(parse_braid("[1,1,1]"))), 2)
    assert parse_poly(out.strip(), modulus=2) == expected


def test_compute_named_knot(capsys, db):
    rc, out, _ = invoke(capsys, "compute", "--knot", "3_1")
    assert rc == 0
    assert out.splitlines()[0] == "-t^4+t^3+t"
    noted = "note: 3_1" in out
    assert noted == db["3_1"].chirality_flipped


def test_compute_expression_json(capsys, db):
    rc, envelope, _ = invoke_json(capsys, "compute",
                                  "--knot", "3_1 # 4_1*", "--mod", "2")
    assert rc == 0
    assert envelope["command"] == "compute"
    assert envelope["pass"] is True
    names = [d["name"] for d in envelope["details"]]
    assert names == ["3_1", "4_1"]
    direct = reduce_mod_p(db["3_1"].jones_z * mirror(db["4_1"].jones_z), 2)
    assert parse_poly(envelope["result"], modulus=2) == direct


def test_compute_unknown_knot(capsys, db):
    rc, _, err = invoke(capsys, "compute", "--knot", "99_1")
    assert rc == 2
    assert "error:" in err


def test_compute_multicomponent_braid_rejected(capsys):
    rc, _, err = invoke(capsys, "compute", "--braid", "[1,-1]")
    assert rc == 2
    assert "component" in err


def test_compute_sources_mutually_exclusive(capsys):
    rc, _, _ = invoke(capsys, "compute", "--pd", ATLAS_TREFOIL,
                      "--braid", "[1]")
    assert rc == 2


# ------------------------------------------------- conditions and classify

def test_conditions_pass(capsys):
    rc, out, _ = invoke(capsys, "conditions", "--poly", "-t^4+t^3+t")
    assert rc == 0
    assert "conditions pass" in out


def test_conditions_fail_exit_code(capsys):
    rc, envelope, _ = invoke_json(capsys, "conditions", "--poly", "t^2+t")
    assert rc == 1
    assert envelope["pass"] is False
    assert len(envelope["details"]) == 5
    assert not all(d["pass"] for d in envelope["details"])


def test_classify_trefoil_square(capsys):
    v31 = parse_poly("-t^4+t^3+t")
    rc, envelope, _ = invoke_json(capsys, "classify", "--poly",
                                  str(v31 * v31))
    # conditions force 2n = +-1 +-3^l, so -2 is still realizable
    assert rc == 0
    assert envelope["result"]["family"] == "I"
    assert envelope["result"]["n"] == -2
    assert envelope["result"]["realizable_n"] is True


def test_classify_conditions_failure_exits_1(capsys):
    rc, _, err = invoke(capsys, "classify", "--poly", "t^3+t")
    assert rc == 1
    assert "error:" in err


def test_bad_polynomial_is_usage_error(capsys):
    rc, _, err = invoke(capsys, "conditions", "--poly", "t^^2")
    assert rc == 2
    assert "error:" in err


# ------------------------------------------------------------ modular set

def test_refs_mod_2_lists_octet(capsys):
    rc, out, _ = invoke(capsys, "refs", "--mod", "2")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "8 entries, 8 distinct"
    refs = reference_set(2)
    for line, entry in zip(lines, refs.entries):
        assert line.startswith(f"({entry.family}, {entry.n})")
        assert parse_poly(line.split(")", 1)[1].strip(),
                          modulus=2) == entry.poly


def test_refs_refined_mod_5(capsys):
    rc, envelope, _ = invoke_json(capsys, "refs", "--mod", "5", "--refined")
    assert rc == 0
    assert envelope["result"]["entries"] == 16
    family_i = [d["n"] for d in envelope["details"] if d["family"] == "I"]
    assert family_i == [0, 1, 3, 4]


def test_refs_composite_modulus(capsys):
    rc, _, err = invoke(capsys, "refs", "--mod", "4")
    assert rc == 2
    assert "prime" in err


def test_refined_refs_mod_3_rejected(capsys):
    rc, _, _ = invoke(capsys, "refs", "--mod", "3", "--refined")
    assert rc == 2


def test_enumerate_members(capsys):
    rc, envelope, _ = invoke_json(capsys, "enumerate", "--mod", "2",
                                  "--range", "0", "8")
    assert rc == 0
    assert envelope["result"]["count"] == 16
    assert len(envelope["details"]) == 16
    assert envelope["details"] == sorted(envelope["details"])
    for text in envelope["details"]:
        parse_poly(text, modulus=2)


def test_enumerate_count_only(capsys):
    rc, envelope, _ = invoke_json(capsys, "enumerate", "--mod", "2",
                                  "--range", "0", "7", "--count-only")
    assert rc == 0
    assert envelope["result"]["count"] == 8
    assert envelope["details"] == []


def test_enumerate_narrow_window(capsys):
    rc, _, err = invoke(capsys, "enumerate", "--mod", "2",
                        "--range", "0", "5")
    assert rc == 2
    assert "narrow" in err


def test_density_values(capsys):
    rc, envelope, _ = invoke_json(capsys, "density", "--mod", "3",
                                  "--range", "0", "10")
    assert rc == 0
    assert envelope["result"]["count_bound"] == 4 * 3 * 3 ** 3
    assert envelope["result"]["density"] == "4/2187"


def test_residue_admissible(capsys):
    rc, envelope, _ = invoke_json(capsys, "residue", "--poly", "1",
                                  "--mod", "2")
    assert rc == 0
    assert envelope["result"] == {"residue": "1", "admissible": True,
                                  "family": "I", "n": 0}


def test_residue_not_admissible(capsys):
    rc, envelope, _ = invoke_json(capsys, "residue", "--poly", "t",
                                  "--mod", "2")
    assert rc == 1
    assert envelope["result"]["admissible"] is False


# -------------------------------------------------------------- integers

@pytest.mark.parametrize("args", [
    ("refs", "--mod", "2.0"),
    ("enumerate", "--mod", "2", "--range", "0.0", "8"),
    ("density", "--mod", "2", "--range", "0", "8e0"),
    ("verify", "shift", "--k", "1.5"),
    ("compute", "--braid", "[1,1,1]", "--mod", "two"),
])
def test_numeric_flags_must_be_exact_integers(capsys, args):
    rc, _, _ = invoke(capsys, *args)
    assert rc == 2


# ---------------------------------------------------------------- verify

def test_verify_reference(capsys, db):
    rc, envelope, _ = invoke_json(capsys, "verify", "reference")
    assert rc == 0
    assert envelope["command"] == "verify reference"
    assert envelope["pass"] is True
    assert len(envelope["details"]) == 8


def test_verify_table1(capsys, db):
    rc, envelope, _ = invoke_json(capsys, "verify", "table1")
    assert rc == 0
    assert envelope["result"] == {"rows": 8, "all_pass": True}


def test_verify_shift(capsys, db):
    rc, envelope, _ = invoke_json(capsys, "verify", "shift", "--k", "-2")
    assert rc == 0
    assert envelope["result"]["window"] == [-24, -16]


def test_verify_shift_requires_k(capsys):
    rc, _, _ = invoke(capsys, "verify", "shift")
    assert rc == 2


def test_verify_k_rejected_elsewhere(capsys):
    rc, _, _ = invoke(capsys, "verify", "table1", "--k", "1")
    assert rc == 2


def test_verify_unknown_check(capsys):
    rc, _, _ = invoke(capsys, "verify", "everything")
    assert rc == 2


# -------------------------------------------------------------- database

def test_db_validate(capsys, db):
    rc, envelope, _ = invoke_json(capsys, "db", "validate")
    assert rc == 0
    assert envelope["command"] == "db validate"
    assert envelope["result"]["ok"] is True
    assert envelope["result"]["records"] == len(db)
    assert envelope["result"]["missing_required"] == []


def test_db_env_override(capsys, tmp_path, monkeypatch, db):
    copy = tmp_path / "table.csv"
    shutil.copyfile(default_db_path(), copy)
    monkeypatch.setenv(ENV_DB, str(copy))
    rc, envelope, _ = invoke_json(capsys, "db", "validate")
    assert rc == 0
    assert envelope["result"]["records"] == len(db)


def test_db_env_override_missing_file(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_DB, str(tmp_path / "nope.csv"))
    rc, _, err = invoke(capsys, "db", "validate")
    assert rc == 2
    assert "error:" in err


def test_db_env_override_partial_table(capsys, tmp_path, monkeypatch):
    table = tmp_path / "small.csv"
    table.write_text(
        "name,pd,expected_jones,source\n"
        f"3_1,\"{ATLAS_TREFOIL}\",,atlas\n")
    monkeypatch.setenv(ENV_DB, str(table))
    rc, out, _ = invoke(capsys, "compute", "--knot", "3_1")
    assert rc == 0
    assert parse_poly(out.strip()) == jones(parse_pd(ATLAS_TREFOIL))
    # validation still reports the manifest gap
    rc, envelope, _ = invoke_json(capsys, "db", "validate")
    assert rc == 1
    assert "8_19" in envelope["result"]["missing_required"]


# -------------------------------------------------------------- envelope

@pytest.mark.parametrize("args", [
    ("compute", "--braid", "[1,1,1]"),
    ("conditions", "--poly", "-t^4+t^3+t"),
    ("classify", "--poly", "-t^4+t^3+t"),
    ("refs", "--mod", "2"),
    ("enumerate", "--mod", "3", "--range", "0", "7"),
    ("density", "--mod", "2", "--range", "0", "9"),
    ("residue", "--poly", "1", "--mod", "3"),
])
def test_json_envelope_shape_and_round_trip(capsys, args):
    rc1, envelope, _ = invoke_json(capsys, *args)
    assert set(envelope) == {"command", "result", "pass", "details"}
    assert isinstance(envelope["pass"], bool)
    rc2, again, _ = invoke_json(capsys, *args)
    assert (rc1, envelope) == (rc2, again)


def test_unknown_subcommand(capsys):
    rc, _, _ = invoke(capsys, "frobnicate")
    assert rc == 2


def test_help_exits_zero(capsys):
    rc, out, _ = invoke(capsys, "--help")
    assert rc == 0
    assert "compute" in out
