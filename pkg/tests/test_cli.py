"""Command-line surface: spec parsing, exit codes, format parity, and the
regression pins for the triangular and non-Gorenstein bundled fixtures.

Triangular and local2 values are frozen from the first verified run, per
the fixture-corpus contract; everything else re-derives the expectation
through the library directly.
"""

import json

import numpy as np
import pytest

from ghomalg import cli
from ghomalg import verify as vf
from ghomalg.errors import ParseError, PrimeTooSmall

from test_algebras import P, matrix_algebra_2x2
from test_verify import T2_TABLE


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


BUNDLED = {
    "field.json": ("k", 1),
    "kx2.json": ("k[x]/x^2", 2),
    "kx3.json": ("k[x]/x^3", 3),
    "a2.json": ("A2", 3),
    "t2kx2.json": ("T2(k[x]/x^2)", 6),
    "local2.json": ("local2", 3),
}


def test_bundled_fixtures_parse():
    for name, (label, dim) in BUNDLED.items():
        a = cli.parse_spec(cli._resolve_spec(name))
        assert (a.label, a.dim, a.p) == (label, dim, P)


def test_t2_fixture_matches_hand_presentation():
    a = cli.parse_spec(cli._resolve_spec("t2kx2.json"))
    assert a.basis_names == ["e0", "e1", "u", "v", "f", "f*v"]


def test_parse_spec_rejects_malformed(tmp_path):
    cases = {
        "bad.json": "{not json",
        "noprime.json": json.dumps(
            {"quiver": {"vertices": 1, "arrows": [], "relations": []},
             "label": "x"}),
        "both.json": json.dumps(
            {"quiver": {"vertices": 1, "arrows": [], "relations": []},
             "structure_constants": [], "unit": [],
             "prime": P, "label": "x"}),
        "badarrow.json": json.dumps(
            {"quiver": {"vertices": 1, "arrows": [{"name": "x"}],
                        "relations": []},
             "prime": P, "label": "x"}),
        "badrel.json": json.dumps(
            {"quiver": {"vertices": 1,
                        "arrows": [{"name": "x", "source": 0, "target": 0}],
                        "relations": [[[1, ["y", "y"]]]]},
             "prime": P, "label": "x"}),
    }
    for name, text in cases.items():
        f = tmp_path / name
        f.write_text(text)
        with pytest.raises(ParseError):
            cli.parse_spec(f)


def test_parse_spec_prime_override_hits_constructor_guard():
    path = cli._resolve_spec("kx3.json")
    with pytest.raises(PrimeTooSmall):
        cli.parse_spec(path, prime=2)


def test_parse_spec_structure_constants(tmp_path):
    m2 = matrix_algebra_2x2(P)
    f = tmp_path / "m2.json"
    f.write_text(json.dumps({
        "structure_constants": m2.structure.tolist(),
        "unit": m2.unit.tolist(),
        "prime": P,
        "label": "M2",
    }))
    a = cli.parse_spec(f)
    assert (a.label, a.dim) == ("M2", 4)
    assert np.array_equal(a.structure, m2.structure)


# -- exit codes ------------------------------------------------------------------


def test_missing_spec_is_usage_error(capsys):
    code, _, err = run(capsys, "analyze", "nope.json")
    assert code == 1
    assert "usage" in err


def test_bad_check_id_is_usage_error(capsys):
    code, _, _ = run(capsys, "verify", "kx2.json", "--check", "T9.99")
    assert code == 1


def test_small_prime_is_usage_error(capsys):
    code, _, err = run(capsys, "analyze", "kx3.json", "--prime", "2")
    assert code == 1
    assert "PrimeTooSmall" in err


def test_refusal_is_computation_error_for_atlas(capsys):
    code, out, _ = run(capsys, "atlas", "local2.json", "--format", "json")
    assert code == 2
    payload = json.loads(out)
    assert payload["error"]["type"] == "NotCertifiedGorenstein"
    assert payload["fixture"] == "local2"


def test_analyze_reports_refusal_without_failing(capsys):
    code, out, _ = run(capsys, "analyze", "local2.json", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["gorenstein"]["certified"] is False
    assert payload["atlas"] is None


def test_verify_records_refusal_with_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "local2.json", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["certificates"]) == 18
    assert all(c["verdict"] == "outside_hypothesis"
               for c in payload["certificates"])


# -- report content ---------------------------------------------------------------


def test_verify_single_check_matches_library(capsys):
    code, out, _ = run(capsys, "verify", "kx2.json", "--check", "T2.11",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"tool_version", "prime", "fixture",
                            "certificates"}
    assert payload["prime"] == P
    assert payload["tool_version"]

    a = cli.parse_spec(cli._resolve_spec("kx2.json"))
    expected = vf.run_check("T2.11", a).as_dict()
    assert payload["certificates"] == [expected]
    assert payload["certificates"][0]["verdict"] == "pass"


def test_text_and_json_verdicts_agree(capsys):
    code, json_out, _ = run(capsys, "verify", "kx2.json", "--format", "json")
    assert code == 0
    code, text_out, _ = run(capsys, "verify", "kx2.json", "--format", "text")
    assert code == 0
    text_rows = {line.split()[0]: line.split()[1]
                 for line in text_out.splitlines()[2:]}
    for cert in json.loads(json_out)["certificates"]:
        assert text_rows[cert["check_id"]] == cert["verdict"]


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "kx2.json", "--check", "T2.11",
                       "--format", "json", "--out", str(target))
    assert code == 0
    assert out == ""
    payload = json.loads(target.read_text())
    assert payload["certificates"][0]["check_id"] == "T2.11"


def test_silting_lists_regular_module_over_a2(capsys):
    code, out, _ = run(capsys, "silting", "a2.json", "--format", "json")
    assert code == 0
    rows = json.loads(out)["modules"]
    atlas_sum = rows[-1]
    assert atlas_sum["module"]["dim"] == 3
    assert atlas_sum["silting"] and atlas_sum["tilting"]
    assert all(not r["silting"] for r in rows[:-1])


def test_complexes_over_a2(capsys):
    code, out, _ = run(capsys, "complexes", "a2.json", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["enumerated"] == 9
    silting = payload["silting_complexes"]
    assert len(silting) == 3
    assert all(r["verdict"] == "pass" and r["gldim_b"] <= 2 for r in silting)
    assert {r["b_dim"] for r in silting} == {3}


def test_rigid_over_kx2(capsys):
    code, out, _ = run(capsys, "rigid", "kx2.json", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["inventory_size"] == 2
    assert len(payload["rigid"]) == 2
    assert all(r["presentation"]["g1"]["dim"] == 0 for r in payload["rigid"])


# -- regression pins for the triangular and non-Gorenstein fixtures ---------------


def test_t2_atlas_regression(capsys):
    code, out, _ = run(capsys, "atlas", "t2kx2.json", "--format", "json")
    assert code == 0
    atlas = json.loads(out)["atlas"]
    assert atlas["completeness"] == "heuristic"
    assert atlas["gorenstein_dimension"] == 1
    assert [m["dim"] for m in atlas["members"]] == [1, 2, 2, 3, 4]
    assert [m["projective"] for m in atlas["members"]] == [
        False, True, False, False, True]


def test_t2_verify_regression(capsys):
    code, out, _ = run(capsys, "verify", "t2kx2.json", "--format", "json")
    assert code == 0
    verdicts = {c["check_id"]: c["verdict"]
                for c in json.loads(out)["certificates"]}
    assert verdicts == T2_TABLE
