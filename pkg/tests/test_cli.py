import json
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padicext.cli import TABLE_GOLDEN, ParseError, classify_document, main, parse_poly, table_rows
from padicext.polyring import Poly
from padicext.wild3 import CANONICAL

SCHEMA = json.loads(resources.files("padicext").joinpath("schema/result.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def docs(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


@pytest.mark.parametrize(
    "text,coeffs",
    [
        ("x^3 + 3*x + 3", (3, 3, 0, 1)),
        ("3,3,0,1", (3, 3, 0, 1)),
        ("x^3 - 3*x^2 + 21", (21, 0, -3, 1)),
        ("(x - 1)^2", (1, -2, 1)),
        ("x^2 - 5/4", (Fraction(-5, 4), 0, 1)),
        ("-x^3 + 2x", (0, 2, 0, -1)),
        ("3(x + 1)x", (0, 3, 3)),
    ],
)
def test_parse_examples(text, coeffs):
    assert parse_poly(text).poly == Poly(coeffs)


@pytest.mark.parametrize("text", ["x^", "x^3 +* 2", "x/x", "y^2", "x^(-1)", "5", "1,a,2"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poly(text)


@pytest.mark.parametrize("poly", list(CANONICAL.values()))
def test_canonical_round_trip(poly):
    assert parse_poly(poly.to_expr()).poly == poly


@settings(max_examples=1000)
@given(st.lists(st.fractions(max_denominator=50), min_size=2, max_size=7).filter(lambda c: c[-1] != 0))
def test_printed_polynomials_round_trip(coeffs):
    poly = Poly(coeffs)
    assert parse_poly(poly.to_expr()).poly == poly


def test_classify_wild_json(capsys):
    code, out = run(capsys, "classify", "--p", "3", "--poly", "x^3+9*x+3", "--json", "--oracle-check")
    (doc,) = docs(out)
    assert code == 0
    assert doc["class_id"] == "sqrtm3-tau-4" and doc["canonical"] == "x^3 + 12"
    assert doc["oracle_agrees"] is True
    jsonschema.validate(doc, SCHEMA)


def test_classify_tame_text(capsys):
    code, out = run(capsys, "classify", "--p", "7", "--poly", "x^3-21", "--certificate")
    assert code == 0
    assert "ramified-r-1" in out and "x^3 - 21" in out


@pytest.mark.parametrize(
    "argv,code,kind",
    [
        (("--p", "3", "--poly", "x^3-1"), 2, "rejected-input"),
        (("--p", "5", "--poly", "x^5-5"), 3, "unsupported"),
        (("--p", "3", "--poly", "x^4-3"), 3, "unsupported"),
    ],
)
def test_classify_error_documents(capsys, argv, code, kind):
    got, out = run(capsys, "classify", *argv, "--json")
    (doc,) = docs(out)
    assert got == code and doc["error"]["kind"] == kind
    jsonschema.validate(doc, SCHEMA)


def test_rejected_input_carries_the_root(capsys):
    _, out = run(capsys, "classify", "--p", "3", "--poly", "x^3-1", "--json")
    root = Fraction(docs(out)[0]["error"]["witness"]["root"])
    assert (root - 1).numerator % 3 ** 5 == 0


def test_parse_error_exit_code(capsys):
    assert main(["classify", "--p", "3", "--poly", "x^^3"]) == 1
    assert "position 2" in capsys.readouterr().out
    code, out = run(capsys, "classify", "--p", "3", "--poly", "x^^3", "--json")
    (doc,) = docs(out)
    assert code == 1 and doc["error"]["kind"] == "parse-error"
    jsonschema.validate(doc, SCHEMA)


def test_batch_file_keeps_order(tmp_path, capsys):
    path = tmp_path / "batch.txt"
    path.write_text("# header\nx^3 + 3\n\nx^3 - x + 1\nx^3 - 1\n  # indented comment\nx^3 + 21\n")
    code, out = run(capsys, "classify", "--p", "3", "--file", str(path), "--json", "--jobs", "2")
    got = [d.get("class_id", d.get("error", {}).get("kind")) for d in docs(out)]
    assert got == ["sqrtm3-tau-1", "unramified", "rejected-input", "sqrtm3-tau-7"]
    assert code == 2
    for d in docs(out):
        jsonschema.validate(d, SCHEMA)


@pytest.mark.parametrize("class_id", list(CANONICAL))
def test_documents_validate(class_id):
    doc = classify_document(parse_poly(CANONICAL[class_id].to_expr()), 3)
    jsonschema.validate(doc, SCHEMA)
    assert all(isinstance(v, str) for v in doc["invariants"].values() if v is not None)


@pytest.mark.parametrize("p,poly", [(7, "x^3 - 2"), (7, "x^3 - 7"), (5, "x^2 - 10"), (2, "x^3 - 2")])
def test_tame_documents_validate(p, poly):
    jsonschema.validate(classify_document(parse_poly(poly), p), SCHEMA)


def test_table_golden(capsys):
    code, out = run(capsys, "table", "--json")
    assert code == 0 and out.strip() == TABLE_GOLDEN
    code, out = run(capsys, "table")
    assert code == 0 and "x^3 - 3*x^2 + 21" in out
    assert len(table_rows()) == 9


def test_verify_small(capsys):
    code, out = run(capsys, "verify", "--p", "7", "--count", "60", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["agreement"] == "60" and len(report["classes"]) == 4


def test_gen_corpus_is_deterministic(tmp_path, capsys):
    out_a, out_b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["gen-corpus", "--p", "5", "--count", "15", "--out", str(out_a)]) == 0
    assert main(["gen-corpus", "--p", "5", "--count", "15", "--out", str(out_b)]) == 0
    assert out_a.read_text() == out_b.read_text()
    assert len(out_a.read_text().splitlines()) == 15


def test_precision_env_var(monkeypatch, capsys):
    monkeypatch.setenv("PADICEXT_PRECISION", "80")
    code, out = run(capsys, "classify", "--p", "3", "--poly", "x^3+3", "--json", "--oracle-check")
    assert code == 0 and docs(out)[0]["oracle_agrees"] is True
