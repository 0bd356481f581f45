import json
from importlib import resources

import jsonschema
import pytest

from conftest import U
from gldist.catalog import THETA, catalog, evaluate, verify
from gldist.cli import run

SCHEMA = json.loads(resources.files("gldist.schemas").joinpath("cli-output.schema.json").read_text())


def validate(kind, doc):
    schema = {"$ref": f"#/$defs/{kind}", "$defs": SCHEMA["$defs"]}
    jsonschema.Draft202012Validator(schema).validate(doc)


@pytest.fixture
def ufile(tmp_path):
    p = tmp_path / "u.json"
    p.write_text(json.dumps(U.to_json()))
    return str(p)


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_dual(capsys, ufile):
    code, doc, _ = call(capsys, "dual", "-u", ufile, "[0,2]@one")
    assert code == 0
    assert doc == {"input": "[0,2]@one", "dual": "[2]@one+[1]@one+[0]@one"}
    validate("dual", doc)


def test_dual_trace(capsys, ufile):
    code, doc, _ = call(capsys, "dual", "-u", ufile, "[0,1]@one+[1,2]@one", "--trace")
    assert code == 0 and len(doc["trace"]["rounds"]) == 2
    validate("dual", doc)


def test_bc_class(capsys, ufile):
    code, doc, _ = call(capsys, "bc-class", "-u", ufile, "[-1/2,1/2]@one")
    assert code == 0 and (doc["tag"], doc["n"]) == ("StableOnly", 2)
    validate("bc-class", doc)


def test_ladder(capsys, ufile):
    code, doc, _ = call(capsys, "ladder-dist", "-u", ufile, "[-1,0]@sigma+[0,1]@sigma")
    assert code == 0
    assert doc == {"tag": "OnlyExponent", "k": 1, "t": 2, "gamma": 0, "exponent": 1}
    validate("ladder-dist", doc)


def test_induced(capsys, ufile):
    rep = "([-1/2]@one+[1/2]@one)*([-1/2,1/2]@one)"
    for twist in ("0", "1"):
        code, doc, _ = call(capsys, "induced-dist", "-u", ufile, rep, "--twist", twist)
        assert code == 0 and doc["distinguished"] is False
        validate("induced-dist", doc)
    code, doc, _ = call(capsys, "induced-dist", "-u", ufile, "([1,2]@pi3)*([-2,-1]@pi3b)")
    assert doc == {"distinguished": True, "witness": [1, 0]}
    validate("induced-dist", doc)


@pytest.mark.parametrize("expr", [THETA, "([0]@one)*([0]@rho2!chi)", "empty", "[0] + [1] @@one"])
def test_parse_is_stable(capsys, expr):
    code, first, _ = call(capsys, "parse", expr)
    assert code == 0
    validate("parse", first)
    code, second, _ = call(capsys, "parse", first["canonical"])
    assert second == first


def test_catalog(capsys):
    code, doc, err = call(capsys, "catalog", "verify")
    assert code == 0 and doc["all_pass"]
    assert [e["id"] for e in doc["entries"]] == [e.id for e in catalog()]
    assert "PASS" in err
    validate("catalog", doc)


def test_check(capsys):
    code, doc, err = call(capsys, "check", "--suite", "involution", "--max-size", "3",
                          "--range", "-1..1", "--lines", "one", "--no-timing")
    assert code == 0 and doc["failure_count"] == 0 and doc["cases"] > 0
    assert "wall_time" not in doc
    validate("check", doc)
    _, doc2, _ = call(capsys, "check", "--suite", "involution", "--max-size", "3",
                      "--range=-1..1", "--lines", "one", "--no-timing", "--jobs", "2")
    assert doc2 == doc


def test_check_with_universe(capsys, ufile):
    code, doc, _ = call(capsys, "check", "-u", ufile, "--suite", "rf-cases", "--max-size", "3",
                        "--range", "-3/2..3/2", "--lines", "one,sigma")
    assert code == 0
    validate("check", doc)


def test_check_failure_exit(capsys, monkeypatch):
    from bisect import bisect_right

    from gldist import involution
    monkeypatch.setattr(involution, "_next_link", lambda bucket, b: bisect_right(bucket, b) - 1)
    involution.clear_memo()
    try:
        code, doc, _ = call(capsys, "check", "--suite", "involution", "--max-size", "3",
                            "--range", "-1..1", "--lines", "one")
    finally:
        monkeypatch.undo()
        involution.clear_memo()
    assert code == 4 and doc["failure_count"] > 0
    validate("check", doc)


@pytest.mark.parametrize("argv, code", [
    ([], 1),
    (["dual", "[0]@one"], 1),
    (["frobnicate"], 1),
    (["check", "--suite", "involution", "--max-size", "2", "--range", "3"], 1),
    (["check", "--suite", "nope", "--max-size", "2", "--range", "0..1"], 1),
    (["parse", "[0,"], 2),
    (["parse", "[1/2,-1/2]@one"], 2),
    (["catalog", "list"], 1),
])
def test_exit_codes(capsys, argv, code):
    got, doc, err = call(capsys, *argv)
    assert got == code and doc is None and err


def test_validation_exit_codes(capsys, ufile, tmp_path):
    assert call(capsys, "dual", "-u", ufile, "[0]@nope")[0] == 2
    assert call(capsys, "dual", "-u", str(tmp_path / "missing.json"), "[0]@one")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"lines": [{"id": "a", "deg": 1, "conj_dual": "self"}]}')
    code, _, err = call(capsys, "dual", "-u", str(bad), "[0]@a")
    assert code == 2 and "eta0" in err
    assert call(capsys, "check", "--suite", "parity", "--max-size", "1", "--range", "0..1",
                "--lines", "nope")[0] == 2


def test_engine_exit_codes(capsys, ufile):
    assert call(capsys, "ladder-dist", "-u", ufile, "[0]@one+[0]@rho2")[0] == 3
    assert call(capsys, "ladder-dist", "-u", ufile, THETA.replace("@sigma", "@s"))[0] == 3
    assert call(capsys, "induced-dist", "-u", ufile, "([0,1]@one)*([1,2]@one)")[0] == 3
    assert call(capsys, "bc-class", "-u", ufile, "empty")[0] == 3


class TestCatalog:
    def test_four_entries(self):
        assert len(catalog()) == 4

    def test_all_verify(self):
        assert all(row["pass"] for row in verify())

    def test_e3_and_e4_details(self):
        e1, e2, e3, e4 = catalog()
        a3 = evaluate(e3)
        assert a3["csd"] and a3["distinguished"] == {"H": False, "H,omega": False}
        a4 = evaluate(e4)
        assert a4["csd"] and not a4["ladder"] and a4["single_image"]

    def test_tampered_entry_fails(self):
        from dataclasses import replace
        e = catalog()[1]
        bad = replace(e, expected={**e.expected, "verdict": "OnlyExponent(0)"})
        assert not verify([bad])[0]["pass"]
