import json
import pathlib

import jsonschema
import pytest

ainf = pytest.importorskip("ainf")

SCHEMA = json.loads((pathlib.Path(__file__).resolve().parents[2] / "schema" / "input.schema.json").read_text())


def test_catalogue_documents_match_schema():
    for name in ainf.catalogue_names():
        doc = ainf.catalogue(name)["document"]
        jsonschema.validate(doc, SCHEMA)
        back = ainf.parse(json.dumps(doc))
        assert json.loads(back.to_json()) == doc


def test_check_and_certify():
    assert ainf.check("catalogue:exterior_algebra(1)")["summary"] == "valid, weight-complete at W=2"
    heis = ainf.certify("catalogue:heisenberg_minimal")
    assert heis["verdict"] == "non_formal"
    assert heis["witness"]["weight"] == 3
    assert heis["witness"]["verified"]
    ext = ainf.load("catalogue:exterior_algebra(2)")
    assert ext.dim == 4 and ext.minimal
    cert = ainf.certify(ext, max_weight=5)
    assert cert["verdict"] == "formal" and cert["certificate"]["verified"]


def test_transfer_and_hochschild():
    t = ainf.transfer("catalogue:heisenberg_dg", max_weight=4)
    assert t["valid"]
    assert any(e["arity"] == 3 for e in t["minimal_model"]["multiplications"])
    h = ainf.hochschild("catalogue:exterior_algebra(1)", 0, 2, 3)
    assert [d["degree"] for d in h["degrees"]] == [0, 1, 2]


def test_families():
    tor = ainf.family("catalogue:torsion_family", "generic", 3)
    assert tor["verdict"] == "abstain"
    assert ainf.family("catalogue:exterior_algebra(2)", "cy")["summary"].startswith("valid")
    assert not ainf.family("catalogue:torsion_family", "trivialize")["trivialized"]


def test_errors_and_snf():
    with pytest.raises(ainf.SchemaError):
        ainf.parse("{}")
    with pytest.raises(ainf.PreconditionFailed):
        ainf.family("catalogue:heisenberg_dg", "cy")
    assert ainf.smith_diagonal([["2", "4"], ["6", "8"]]) == ["2", "4"]
    assert ainf.smith_diagonal([["h", "0"], ["0", "h^2 - h"]], "polynomials") == ["ħ", "ħ^2 - ħ"]
