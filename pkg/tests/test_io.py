import json

import pytest

from toricgkm.io import (
    DocumentError,
    pair_from_doc,
    pair_to_doc,
    piecewise_from_doc,
    piecewise_to_doc,
    read_json,
    section_from_doc,
    section_to_doc,
    sequence_from_doc,
    sequence_to_doc,
)
from toricgkm.retraction import find_divisive_sequence


@pytest.mark.parametrize("name", ["interval", "cp2", "prism", "cube"])
def test_pair_round_trip(load, name):
    pair = load(name)
    again = pair_from_doc(json.loads(json.dumps(pair_to_doc(pair))))
    assert again.lam == pair.lam and again.polytope.vertex_facets == pair.polytope.vertex_facets


def test_section_and_piecewise_round_trip(load, fixtures_dir):
    pair = load("cp2")
    doc = read_json(fixtures_dir / "sections" / "cp2_H_thom.json")
    s = section_from_doc(pair, doc)
    assert section_from_doc(pair, section_to_doc(pair, s)) == s
    p = piecewise_from_doc(pair, read_json(fixtures_dir / "piecewise" / "cp2_H_thom.json"))
    assert piecewise_from_doc(pair, piecewise_to_doc(pair, p)).values == p.values


def test_sequence_formats(load, fixtures_dir):
    pair = load("prism")
    cert = find_divisive_sequence(pair).certificate
    steps = sequence_to_doc(cert)
    for doc in (steps, {"steps": steps}, {"certificate": {"steps": steps}}, {"sequences": [{"steps": steps}]}):
        assert sequence_from_doc(pair, doc) == cert
    assert sequence_from_doc(pair, read_json(fixtures_dir / "prism_certificate.json")) == cert


def test_document_errors(load):
    pair = load("cp2")
    with pytest.raises(DocumentError, match="theory"):
        section_from_doc(pair, {"values": {}})
    with pytest.raises(DocumentError, match="unknown vertices"):
        section_from_doc(pair, {"theory": "K", "values": {"v1": [], "v2": [], "v3": [], "v9": []}})
    with pytest.raises(DocumentError, match="exponents"):
        section_from_doc(pair, {"theory": "K", "values": {"v1": [{"exp": [1], "coef": 1}], "v2": [], "v3": []}})
    with pytest.raises(DocumentError, match="negative"):
        section_from_doc(pair, {"theory": "H", "values": {"v1": [{"exp": [-1, 0], "coef": 1}], "v2": [], "v3": []}})
    with pytest.raises(DocumentError):
        sequence_from_doc(pair, [{"face": "Q", "vertex": "v2"}, {"face": "F1", "vertex": "v3"}])
    doc = pair_to_doc(pair)
    doc["lambda"]["F1"] = [1]
    with pytest.raises(DocumentError, match="lambda"):
        pair_from_doc(doc)
