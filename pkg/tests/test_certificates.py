import copy
import json

import pytest

from presheaf_workbench import (ConstructionError, FibrationWitness, boundary, build_gtc,
                                constant_map, identity, interval_vertex,
                                left_fibration_counterexample, pullback_gtc_retract)
from presheaf_workbench import certificates as cert_mod
from presheaf_workbench.certificates import (CertificateBuilder, emit, gtc_document,
                                             load_gtc, parse, reverify)
from presheaf_workbench.scenarios import Workspace, bundled


@pytest.fixture(scope="module")
def retract_doc():
    ws = Workspace(bundled("prop7_reflexive_graphs"))
    gtc = build_gtc(ws.ctx, ws.map("c"), ws.map("i"))
    cert = pullback_gtc_retract(gtc, FibrationWitness(ws.map("p")))
    return cert_mod.retract_certificate_document(cert)


@pytest.fixture(scope="module")
def counter_doc():
    _, details = left_fibration_counterexample()
    return cert_mod.counterexample_document(details)


@pytest.fixture
def gtc_doc(ctx1):
    c = boundary(ctx1.base, "[1]")
    return gtc_document(build_gtc(ctx1, c, constant_map(c.target, interval_vertex(ctx1, 0))))


def test_documents_reverify(retract_doc, counter_doc, gtc_doc):
    for doc in (retract_doc, counter_doc, gtc_doc):
        report = reverify(parse(emit(doc)))
        assert report.ok, report.render()
    kinds = {c["kind"] for c in retract_doc["claims"]}
    assert {"equation", "iso", "pullback"} <= kinds
    assert len(retract_doc["claims"]) >= 40
    assert {c["kind"] for c in counter_doc["claims"]} == {"pullback", "empty", "no_lift"}


def test_emit_is_canonical(retract_doc):
    text = emit(retract_doc)
    assert text.endswith("\n")
    assert parse(text) == json.loads(text)
    assert emit(parse(text)) == text


def test_wrong_schema(counter_doc):
    doc = dict(counter_doc, schema="something/else")
    with pytest.raises(ValueError):
        parse(json.dumps(doc))
    assert not reverify(doc).ok


def test_tampered_component_is_detected(retract_doc):
    doc = copy.deepcopy(retract_doc)
    name, entry = next((n, m) for n, m in doc["maps"].items()
                       if any(len(set(v)) > 1 for v in m["components"].values()))
    ob = next(o for o, v in entry["components"].items() if len(set(v)) > 1)
    values = entry["components"][ob]
    values[0] = next(v for v in values if v != values[0])
    report = reverify(doc)
    assert not report.ok
    assert report.failures


def test_false_claims_are_detected(counter_doc):
    doc = copy.deepcopy(counter_doc)
    for claim in doc["claims"]:
        if claim["kind"] == "empty":
            claim["presheaf"] = "I"
    report = reverify(doc)
    assert [name for name, _ in report.failures] == ["empty: pullback has empty domain"]

    doc = copy.deepcopy(counter_doc)
    doc["claims"] = [{"kind": "pullback", "name": "bogus", "square": ["v0", "v0", "v1", "v1"]}]
    assert not reverify(doc).ok


def test_malformed_claim_fails_cleanly(counter_doc):
    doc = copy.deepcopy(counter_doc)
    doc["claims"].append({"kind": "equation", "name": "dangling",
                          "lhs": ["missing"], "rhs": ["v0"]})
    report = reverify(doc)
    assert not report.ok
    assert "malformed" in report.failures[-1][1]


def test_gtc_round_trip(ctx1, gtc_doc):
    spec = load_gtc(parse(emit(gtc_doc)))
    assert spec.D.sizes == {"[0]": 4, "[1]": 7}
    assert load_gtc(gtc_doc, ctx1).u == spec.u


def test_gtc_tampering_is_caught(gtc_doc):
    doc = copy.deepcopy(gtc_doc)
    comps = doc["maps"]["i"]["components"]
    comps["[0]"] = [1 - v for v in comps["[0]"]]
    comps["[1]"] = [{0: 2, 2: 0}.get(v, v) for v in comps["[1]"]]
    with pytest.raises(ConstructionError):
        load_gtc(doc)


def test_builder_rejects_name_reuse(ctx1):
    b = CertificateBuilder("test", ctx1.base)
    b.map("m", identity(ctx1.interval))
    b.map("m", identity(ctx1.interval))
    with pytest.raises(ValueError):
        b.map("m", interval_vertex(ctx1, 0))
