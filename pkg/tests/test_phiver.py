from __future__ import annotations

import json

import pytest

from brauerfold.phiver import (
    PhiMap,
    block_lemmas,
    g2_relations_for_phi,
    phi_relation,
    phi_word,
    sigma_census,
    verify_phi_relations,
)
from brauerfold.presentations import parse_word, presentation_for
from brauerfold.prover import prove_equal, replay


def test_images():
    assert phi_word(("e0",)) == ("E1", "E2", "E4")
    assert phi_word(("r1",)) == ("R3",)
    assert phi_word(("delta", "e1", "delta^-1")) == ("delta", "E3", "delta^-1")
    assert PhiMap().commuting_factors()
    assert not PhiMap({"r0": ("R1", "R3")}).commuting_factors()


def test_relation_images():
    rels = g2_relations_for_phi()
    assert len(rels) == 19
    img = phi_relation(presentation_for("G2").relation("c7.0.1.14[i=0,j=1]"))
    assert img.lhs == phi_word(parse_word("e0 r1 e0")) and img.delta_shift == 2


def test_collapse_identity_direct():
    d4 = presentation_for("D4")
    lhs = phi_word(parse_word("r1 r0 e1 r0 r1 e0"))
    t = prove_equal(lhs, phi_word(("e0",)), d4)
    assert t and t.total_delta == 1 and replay(t, d4)


@pytest.fixture(scope="module")
def report():
    return verify_phi_relations()


def test_full_verification(report):
    assert report.ok
    assert report.admissible_sets == 34
    by_tag = {s.relation.tag: s for s in report.relations}
    assert by_tag["c7.0.1.14[i=0,j=1]"].prover["delta"] == 2
    assert by_tag["c7.0.1.15"].prover["delta"] == 1
    assert by_tag["0.1.5[i=0]"].prover["delta"] == 3
    assert all(s.prover["depth"] <= 24 for s in report.relations)
    assert all(s.action_ok for s in report.relations)


def test_block_lemmas_certified(report):
    tags = {r.relation.tag: r for r in report.lemma_pipeline.results}
    for rel in block_lemmas().items:
        assert tags[rel.tag].ok
    assert tags["block.braid6"].result.depth > 24


def test_report_json(report):
    d = json.loads(report.dumps())
    assert d["ok"] and len(d["relations"]) == 19
    assert {"tag", "relation", "image", "expected_delta", "ok", "prover", "action_ok"} <= set(d["relations"][0])


def test_action_only():
    rep = verify_phi_relations(("action",))
    assert rep.ok and rep.lemma_pipeline is None
    with pytest.raises(ValueError):
        verify_phi_relations(("guess",))


def test_census(d4, fold):
    c = sigma_census(fold)
    counts = {r["representative"]: r["sigma_invariant"] for r in c.orbit_counts}
    assert counts["{a1, a2}"] == 0 and counts["{a1, a4}"] == 0
    assert sum(counts.values()) == 7
    x_cl = d4.format_set(d4.parse_set("a1,a2,a4,a1+a2+2a3+a4"))
    orbit = next(o for o in c.phi_orbits if x_cl in o)
    assert len(orbit) == 3
    row = next(r for r in c.orbit_counts if r["size"] == 3)
    assert x_cl in row["invariant_members"]
    assert c.projection_onto_folded
    assert sorted(len(o) for o in c.folded_orbits) == [1, 3, 3]
