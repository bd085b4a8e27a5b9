from __future__ import annotations

import dataclasses
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brauerfold.presentations import (
    Relation,
    derived_sets_for,
    g2_ebeta_relations,
    g2_lemma_set,
    g2_stabilizer_set,
    parse_word,
    presentation_for,
)
from brauerfold.prover import (
    LR,
    NotFound,
    ProofTrace,
    ReplayError,
    SearchBounds,
    Step,
    certify_lemma_pipeline,
    expand_trace,
    prove_equal,
    replay,
    replay_checked,
)

SMALL = SearchBounds(max_depth=8, max_word_length=8, max_frontier=20_000)


@pytest.fixture(scope="module")
def g2p():
    return presentation_for("G2")


@pytest.fixture(scope="module")
def d4p():
    return presentation_for("D4")


def test_e1e3e1(d4p):
    t = prove_equal("E1 E3 E1", "E1", d4p)
    assert t and t.total_delta == 0 and replay(t, d4p)


def test_g2_derivation(g2p):
    t = prove_equal("e1 e0", "r0 r1 e0", g2p)
    assert t and t.depth == 2 and t.total_delta == 0
    assert replay_checked(t, g2p) == 0


def test_reflexivity(g2p):
    t = prove_equal("e0 r1", "e0 r1", g2p)
    assert t and t.steps == [] and t.total_delta == 0


def test_phi_image_with_delta_squared(d4p):
    t = prove_equal("E1 E2 E4 R3 E1 E2 E4", "E1 E2 E4", d4p)
    assert t and t.total_delta == 2 and replay(t, d4p)
    assert t.depth <= 24


def test_delta_accounting(g2p):
    t = prove_equal("e0 e0 e0", "e0", g2p)
    assert t.total_delta == 6
    assert sum(s.delta_shift for s in t.steps) == 6


def test_corrupted_position_fails_replay(g2p):
    t = prove_equal("e1 e0", "r0 r1 e0", g2p)
    bad = dataclasses.replace(t, steps=[dataclasses.replace(t.steps[0], position=t.steps[0].position + 1)] + t.steps[1:])
    assert not replay(bad, g2p)
    with pytest.raises(ReplayError) as err:
        replay_checked(bad, g2p)
    assert 0 <= err.value.index <= len(bad.steps)


def test_corrupted_delta_fails_replay(g2p):
    t = prove_equal("e0 e0", "e0", g2p)
    assert not replay(dataclasses.replace(t, total_delta=t.total_delta + 1), g2p)
    assert not replay(dataclasses.replace(t, steps=t.steps + [Step(0, "nope", LR, 0)]), g2p)


def test_not_found_is_inconclusive(g2p):
    res = prove_equal("e0", "e1", g2p, bounds=SMALL)
    assert isinstance(res, NotFound) and not res
    assert res.reason in ("depth", "exhausted", "frontier")
    assert res.to_json()["found"] is False


def test_frontier_refusal(d4p):
    res = prove_equal("E1 E2 E3 E4 R1", "E4 E3", d4p, bounds=SearchBounds(24, 12, 500))
    assert not res and res.reason == "frontier"
    again = prove_equal("E1 E2 E3 E4 R1", "E4 E3", d4p, bounds=SearchBounds(24, 12, 500))
    assert again.states_visited == res.states_visited


def test_bounds_validation():
    with pytest.raises(ValueError):
        SearchBounds(max_depth=0)


def test_unknown_symbol(g2p):
    with pytest.raises(ValueError):
        prove_equal("R1", "e0", g2p)


def test_trace_json_round_trip(g2p):
    t = prove_equal("r1 r0 e1 r0 r1 e0", "e0", g2p)
    u = ProofTrace.from_json(json.loads(json.dumps(t.to_json())))
    assert u.steps == t.steps and u.total_delta == t.total_delta == 1
    assert replay(u, g2p)
    lines = t.format({r.tag: r for r in g2p.relations}).splitlines()
    assert len(lines) == t.depth + 1 and lines[-1].endswith("δ^1 e0")


g2_words = st.lists(st.sampled_from(["r0", "r1", "e0", "e1"]), min_size=1, max_size=4).map(tuple)


@settings(max_examples=30, deadline=None)
@given(g2_words, g2_words)
def test_symmetry(a, b):
    p = presentation_for("G2")
    fwd = prove_equal(a, b, p, bounds=SMALL)
    bwd = prove_equal(b, a, p, bounds=SMALL)
    assert bool(fwd) == bool(bwd)
    if fwd:
        assert bwd.total_delta == -fwd.total_delta
        assert replay(fwd, p) and replay(bwd, p) and replay(fwd.reversed(), p)


@pytest.mark.parametrize("label", ["G2", "C2"])
def test_op_relations_provable(label):
    p = presentation_for(label)
    for rel in p.relations:
        o = rel.op()
        t = prove_equal(o.lhs, o.rhs, p)
        assert t and t.total_delta == o.delta_shift and replay(t, p)


@pytest.mark.parametrize("label", ["D4", "C2", "B2", "A4"])
def test_pipelines(label):
    rep = certify_lemma_pipeline(presentation_for(label), [derived_sets_for(label)])
    assert rep.ok and rep.results
    assert all(r.result.depth <= 24 for r in rep.results)


def test_g2_pipelines():
    p = presentation_for("G2")
    rep = certify_lemma_pipeline(p, [g2_lemma_set(), g2_stabilizer_set(), g2_ebeta_relations()])
    assert rep.ok, [r.relation.tag for r in rep.failures]
    assert rep.to_json()["ok"] is True


def test_expand_trace_uses_defining_relations_only(g2p):
    rep = certify_lemma_pipeline(g2p, [g2_lemma_set()])
    t = prove_equal("r0 r1 e0 e1 e0", "r0 r1 e0", g2p, lemmas=g2_lemma_set())
    assert t and t.total_delta == 2
    full = expand_trace(t, rep.proofs)
    assert replay(full, g2p)
    assert {s.tag for s in full.steps} <= {r.tag for r in g2p.relations}


def test_misprinted_table_entry_is_not_derived(g2p):
    # r0 e1 r0 e0 = r0 r1 e0 is false; the search must not find it
    wrong = Relation(parse_word("r0 e1 r0 e0"), parse_word("r0 r1 e0"), 0, "wrong")
    res = prove_equal(wrong.lhs, wrong.rhs, g2p, bounds=SearchBounds(10, 10, 50_000))
    assert not res
    right = prove_equal("r0 e1 r0 e0", "r1 e0", g2p)
    assert right and right.total_delta == 0
