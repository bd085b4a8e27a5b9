from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from brauerfold.presentations import (
    GenSymbol,
    Presentation,
    WordError,
    derived_sets_for,
    g2_ebeta_relations,
    op,
    parse_word,
    parse_word_with_delta,
    presentation_for,
    word_str,
)
from brauerfold.roots import ConfigurationError


def test_parse_word():
    assert parse_word("E1 E2E4 R3") == ("E1", "E2", "E4", "R3")
    assert parse_word("1") == parse_word("") == ()
    assert parse_word_with_delta("delta e0 δ r1 delta^-1") == (("e0", "r1"), 1)
    for bad in ("E1 X2", "E", "delta^2"):
        with pytest.raises(WordError):
            parse_word(bad)


def test_symbols():
    g = GenSymbol.parse("e0")
    assert (g.kind, g.node, g.lower) == ("E", 0, True) and str(g) == "e0"
    assert str(GenSymbol.parse("δ^-1")) == "delta^-1"


@given(st.lists(st.sampled_from(["R1", "R2", "E3", "E4"]), max_size=8))
def test_word_round_trip(w):
    w = tuple(w)
    assert parse_word(word_str(w)) == w
    assert op(op(w)) == w


def test_g2():
    p = presentation_for("G2")
    assert p.alphabet == ("r0", "r1", "e0", "e1")
    assert p.kappa == {0: 3, 1: 1}
    assert any(r.lhs == parse_word("r1 r0") * 6 and r.rhs == () for r in p.relations)
    assert p.relation("0.1.5[i=0]").delta_shift == 3
    assert p.relation("0.1.5[i=1]").delta_shift == 1
    assert len(p.relations) == 15
    assert p.relation("c7.0.1.14[i=0,j=1]").delta_shift == 2


@pytest.mark.parametrize("label,count", [("D4", 40), ("A4", 40), ("C2", 16), ("B2", 16), ("G2", 15)])
def test_relation_counts(label, count):
    assert len(presentation_for(label).relations) == count


def test_d4_both_orientations():
    p = presentation_for("D4")
    a = p.relation("1.1.9[i=1,j=3]")
    b = p.relation("1.1.9[i=3,j=1]")
    assert a.lhs == ("R3", "R1", "E3") and a.rhs == ("E1", "E3")
    assert b.lhs == ("R1", "R3", "E1") and b.rhs == ("E3", "E1")


def test_double_bond_arrow():
    for label, short in (("B2", 0), ("C2", 1)):
        (bond,) = presentation_for(label).bonds
        assert bond.multiplicity == 2 and bond.arrow == short
    assert presentation_for("G2").bonds[0].arrow == 0
    assert presentation_for("F4").bond(2, 3).multiplicity == 2


def test_unsupported():
    for label in ("E6", "H3", "D2"):
        with pytest.raises(ConfigurationError):
            presentation_for(label)


def test_derived_sets():
    d4 = derived_sets_for("D4")
    assert any(r.lhs == ("E1", "E3", "E1") and r.rhs == ("E1",) for r in d4.items)
    first = d4.item("3.1.1[i=1,j=3]")
    assert first.lhs == ("E1", "R3", "R1") and first.rhs == ("E1", "E3")
    c2 = derived_sets_for("C2")
    assert c2.item("4.1.1[i=0,j=1]").rhs == ("e0", "r1", "e0")
    g2 = derived_sets_for("G2")
    assert g2.item("c7.0.1.11").delta_shift == 2
    assert g2.item("c7.0.1.11").lhs == ("e0", "e1", "e0")
    assert len(g2_ebeta_relations()) == 12


def test_json_round_trip():
    for label in ("D4", "G2", "C2"):
        p = presentation_for(label)
        q = Presentation.from_json(json.loads(p.dumps()))
        assert q == p
        d = p.to_json()
        assert set(d) == {"name", "nodes", "bonds", "kappa", "relations"}
        assert set(d["relations"][0]) == {"lhs", "rhs", "delta_shift", "tag"}


def test_check_word():
    p = presentation_for("G2")
    assert p.check_word(("r0", "e1")) == ("r0", "e1")
    with pytest.raises(WordError):
        p.check_word(("R1",))
