from __future__ import annotations

from itertools import combinations

import pytest

from brauerfold.admissible import (
    CLOSURE_FORM,
    ORBIT_FORM,
    AdmissibilityError,
    Admissibility,
    folded_admissibles,
    folded_closure,
)
from brauerfold.roots import root_system

X_CL = "a1,a2,a4,a1+a2+2a3+a4"


def test_example_sets(d4, adm_d4):
    assert not adm_d4.is_admissible(d4.parse_set("a1,a2,a4"))
    assert adm_d4.is_admissible(frozenset())
    assert adm_d4.is_admissible(d4.parse_set(X_CL))
    assert adm_d4.is_admissible(d4.parse_set(X_CL), ORBIT_FORM)
    assert not adm_d4.is_admissible(d4.parse_set("a1,a2,a4"), ORBIT_FORM)


def test_closure_examples(d4, adm_d4):
    assert adm_d4.closure(d4.parse_set("a1,a2,a4")) == d4.parse_set(X_CL)
    assert adm_d4.closure(d4.parse_set("a1,a2")) == d4.parse_set("a1,a2")
    for B in adm_d4.collection():
        assert adm_d4.closure(B) == B


def test_non_orthogonal_input_rejected(d4, adm_d4):
    with pytest.raises(AdmissibilityError):
        adm_d4.closure(d4.parse_set("a1,a3"))
    with pytest.raises(ValueError):
        adm_d4.is_admissible(frozenset(), "other")


def test_closure_is_minimal(adm_d4):
    admissible = set(adm_d4.collection())
    for B in adm_d4.orthogonal_sets():
        C = adm_d4.closure(B)
        for k in range(len(B), len(C)):
            for sub in combinations(sorted(C), k):
                S = frozenset(sub)
                assert not (B <= S and S in admissible)


def test_intersections_are_admissible(adm_d4):
    coll = adm_d4.collection()
    admissible = set(coll)
    for X in coll:
        for Y in coll:
            assert X & Y in admissible


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "A4", "A5", "D4"])
def test_definitions_agree(label):
    adm = Admissibility(root_system(label))
    for B in adm.orthogonal_sets():
        assert adm.is_admissible(B, CLOSURE_FORM) == adm.is_admissible(B, ORBIT_FORM)


def test_d4_orbits(d4, adm_d4):
    orbits = adm_d4.orbits()
    assert len(adm_d4.collection()) == 34
    listed = ["", "a3", "a1,a2", "a1,a4", X_CL]
    where = {next(k for k, o in enumerate(orbits) if d4.parse_set(t) in o) for t in listed}
    assert len(where) == 5
    # the list above misses one orbit: that of {a2, a4}
    assert len(orbits) == 6
    missing = [o for k, o in enumerate(orbits) if k not in where]
    assert len(missing) == 1 and d4.parse_set("a2,a4") in missing[0]


@pytest.mark.parametrize("label", ["A2", "A3", "A4", "D4"])
def test_unique_maximum(label):
    adm = Admissibility(root_system(label))
    for o in adm.orbits():
        P = adm.orbit_poset(o[0])
        assert P.unique_maximum is not None
        assert all(P.heights[k] == 0 for k in P.minimal)


def test_sideways_moves_are_flagged():
    a3 = root_system("A3")
    adm = Admissibility(a3)
    P = adm.orbit_poset(a3.parse_set("a1,a3"))
    assert P.diagnostics == [
        "R1 on {a1+a2, a2+a3}: minimal-height moved roots disagree",
        "R3 on {a1+a2, a2+a3}: minimal-height moved roots disagree",
    ]
    X = a3.parse_set("a1+a2,a2+a3")
    for node in (1, 3):
        assert adm.classify(node, X) == (None, False)
        Y = adm.W.act(adm.W.generator(node), X)
        assert sum(adm.heights[k] for k in Y) == sum(adm.heights[k] for k in X)


def test_a4_hasse(a4, adm_a4):
    P = adm_a4.orbit_poset(a4.parse_set("a1,a3"))
    assert P.unique_maximum == a4.parse_set("a1+a2+a3,a2+a3+a4")
    dot = P.to_dot()
    assert dot.startswith("digraph hasse {") and dot.rstrip().endswith("}")
    top = P.maximal[0]
    assert f"  n{top} ->" not in dot
    assert max(P.heights.values()) == P.heights[top]


def test_folded_census(fold, d4, g2, adm_d4):
    c = folded_admissibles(fold, adm_d4)
    nonempty = c.nonempty_orbits()
    assert sorted(len(o) for o in nonempty) == [3, 3]
    assert sum(len(o) for o in nonempty) == 6
    assert any(g2.parse_set("b1") in o for o in nonempty)
    assert any(g2.parse_set("b0,3b0+2b1") in o for o in nonempty)
    X = d4.parse_set(X_CL)
    assert frozenset(c.projection[k] for k in X) == g2.parse_set("b0,3b0+2b1")
    assert folded_closure(c, g2.parse_set("b0")) == g2.parse_set("b0,3b0+2b1")
