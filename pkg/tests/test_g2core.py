from __future__ import annotations

import csv
import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brauerfold.g2core import (
    BASIS_SIZE,
    I2_6_RANK,
    G2NormalForm,
    build_table,
    build_table_and_verify,
    ideal_chain,
    relation_holds,
)
from brauerfold.presentations import Relation, g2_lemma_set, parse_word, presentation_for

words = st.lists(st.sampled_from(["r0", "r1", "e0", "e1"]), max_size=8).map(tuple)


def nf(M, text):
    exp, x = M.normalize(text)
    return exp, str(x)


def test_normalize_examples(monoid):
    assert nf(monoid, "e0 e0") == (3, "e0")
    assert nf(monoid, "e1 e1") == (1, "e1")
    assert nf(monoid, "r1 r0 r1 r0 r1 e0") == (0, "e0")
    assert nf(monoid, "e0 e1 e0") == (2, "e0")
    assert nf(monoid, "r1 r0 e1 r0 r1 e0") == (1, "e0")
    exp, x = monoid.normalize("r0 e1")
    assert exp == 0 and x == G2NormalForm(monoid.W.generator(0), 1, monoid.one, monoid.one)


def test_multiply_examples(monoid):
    e0, e1 = monoid.generator("e0"), monoid.generator("e1")
    assert monoid.multiply(e1, e0) == monoid.normalize("r0 r1 e0")
    x = monoid.normalize("r1 e0 r1")[1]
    # the product carries delta^2; a single delta would break associativity and c7.0.1.14
    assert monoid.multiply(x, e0) == (2, monoid.normalize("r1 e0")[1])
    one = G2NormalForm(monoid.one)
    for b in monoid.basis:
        assert monoid.multiply(one, b) == (0, b)


def test_e_beta(monoid, g2):
    b0 = g2.simple_index(0)
    assert monoid.e_beta(b0).form == monoid.generator("e0")
    r1b0 = next(iter(monoid.W.act(monoid.W.generator(1), {b0})))
    eb = monoid.e_beta(r1b0)
    assert (eb.delta_exp, eb.form) == monoid.normalize("r1 e0 r1")
    for x in monoid.N[0]:
        word = tuple(f"r{s}" for s in x.word) + ("e0",) + tuple(f"r{s}" for s in reversed(x.word))
        assert monoid.normalize(word) == (0, monoid.generator("e0"))


def test_verification_suite(monoid):
    table, rep = build_table_and_verify(monoid)
    assert rep.ok, rep.failures
    assert rep.basis_size == BASIS_SIZE == 39 == 12 + 3 ** 2 * 1 + 3 ** 2 * 2
    assert rep.details["associativity"] == {"triples": 59319, "failures": 0}
    assert ideal_chain(monoid, table) == (12, 18, 9)
    assert I2_6_RANK == 66


def test_basis_counts(monoid):
    groups = [b for b in monoid.basis if b.is_group]
    assert len(groups) == 12
    assert sum(b.i == 0 for b in monoid.basis) == 9
    assert sum(b.i == 1 for b in monoid.basis) == 18


def test_relations_hold(monoid):
    for rel in list(presentation_for("G2").relations) + list(g2_lemma_set().items):
        ok, lhs, rhs = relation_holds(monoid, rel)
        assert ok, (rel.tag, lhs, rhs)


def test_op_involution(monoid):
    for b in monoid.basis:
        t, ob = monoid.op(b)
        assert monoid.op(ob) == (-t, b)
    for s in ("r0", "r1", "e0", "e1"):
        assert monoid.op(monoid.generator(s)) == (0, monoid.generator(s))


def test_e_beta_squares(monoid, g2):
    for k in range(len(g2.positive_roots)):
        eb = monoid.e_beta(k)
        kappa = 3 if g2.inner(eb.beta.coords, eb.beta.coords) < 1 else 1
        assert monoid.multiply(eb.form, eb.form) == (kappa, eb.form)


@settings(max_examples=150, deadline=None)
@given(words, words)
def test_two_path_consistency(monoid, u, v):
    a, x = monoid.normalize(u)
    b, y = monoid.normalize(v)
    t, z = monoid.multiply(x, y)
    assert monoid.normalize(u + v) == (a + b + t, z)


def test_table_exports(monoid):
    table, _ = build_table(monoid)
    rows = list(csv.DictReader(io.StringIO(table.to_csv())))
    assert len(rows) == 39 * 39
    assert list(rows[0]) == ["i", "j", "delta_exp", "k"]
    d = table.to_json()
    assert len(d["basis"]) == 39 and d["products"][0] == {"i": 0, "j": 0, "delta_exp": 0, "k": 0}


def test_misprinted_values_rejected(monoid):
    printed = [
        Relation(parse_word("r1 e0 r1 e0"), parse_word("r1 e0"), 1, "printed"),
        Relation(parse_word("r0 r1 e0 r1 r0 e0"), parse_word("r0 r1 e0"), 1, "printed"),
        Relation(parse_word("r0 e1 r0 e0"), parse_word("r0 r1 e0"), 0, "printed"),
    ]
    for rel in printed:
        assert not relation_holds(monoid, rel)[0]


def test_bad_generator(monoid):
    with pytest.raises(ValueError):
        monoid.normalize("e2")
