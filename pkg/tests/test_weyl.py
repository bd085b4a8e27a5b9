from __future__ import annotations

import pytest

from brauerfold.phiver import phi_group
from brauerfold.roots import root_system
from brauerfold.weyl import ResourceError, WeylGroup, act_on_rootset, compose, enumerate_group


@pytest.mark.parametrize("label,order", [("G2", 12), ("D4", 192), ("A4", 120), ("A3", 24)])
def test_group_orders(label, order):
    assert len(enumerate_group(root_system(label))) == order


def test_resource_limit():
    with pytest.raises(ResourceError):
        enumerate_group(root_system("D4"), max_size=100)


def test_worked_example_is_fixed(a4):
    W = WeylGroup(a4)
    B = a4.parse_set("a1+a2,a4")
    assert act_on_rootset(W.from_word((4, 1, 2, 1)), B) == B
    assert W.act(W.identity, B) == B


def test_reflection_on_g2(g2, w_g2):
    assert w_g2.act(w_g2.generator(1), g2.parse_set("b0")) == g2.parse_set("b0+b1")


def test_stabilizer_and_cosets(g2, w_g2):
    N0 = w_g2.stabilizer(g2.parse_set("b0"))
    assert len(N0) == 4
    assert [g.word for g in N0.generators] == [(0,), (1, 0, 1, 0, 1)]
    assert [g.word for g in w_g2.coset_reps(N0)] == [(), (1,), (0, 1)]
    assert len(w_g2.stabilizer(frozenset())) == 12


def test_orbit_stabilizer(d4):
    W = WeylGroup(d4)
    for text in ("", "a1", "a1,a2", "a2,a4", "a1,a2,a4,a1+a2+2a3+a4", "a3"):
        B = d4.parse_set(text)
        assert len(W.orbit(B)) * len(W.stabilizer(B)) == len(W.elements)


def test_image_table_matches_word(d4):
    W = WeylGroup(d4)
    for w in W.elements[::7]:
        img = W.identity.image
        for g in w.word:
            img = compose(img, W.gen_images[g])
        assert img == w.image
        assert W.from_word(w.word) == w


def test_phi_group_has_order_12(d4):
    W = WeylGroup(d4)
    H = phi_group(W)
    assert len(H) == 12
    assert W.from_word((1, 2, 4)) == W.from_word((4, 2, 1)) == W.from_word((2, 1, 4))
