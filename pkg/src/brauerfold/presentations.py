"""Relation tables for Brauer monoids of simply laced and BCFG type.

Words are tuples of symbol strings: ``R1``/``E1`` for simply laced diagrams and ``r0``/``e0``
for BCFG diagrams. The loop parameter is never a letter; each relation ``lhs = delta^k rhs``
records ``k`` as ``delta_shift``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .roots import ConfigurationError, build_root_system

Word = Tuple[str, ...]

_SYMBOL = re.compile(r"\s*(?:([RrEe])(\d+)|(delta|δ)(?:\^?(-?\d+))?)")


class WordError(ValueError):
    pass


class GenSymbol(NamedTuple):
    kind: str  # "R", "E", "delta", "delta_inv"
    node: Optional[int]
    lower: bool = False

    @classmethod
    def parse(cls, text: str) -> "GenSymbol":
        m = _SYMBOL.fullmatch(text.strip())
        if not m:
            raise WordError(f"bad symbol {text!r}")
        if m.group(3):
            p = int(m.group(4) or 1)
            if p not in (1, -1):
                raise WordError("write delta powers as repeated symbols")
            return cls("delta" if p == 1 else "delta_inv", None)
        return cls(m.group(1).upper(), int(m.group(2)), m.group(1).islower())

    def __str__(self) -> str:
        if self.kind == "delta":
            return "delta"
        if self.kind == "delta_inv":
            return "delta^-1"
        s = f"{self.kind}{self.node}"
        return s.lower() if self.lower else s


def parse_word(text: str) -> Word:
    """``"E1 E2E4 R3"`` -> ``("E1", "E2", "E4", "R3")``; ``"1"`` and ``""`` are empty."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    out = []
    pos = 0
    for m in _SYMBOL.finditer(text):
        if m.start() != pos:
            break
        pos = m.end()
        out.append(str(GenSymbol.parse(m.group(0))))
    if text[pos:].strip():
        raise WordError(f"cannot parse word {text!r}")
    return tuple(out)


def parse_word_with_delta(text: str) -> Tuple[Word, int]:
    """Split out delta symbols: returns (delta-free word, exponent)."""
    exp = 0
    out = []
    for s in parse_word(text):
        if s == "delta":
            exp += 1
        elif s == "delta^-1":
            exp -= 1
        else:
            out.append(s)
    return tuple(out), exp


def word_str(w: Sequence[str]) -> str:
    return " ".join(w) if w else "1"


def op(w: Sequence[str]) -> Word:
    """Anti-involution: reverse the word."""
    return tuple(reversed(w))


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word
    delta_shift: int = 0
    tag: str = ""

    def to_json(self) -> dict:
        return {"lhs": word_str(self.lhs), "rhs": word_str(self.rhs), "delta_shift": self.delta_shift, "tag": self.tag}

    @classmethod
    def from_json(cls, d: dict) -> "Relation":
        return cls(parse_word(d["lhs"]), parse_word(d["rhs"]), int(d["delta_shift"]), d.get("tag", ""))

    def op(self, tag: Optional[str] = None) -> "Relation":
        return Relation(op(self.lhs), op(self.rhs), self.delta_shift, tag or f"op({self.tag})")

    def __str__(self) -> str:
        d = f"δ^{self.delta_shift} " if self.delta_shift else ""
        return f"{word_str(self.lhs)} = {d}{word_str(self.rhs)}"


@dataclass(frozen=True)
class Bond:
    i: int
    j: int
    multiplicity: int
    arrow: Optional[int] = None  # node of the shorter root, for multiple bonds


@dataclass
class Presentation:
    name: str
    nodes: Tuple[int, ...]
    bonds: List[Bond]
    kappa: Dict[int, int]
    relations: List[Relation]
    lower: bool = False

    def r(self, i: int) -> str:
        return f"r{i}" if self.lower else f"R{i}"

    def e(self, i: int) -> str:
        return f"e{i}" if self.lower else f"E{i}"

    @property
    def alphabet(self) -> Tuple[str, ...]:
        return tuple(self.r(i) for i in self.nodes) + tuple(self.e(i) for i in self.nodes)

    def bond(self, i: int, j: int) -> Optional[Bond]:
        for b in self.bonds:
            if {b.i, b.j} == {i, j}:
                return b
        return None

    def relation(self, tag: str) -> Relation:
        for rel in self.relations:
            if rel.tag == tag:
                return rel
        raise KeyError(tag)

    def check_word(self, w: Iterable[str]) -> Word:
        w = tuple(w)
        bad = [s for s in w if s not in self.alphabet]
        if bad:
            raise WordError(f"symbols {bad} not in the alphabet of {self.name}")
        return w

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "nodes": list(self.nodes),
            "bonds": [
                {"i": b.i, "j": b.j, "multiplicity": b.multiplicity, "arrow": b.arrow} for b in self.bonds
            ],
            "kappa": {str(k): v for k, v in self.kappa.items()},
            "relations": [r.to_json() for r in self.relations],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, d: dict) -> "Presentation":
        rels = [Relation.from_json(r) for r in d["relations"]]
        lower = any(s[0].islower() for r in rels for s in r.lhs + r.rhs)
        return cls(
            d["name"],
            tuple(d["nodes"]),
            [Bond(b["i"], b["j"], b["multiplicity"], b.get("arrow")) for b in d["bonds"]],
            {int(k): int(v) for k, v in d["kappa"].items()},
            rels,
            lower,
        )


@dataclass
class DerivedRelationSet:
    name: str
    base: str
    items: List[Relation] = field(default_factory=list)

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def item(self, tag: str) -> Relation:
        for r in self.items:
            if r.tag == tag:
                return r
        raise KeyError(tag)


# -- instantiation -----------------------------------------------------------


def _w(*syms: str) -> Word:
    return tuple(syms)


def _common_relations(p: Presentation, simply_laced: bool) -> List[Relation]:
    R, E = p.r, p.e
    rels: List[Relation] = []
    t = {"sq": "1.1.2", "abs": "1.1.3", "quad": "1.1.4", "rr": "1.1.5", "er": "1.1.6", "ee": "1.1.7"}
    if not simply_laced:
        t = {"sq": "0.1.3", "abs": "0.1.4", "quad": "0.1.5", "rr": "0.1.7", "er": "0.1.8", "ee": "0.1.9"}
    for i in p.nodes:
        rels.append(Relation(_w(R(i), R(i)), (), 0, f"{t['sq']}[i={i}]"))
        rels.append(Relation(_w(R(i), E(i)), _w(E(i)), 0, f"{t['abs']}a[i={i}]"))
        rels.append(Relation(_w(E(i), R(i)), _w(E(i)), 0, f"{t['abs']}b[i={i}]"))
        rels.append(Relation(_w(E(i), E(i)), _w(E(i)), p.kappa[i], f"{t['quad']}[i={i}]"))
    for i, j in combinations(p.nodes, 2):
        if p.bond(i, j) is None:
            rels.append(Relation(_w(R(i), R(j)), _w(R(j), R(i)), 0, f"{t['rr']}[i={i},j={j}]"))
            rels.append(Relation(_w(E(i), R(j)), _w(R(j), E(i)), 0, f"{t['er']}[i={i},j={j}]"))
            rels.append(Relation(_w(E(j), R(i)), _w(R(i), E(j)), 0, f"{t['er']}[i={j},j={i}]"))
            rels.append(Relation(_w(E(i), E(j)), _w(E(j), E(i)), 0, f"{t['ee']}[i={i},j={j}]"))
    return rels


def _simple_bond(p: Presentation, i: int, j: int, simply_laced: bool) -> List[Relation]:
    R, E = p.r, p.e
    t = ("1.1.8", "1.1.9", "1.1.10") if simply_laced else ("0.1.10", "0.1.13", "0.1.15")
    return [
        Relation(_w(R(i), R(j), R(i)), _w(R(j), R(i), R(j)), 0, f"{t[0]}[i={i},j={j}]"),
        Relation(_w(R(j), R(i), E(j)), _w(E(i), E(j)), 0, f"{t[1]}[i={i},j={j}]"),
        Relation(_w(R(i), R(j), E(i)), _w(E(j), E(i)), 0, f"{t[1]}[i={j},j={i}]"),
        Relation(_w(R(i), E(j), R(i)), _w(R(j), E(i), R(j)), 0, f"{t[2]}[i={i},j={j}]"),
    ]


def _double_bond(p: Presentation, i: int, j: int) -> List[Relation]:
    """Block for a double bond with i the long node and j the short node."""
    r, e = p.r, p.e
    tag = lambda s: f"{s}[i={i},j={j}]"  # noqa: E731
    return [
        Relation(_w(r(j), r(i), r(j), r(i)), _w(r(i), r(j), r(i), r(j)), 0, tag("0.1.11")),
        Relation(_w(r(j), r(i), e(j)), _w(r(i), e(j)), 0, tag("0.1.14")),
        Relation(_w(r(j), e(i), r(j), e(i)), _w(e(i), e(j), e(i)), 0, tag("0.1.19")),
        Relation(_w(r(j), r(i), r(j), e(i)), _w(e(i), r(j), r(i), r(j)), 0, tag("0.1.20")),
        Relation(_w(e(j), r(i), e(j)), _w(e(j)), 1, tag("0.1.12")),
        Relation(_w(e(j), e(i), e(j)), _w(e(j)), 1, tag("0.1.16")),
        Relation(_w(e(j), r(i), r(j)), _w(e(j), r(i)), 0, tag("0.1.17")),
        Relation(_w(e(j), e(i), r(j)), _w(e(j), e(i)), 0, tag("0.1.18")),
    ]


def _triple_bond(p: Presentation, i: int, j: int) -> List[Relation]:
    """Block for a triple bond with i the short node and j the long node."""
    r, e = p.r, p.e
    tag = lambda s: f"{s}[i={i},j={j}]"  # noqa: E731
    return [
        Relation(_w(r(i), e(j), e(i)), _w(r(j), e(i)), 0, tag("c7.0.1.7")),
        Relation(_w(e(i), e(j), r(i)), _w(e(i), r(j)), 0, tag("c7.0.1.8")),
        Relation(_w(e(j), r(i), e(j), r(i), e(j)), _w(e(j)), 0, tag("c7.0.1.12")),
        Relation(_w(e(j), r(i), e(j), r(i), r(j)), _w(e(j), r(i), r(j), r(i)), 0, tag("c7.0.1.13")),
        Relation(_w(e(i), r(j), e(i)), _w(e(i)), 2, tag("c7.0.1.14")),
        Relation(_w(r(j), r(i), e(j), r(i), e(j)), _w(r(i), r(j), r(i), e(j)), 0, tag("c7.0.1.16")),
        Relation(_w(*([r(j), r(i)] * 6)), (), 0, tag("c7.0.1.17")),
    ]


def _bcfg_diagram(kind: str, n: int) -> Tuple[Tuple[int, ...], List[Bond], Dict[int, int]]:
    if kind in ("B", "C"):
        if n < 2:
            raise ConfigurationError(f"{kind}{n}: rank must be at least 2")
        nodes = tuple(range(n))
        short = 0 if kind == "B" else 1
        bonds = [Bond(0, 1, 2, short)] + [Bond(k, k + 1, 1) for k in range(1, n - 1)]
        if kind == "C":
            kappa = {0: 1, **{k: 2 for k in range(1, n)}}
        else:
            kappa = {0: 2, **{k: 1 for k in range(1, n)}}
        return nodes, bonds, kappa
    if kind == "F" and n == 4:
        return (1, 2, 3, 4), [Bond(1, 2, 1), Bond(2, 3, 2, 2), Bond(3, 4, 1)], {1: 2, 2: 2, 3: 1, 4: 1}
    if kind == "G" and n == 2:
        return (0, 1), [Bond(0, 1, 3, 0)], {0: 3, 1: 1}
    raise ConfigurationError(f"unsupported type {kind}{n}")


def _parse_label(label: str) -> Tuple[str, int]:
    m = re.fullmatch(r"\s*([A-Za-z])\s*\(?(\d+)\)?\s*", label)
    if not m:
        raise ConfigurationError(f"cannot parse type {label!r}")
    return m.group(1).upper(), int(m.group(2))


def presentation_for(type_label: str) -> Presentation:
    kind, n = _parse_label(type_label)
    name = f"{kind}{n}"
    if kind in ("A", "D"):
        rs = build_root_system(kind, n)
        bonds = [Bond(i, j, 1) for i, j in combinations(rs.nodes, 2) if rs.adjacent(i, j)]
        p = Presentation(name, rs.nodes, bonds, {i: 1 for i in rs.nodes}, [], lower=False)
        rels = _common_relations(p, True)
        for b in bonds:
            rels += _simple_bond(p, b.i, b.j, True)
        p.relations = rels
        return p
    nodes, bonds, kappa = _bcfg_diagram(kind, n)
    p = Presentation(name, nodes, bonds, kappa, [], lower=True)
    rels = _common_relations(p, False)
    for b in bonds:
        if b.multiplicity == 1:
            rels += _simple_bond(p, b.i, b.j, False)
        elif b.multiplicity == 2:
            long_ = b.j if b.arrow == b.i else b.i
            rels += _double_bond(p, long_, b.arrow)
        else:
            long_ = b.j if b.arrow == b.i else b.i
            rels += _triple_bond(p, b.arrow, long_)
    p.relations = rels
    return p


# -- derived relations -------------------------------------------------------


def _simply_laced_derived(p: Presentation) -> DerivedRelationSet:
    R, E = p.r, p.e
    items: List[Relation] = []
    adj = {i: [j for j in p.nodes if p.bond(i, j)] for i in p.nodes}
    for i in p.nodes:
        for j in adj[i]:
            tg = lambda s: f"{s}[i={i},j={j}]"  # noqa: E731
            items += [
                Relation(_w(E(i), R(j), R(i)), _w(E(i), E(j)), 0, tg("3.1.1")),
                Relation(_w(R(j), E(i), E(j)), _w(R(i), E(j)), 0, tg("3.1.2")),
                Relation(_w(E(i), R(j), E(i)), _w(E(i)), 0, tg("3.1.3")),
                Relation(_w(E(j), E(i), R(j)), _w(E(j), R(i)), 0, tg("3.1.4")),
                Relation(_w(E(i), E(j), E(i)), _w(E(i)), 0, tg("3.1.5")),
            ]
    for j in p.nodes:
        for i in adj[j]:
            for k in adj[j]:
                if k == i or p.bond(i, k):
                    continue
                tg = f"[i={i},j={j},k={k}]"
                items += [
                    Relation(_w(E(j), E(i), R(k), E(j)), _w(E(j), R(i), E(k), E(j)), 0, "3.1.6" + tg),
                    Relation(_w(E(j), R(i), R(k), E(j)), _w(E(j), E(i), E(k), E(j)), 0, "3.1.7" + tg),
                ]
    order = {f"3.1.{n}": n for n in range(1, 8)}
    items.sort(key=lambda r: order[r.tag.split("[")[0]])
    return DerivedRelationSet(f"{p.name} consequences of the defining relations", p.name, items)


def _double_bond_derived(p: Presentation) -> DerivedRelationSet:
    r, e = p.r, p.e
    items: List[Relation] = []
    for b in p.bonds:
        if b.multiplicity != 2:
            continue
        j = b.arrow
        i = b.j if j == b.i else b.i
        tg = lambda s: f"{s}[i={i},j={j}]"  # noqa: E731
        items += [
            Relation(_w(r(j), e(i), e(j)), _w(e(i), e(j)), 0, tg("4.1.2")),
            Relation(_w(e(i), e(j), e(i)), _w(e(i), r(j), e(i)), 0, tg("4.1.1")),
            Relation(_w(e(j), r(i), r(j), e(i)), _w(e(j), e(i)), 0, tg("4.1.3")),
            Relation(_w(r(i), r(j), e(i), r(j)), _w(r(j), e(i), r(j), r(i)), 0, tg("4.1.4")),
            Relation(_w(e(i), r(j), e(i), r(j)), _w(e(i), e(j), e(i)), 0, tg("4.1.5")),
        ]
    return DerivedRelationSet(f"{p.name} double-bond consequences", p.name, items)


def g2_lemma_set() -> DerivedRelationSet:
    """The four identities used to build the G2 normal forms."""
    w = parse_word
    items = [
        Relation(w("r0 r1 e0"), w("e1 e0"), 0, "c7.0.1.9"),
        Relation(w("e0 r1 r0"), w("e0 e1"), 0, "c7.0.1.10"),
        Relation(w("e0 e1 e0"), w("e0"), 2, "c7.0.1.11"),
        Relation(w("r1 r0 e1 r0 r1 e0"), w("e0"), 1, "c7.0.1.15"),
    ]
    return DerivedRelationSet("G2 derived identities", "G2", items)


def g2_stabilizer_set() -> DerivedRelationSet:
    """Stabilizer elements commute with e_i; the two coset identities built from them."""
    w = parse_word
    items = [
        Relation(w("r0 e0 r0"), w("e0"), 0, "N0.r0"),
        Relation(w("r1 e1 r1"), w("e1"), 0, "N1.r1"),
        Relation(w("r1 r0 r1 r0 r1 e0 r1 r0 r1 r0 r1"), w("e0"), 0, "N0.r1r0r1r0r1"),
        Relation(w("r0 r1 r0 r1 r0 e1 r0 r1 r0 r1 r0"), w("e1"), 0, "N1.r0r1r0r1r0"),
        Relation(w("r1 r0 r1 r0 r1 e0"), w("e0"), 0, "anyr.0"),
        Relation(w("r0 r1 r0 r1 r0 e1"), w("e1 r0 r1 r0 r1 r0"), 0, "anyr.1"),
    ]
    return DerivedRelationSet("G2 stabilizer identities", "G2", items)


# e_beta e_j for the six positive roots beta (by conjugator) and j in {0, 1}:
# (conjugator word, j, delta power, left word, node, right word) meaning
# c e_i c^-1 e_j = delta^t left e_node right, with i the node of the root's orbit.
# The two rows for r1 b0 and r0 r1 b0 against e0 carry delta^2: both reduce to e0 r1 e0 = delta^2 e0.
# The row for r0 b1 against e0 is r1 e0: r0 e1 r0 e0 = r0 e1 e0 = r1 e0.
G2_EBETA_TABLE: Tuple[Tuple[str, int, int, int, str, int, str], ...] = (
    ("", 0, 0, 3, "", 0, ""),
    ("r1", 0, 0, 2, "r1", 0, ""),
    ("r0 r1", 0, 0, 2, "r0 r1", 0, ""),
    ("", 1, 0, 0, "r0 r1", 0, ""),
    ("r0", 1, 0, 0, "r1", 0, ""),
    ("r1 r0", 1, 0, 1, "", 0, ""),
    ("", 0, 1, 0, "", 0, "r1 r0"),
    ("r1", 0, 1, 0, "r1", 0, "r1 r0"),
    ("r0 r1", 0, 1, 1, "r0 r1", 0, "r1 r0"),
    ("", 1, 1, 1, "", 1, ""),
    ("r0", 1, 1, 0, "r1 r0 r1 r0", 1, ""),
    ("r1 r0", 1, 1, 0, "r0 r1 r0", 1, ""),
)


def g2_ebeta_relations() -> DerivedRelationSet:
    items = []
    for conj, i, j, t, left, node, right in G2_EBETA_TABLE:
        c = parse_word(conj)
        lhs = c + (f"e{i}",) + op(c) + (f"e{j}",)
        rhs = parse_word(left) + (f"e{node}",) + parse_word(right)
        tag = f"anye[{''.join(c) or '1'}.e{i},e{j}]"
        items.append(Relation(lhs, rhs, t, tag))
    return DerivedRelationSet("G2 products e_beta e_j", "G2", items)


def derived_sets_for(type_label: str) -> DerivedRelationSet:
    kind, n = _parse_label(type_label)
    p = presentation_for(type_label)
    if kind in ("A", "D"):
        return _simply_laced_derived(p)
    if kind == "G":
        return g2_lemma_set()
    if kind in ("B", "C", "F"):
        return _double_bond_derived(p)
    raise ConfigurationError(f"unsupported type {type_label!r}")
