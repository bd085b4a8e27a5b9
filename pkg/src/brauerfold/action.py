"""The Brauer monoid acting on admissible root sets of a simply laced system.

``R_i`` acts through the Weyl group on positive roots (signs dropped), the loop parameter acts
trivially, and ``E_i`` acts by

* ``E_i B = B`` when ``alpha_i`` lies in B,
* ``E_i B = (B + alpha_i)^cl`` when ``alpha_i`` is orthogonal to B,
* ``E_i B = R_beta R_i B`` for a root ``beta`` of B not orthogonal to ``alpha_i``.

In the last case ``beta`` is taken of minimal height, ties broken by root index; the choice
does not affect the result (see :meth:`MonoidAction.third_case_results`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .admissible import Admissibility
from .presentations import GenSymbol, Presentation, Relation, Word, parse_word, word_str
from .roots import FoldingMap, RootSystem
from .weyl import RootSet, SignedImage, reflection_image

MonoidWord = Word
Symbol = Union[str, GenSymbol]


def _symbol(g: Symbol) -> GenSymbol:
    return g if isinstance(g, GenSymbol) else GenSymbol.parse(g)


class MonoidAction:
    """Action of BrM(Q) on the admissible collection of ``rs``."""

    def __init__(self, rs: RootSystem, adm: Optional[Admissibility] = None):
        self.rs = rs
        self.adm = adm if adm is not None else Admissibility(rs)
        pos = rs.positive_roots
        self._refl: List[SignedImage] = [reflection_image(rs, r) for r in pos]
        self._simple = {i: rs.simple_index(i) for i in rs.nodes}
        # beta candidates in the selection order: height first, then index
        self._order = sorted(range(len(pos)), key=lambda k: (pos[k].height, k))

    @property
    def collection(self) -> List[RootSet]:
        return self.adm.collection()

    def reflect(self, beta: int, B: Iterable[int]) -> RootSet:
        img = self._refl[beta]
        return frozenset(img[k][0] for k in B)

    def _check_node(self, g: GenSymbol) -> int:
        if g.node not in self._simple:
            raise ValueError(f"node {g.node} is not in {self.rs.type_label}")
        return self._simple[g.node]

    def apply_generator(self, g: Symbol, B: Iterable[int]) -> RootSet:
        g = _symbol(g)
        B = frozenset(B)
        if g.kind in ("delta", "delta_inv"):
            return B
        a = self._check_node(g)
        if g.kind == "R":
            return self.reflect(a, B)
        if a in B:
            return B
        gram = self.adm.gram[a]
        movers = [b for b in self._order if b in B and gram[b] != 0]
        if not movers:
            return self.adm.closure(B | {a})
        return self.reflect(movers[0], self.reflect(a, B))

    def third_case_results(self, node: int, B: Iterable[int]) -> Dict[int, RootSet]:
        """R_beta R_i B for every admissible choice of beta (empty outside the third case)."""
        a = self._simple[node]
        B = frozenset(B)
        if a in B:
            return {}
        RiB = self.reflect(a, B)
        return {b: self.reflect(b, RiB) for b in sorted(B) if self.adm.gram[a][b] != 0}

    def apply_word(self, w: Union[str, Sequence[Symbol]], B: Iterable[int]) -> RootSet:
        """Apply a word right to left."""
        if isinstance(w, str):
            w = parse_word(w)
        X = frozenset(B)
        for g in reversed(tuple(w)):
            X = self.apply_generator(g, X)
        return X

    def check_relation_compatibility(
        self, relations: Iterable[Relation], sets: Optional[Iterable[RootSet]] = None
    ) -> "CompatibilityReport":
        sets = list(self.collection if sets is None else sets)
        report = CompatibilityReport(self.rs.type_label, 0, 0, [])
        for rel in relations:
            report.relations += 1
            for B in sets:
                report.checks += 1
                lhs = self.apply_word(rel.lhs, B)
                rhs = self.apply_word(rel.rhs, B)
                if lhs != rhs:
                    report.mismatches.append(
                        {
                            "relation": f"{rel.tag}: {rel}",
                            "set": self.rs.format_set(B),
                            "lhs_result": self.rs.format_set(lhs),
                            "rhs_result": self.rs.format_set(rhs),
                        }
                    )
        return report


@dataclass
class CompatibilityReport:
    system: str
    relations: int
    checks: int
    mismatches: List[dict]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "relations": self.relations,
            "checks": self.checks,
            "ok": self.ok,
            "mismatches": self.mismatches,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)


# -- module-level conveniences ---------------------------------------------

_ACTIONS: Dict[str, MonoidAction] = {}


def action_for(rs: RootSystem) -> MonoidAction:
    act = _ACTIONS.get(rs.type_label)
    if act is None or act.rs is not rs:
        act = _ACTIONS[rs.type_label] = MonoidAction(rs)
    return act


def apply_generator(rs: RootSystem, g: Symbol, B: Iterable[int]) -> RootSet:
    return action_for(rs).apply_generator(g, B)


def apply_word(rs: RootSystem, w: Union[str, Sequence[Symbol]], B: Iterable[int]) -> RootSet:
    return action_for(rs).apply_word(w, B)


def check_relation_compatibility(p: Presentation, rs: RootSystem) -> CompatibilityReport:
    return action_for(rs).check_relation_compatibility(p.relations)


def third_case_independent(act: MonoidAction) -> Tuple[int, List[Tuple[int, RootSet]]]:
    """Count third-case instances over the collection; return failing (node, set) pairs."""
    count = 0
    bad = []
    for B in act.collection:
        for i in act.rs.nodes:
            res = act.third_case_results(i, B)
            if res:
                count += 1
                if len(set(res.values())) != 1:
                    bad.append((i, B))
    return count, bad


def relabel_word(w: Sequence[str], perm: Dict[int, int]) -> Word:
    """Rename node labels in a word, keeping letter case."""
    out = []
    for s in w:
        g = GenSymbol.parse(s)
        out.append(str(GenSymbol(g.kind, perm[g.node], g.lower)))
    return tuple(out)


def sigma_node_map(rs: RootSystem, f: FoldingMap) -> Dict[int, int]:
    """Node permutation induced by ``f`` on the simple roots of ``rs``."""
    out = {}
    for i in rs.nodes:
        img = rs.locate(f.apply(rs.simple(i).coords))
        out[i] = rs.positive_roots[img[0]].simple_coords.index(1)
        out[i] = rs.nodes[out[i]]
    return out


def sigma_set(rs: RootSystem, f: FoldingMap, B: Iterable[int]) -> RootSet:
    perm = f.root_permutation()
    return frozenset(perm[k] for k in B)


def format_word(w: Sequence[str]) -> str:
    return word_str(w)
