"""The map phi from Br(G2) to Br(D4) and the triality census behind it.

``phi`` sends ``r0 -> R1 R2 R4``, ``r1 -> R3``, ``e0 -> E1 E2 E4`` and ``e1 -> E3``. Well-definedness
is checked two ways: each relation image is certified by the prover from the D4 presentation,
and both sides of each image act identically on every admissible D4 set. The census counts
triality-invariant admissible sets per orbit and compares their projections with G2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .action import MonoidAction
from .admissible import Admissibility, FoldedCensus, folded_admissibles
from .presentations import (
    DerivedRelationSet,
    Relation,
    Word,
    derived_sets_for,
    g2_lemma_set,
    presentation_for,
)
from .prover import PipelineReport, SearchBounds, certify_lemma_pipeline
from .roots import FoldingMap, root_system, triality
from .weyl import RootSet, WeylGroup

PHI_IMAGES: Dict[str, Tuple[str, ...]] = {
    "r0": ("R1", "R2", "R4"),
    "r1": ("R3",),
    "e0": ("E1", "E2", "E4"),
    "e1": ("E3",),
}

# the block lemma for (r1 r0)^6 spans the twelve-letter reduced words of the longest element
BRAID_BOUNDS = SearchBounds(max_depth=30, max_word_length=12)
DEFAULT_BOUNDS = SearchBounds(max_depth=24, max_word_length=20, max_frontier=2_000_000)


@dataclass(frozen=True)
class PhiMap:
    images: Dict[str, Tuple[str, ...]] = field(default_factory=lambda: dict(PHI_IMAGES))

    def __call__(self, w: Sequence[str]) -> Word:
        return phi_word(w, self.images)

    def commuting_factors(self) -> bool:
        """Letters inside each image sit on pairwise non-adjacent D4 nodes."""
        d4 = presentation_for("D4")
        for img in self.images.values():
            nodes = [int(s[1:]) for s in img]
            for a in nodes:
                for b in nodes:
                    if a != b and d4.bond(a, b) is not None:
                        return False
        return True


def phi_word(w: Sequence[str], images: Optional[Dict[str, Tuple[str, ...]]] = None) -> Word:
    images = images or PHI_IMAGES
    out: List[str] = []
    for s in w:
        if s in ("delta", "delta^-1"):
            out.append(s)
        else:
            out.extend(images[s])
    return tuple(out)


def phi_relation(rel: Relation, phi: Optional[PhiMap] = None) -> Relation:
    phi = phi or PhiMap()
    return Relation(phi(rel.lhs), phi(rel.rhs), rel.delta_shift, f"phi[{rel.tag}]")


def block_lemmas() -> DerivedRelationSet:
    """D4 identities about the images of r0, e0: reorderings, r0^2 = 1 and the order-6 braid."""
    X, P, Y = PHI_IMAGES["r0"], PHI_IMAGES["e0"], PHI_IMAGES["r1"]
    items: List[Relation] = []
    for perm in permutations(range(3)):
        if perm == (0, 1, 2):
            continue
        label = "".join(X[k][1] for k in perm)
        items.append(Relation(X, tuple(X[k] for k in perm), 0, f"block.R{label}"))
        items.append(Relation(P, tuple(P[k] for k in perm), 0, f"block.E{label}"))
    items.append(Relation(X + X, (), 0, "block.RR"))
    items.append(Relation((X + Y) * 3, (Y + X) * 3, 0, "block.braid6"))
    return DerivedRelationSet("D4 block identities for phi", "D4", items)


def g2_relations_for_phi() -> List[Relation]:
    """Defining G2 relations followed by the four derived identities."""
    return list(presentation_for("G2").relations) + list(g2_lemma_set().items)


# -- report -------------------------------------------------------------------


@dataclass
class PhiRelationStatus:
    relation: Relation
    image: Relation
    prover: Optional[dict] = None
    action_ok: Optional[bool] = None
    action_mismatches: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        prover_ok = self.prover is None or self.prover["ok"]
        return prover_ok and self.action_ok is not False

    def to_json(self) -> dict:
        d = {
            "tag": self.relation.tag,
            "relation": str(self.relation),
            "image": str(self.image),
            "expected_delta": self.relation.delta_shift,
            "ok": self.ok,
        }
        if self.prover is not None:
            d["prover"] = self.prover
        if self.action_ok is not None:
            d["action_ok"] = self.action_ok
            d["action_mismatches"] = self.action_mismatches
        return d


@dataclass
class PhiReport:
    methods: Tuple[str, ...]
    relations: List[PhiRelationStatus]
    lemma_pipeline: Optional[PipelineReport] = None
    admissible_sets: int = 0

    @property
    def ok(self) -> bool:
        lem_ok = self.lemma_pipeline is None or all(
            r.ok for r in self.lemma_pipeline.results if not r.relation.tag.startswith("phi[")
        )
        return lem_ok and all(r.ok for r in self.relations)

    def to_json(self) -> dict:
        d: dict = {"methods": list(self.methods), "ok": self.ok, "admissible_sets": self.admissible_sets}
        if self.lemma_pipeline is not None:
            d["supporting_lemmas"] = [
                {"tag": r.relation.tag, "ok": r.ok, "depth": r.result.depth if r.result else None}
                for r in self.lemma_pipeline.results
                if not r.relation.tag.startswith("phi[")
            ]
        d["relations"] = [r.to_json() for r in self.relations]
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)


def verify_phi_relations(
    methods: Iterable[str] = ("prover", "action"),
    bounds: Optional[SearchBounds] = None,
    phi: Optional[PhiMap] = None,
    action: Optional[MonoidAction] = None,
) -> PhiReport:
    methods = tuple(methods)
    unknown = set(methods) - {"prover", "action"}
    if unknown:
        raise ValueError(f"unknown methods {sorted(unknown)}")
    phi = phi or PhiMap()
    rels = g2_relations_for_phi()
    images = [phi_relation(r, phi) for r in rels]
    status = [PhiRelationStatus(r, img) for r, img in zip(rels, images)]
    report = PhiReport(methods, status)

    if "prover" in methods:
        d4 = presentation_for("D4")
        pipe = certify_lemma_pipeline(
            d4,
            [derived_sets_for("D4"), block_lemmas(), images],
            bounds or DEFAULT_BOUNDS,
            {"block.braid6": BRAID_BOUNDS},
        )
        report.lemma_pipeline = pipe
        by_tag = {r.relation.tag: r for r in pipe.results}
        for st in status:
            res = by_tag[st.image.tag]
            info = {
                "ok": res.ok,
                "found": bool(res.result),
                "replayed": res.replayed,
                "replayed_from_defining_relations": res.replayed_expanded,
                "seconds": round(res.result.seconds, 3),
            }
            if res.result:
                info.update(depth=res.result.depth, delta=res.result.total_delta)
            else:
                info.update(reason=res.result.reason, bounds=res.result.bounds.to_json())
            st.prover = info

    if "action" in methods:
        act = action or MonoidAction(root_system("D4"))
        report.admissible_sets = len(act.collection)
        for st in status:
            rep = act.check_relation_compatibility([st.image])
            st.action_ok = rep.ok
            st.action_mismatches = rep.mismatches[:5]
    return report


# -- triality census ----------------------------------------------------------


@dataclass
class SigmaCensus:
    orbit_counts: List[dict]
    phi_orbits: List[List[str]]
    folded_orbits: List[List[str]]
    projection_onto_folded: bool
    census: FoldedCensus = field(repr=False, default=None)  # type: ignore[assignment]

    def to_json(self) -> dict:
        return {
            "orbits": self.orbit_counts,
            "phi_group_orbits": self.phi_orbits,
            "folded_orbits": self.folded_orbits,
            "projection_onto_folded": self.projection_onto_folded,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)


def phi_group(W: WeylGroup) -> list:
    """The image of W(G2) in W(D4), generated by R1 R2 R4 and R3."""
    return W.closure([W.from_word((1, 2, 4)), W.from_word((3,))])


def sigma_census(f: Optional[FoldingMap] = None, adm: Optional[Admissibility] = None) -> SigmaCensus:
    f = f or triality()
    rs = f.d4
    adm = adm or Admissibility(rs)
    W = adm.W
    perm = f.root_permutation()

    def invariant(X: RootSet) -> bool:
        return frozenset(perm[k] for k in X) == X

    rows = []
    for orb in adm.orbits():
        rep = min(orb, key=lambda X: (sorted(rs.positive_roots[k].height for k in X), sorted(X)))
        inv = [X for X in orb if invariant(X)]
        rows.append(
            {
                "representative": rs.format_set(rep),
                "size": len(orb),
                "sigma_invariant": len(inv),
                "invariant_members": [rs.format_set(X) for X in inv],
            }
        )
    H = phi_group(W)
    inv_sets = [X for X in adm.collection() if invariant(X)]
    seen: set = set()
    phi_orbits = []
    for X in inv_sets:
        if X in seen:
            continue
        orb = sorted({W.act(h, X) for h in H}, key=lambda Y: (len(Y), sorted(Y)))
        seen.update(orb)
        phi_orbits.append([rs.format_set(Y) for Y in orb])
    census = folded_admissibles(f, adm)
    images = {frozenset(census.projection[k] for k in X) for X in inv_sets}
    folded = {Y for orb in census.orbits for Y in orb}
    return SigmaCensus(
        rows,
        phi_orbits,
        [[census.g2.format_set(Y) for Y in orb] for orb in census.orbits],
        images == folded,
        census,
    )
