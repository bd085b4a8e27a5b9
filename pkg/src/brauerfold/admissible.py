"""Admissible root sets: the two admissibility tests, closure, orbits and monoidal posets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .roots import FoldingMap, RootError, RootSystem, build_g2_roots, dot, reynolds
from .weyl import RootSet, WeylGroup


class AdmissibilityError(ValueError):
    pass


class ClosureError(AdmissibilityError):
    """No admissible set contains the given roots."""


ORBIT_FORM = "orbit-form"
CLOSURE_FORM = "closure-form"


@dataclass(frozen=True)
class AdmissibleSet:
    roots: Tuple[int, ...]
    system: RootSystem = field(compare=False, hash=False, repr=False)

    @classmethod
    def of(cls, rs: RootSystem, B: Iterable[int]) -> "AdmissibleSet":
        return cls(tuple(sorted(B)), rs)

    def __str__(self) -> str:
        return self.system.format_set(self.roots)


class Admissibility:
    """Admissibility machinery for a simply laced root system."""

    def __init__(self, rs: RootSystem, group: Optional[WeylGroup] = None):
        self.rs = rs
        self.W = group if group is not None else WeylGroup(rs)
        pos = rs.positive_roots
        self.n = len(pos)
        self.gram = [[dot(a.coords, b.coords) for b in pos] for a in pos]
        self.heights = [r.height for r in pos]
        self._collection: Optional[List[RootSet]] = None

    # -- basic predicates ------------------------------------------------

    def is_orthogonal(self, B: Iterable[int]) -> bool:
        B = list(B)
        return all(self.gram[a][b] == 0 for a, b in combinations(B, 2))

    def _require_orthogonal(self, B: Iterable[int]) -> FrozenSet[int]:
        B = frozenset(B)
        if not self.is_orthogonal(B):
            raise AdmissibilityError(f"{self.rs.format_set(B)} is not mutually orthogonal")
        return B

    def required_roots(self, B: Iterable[int]) -> Set[int]:
        """Roots forced into B by the rule 2g + g1 + g2 + g3.

        The rule is applied for every root g (either sign) with (g, gk) = -1 for three distinct
        gk in B; the positive representative of the result must lie in B.
        """
        B = sorted(B)
        out: Set[int] = set()
        pos = self.rs.positive_roots
        for trip in combinations(B, 3):
            s = tuple(sum(c) for c in zip(*(pos[t].coords for t in trip)))
            for eta in range(self.n):
                ips = {self.gram[eta][t] for t in trip}
                if len(ips) != 1:
                    continue
                ip = ips.pop()
                if ip not in (1, -1):
                    continue
                e = pos[eta].coords
                # ip = -1: g = eta gives 2 eta + s; ip = +1: g = -eta gives -(2 eta - s).
                cand = tuple(2 * a - ip * b for a, b in zip(e, s))
                out.add(self.rs.locate(cand)[0])
        return out

    def is_admissible_closure(self, B: Iterable[int]) -> bool:
        B = self._require_orthogonal(B)
        return self.required_roots(B) <= B

    def _orbit_condition(self, X: RootSet) -> bool:
        rs, W = self.rs, self.W
        pos = rs.positive_roots
        for i in rs.nodes:
            ai = rs.simple(i).coords
            for j in rs.nodes:
                if i == j or rs.adjacent(i, j):
                    continue
                aj = rs.simple(j).coords
                for g in X:
                    v = tuple(a - b + c for a, b, c in zip(pos[g].coords, ai, aj))
                    try:
                        k, sign = rs.locate(v)
                    except RootError:
                        continue
                    if sign > 0 and k in X:
                        if W.act(W.generator(i), X) != W.act(W.generator(j), X):
                            return False
        return True

    def is_admissible_orbit(self, B: Iterable[int]) -> bool:
        B = self._require_orthogonal(B)
        return all(self._orbit_condition(X) for X in self.W.orbit(B))

    def is_admissible(self, B: Iterable[int], definition: str = CLOSURE_FORM) -> bool:
        if definition == CLOSURE_FORM:
            return self.is_admissible_closure(B)
        if definition == ORBIT_FORM:
            return self.is_admissible_orbit(B)
        raise ValueError(f"unknown definition {definition!r}")

    def closure(self, B: Iterable[int]) -> RootSet:
        X = set(self._require_orthogonal(B))
        while True:
            extra = self.required_roots(X) - X
            if not extra:
                return frozenset(X)
            X |= extra
            if not self.is_orthogonal(X):
                raise ClosureError(f"no admissible set contains {self.rs.format_set(B)}")

    # -- enumeration -----------------------------------------------------

    def orthogonal_sets(self) -> List[RootSet]:
        out: List[RootSet] = []

        def grow(cur: List[int], start: int) -> None:
            out.append(frozenset(cur))
            for k in range(start, self.n):
                if all(self.gram[k][c] == 0 for c in cur):
                    cur.append(k)
                    grow(cur, k + 1)
                    cur.pop()

        grow([], 0)
        return out

    def collection(self) -> List[RootSet]:
        """All admissible sets, sorted by (size, indices)."""
        if self._collection is None:
            found = {self.closure(B) for B in self.orthogonal_sets() if self._closable(B)}
            self._collection = sorted(found, key=lambda X: (len(X), sorted(X)))
        return self._collection

    def _closable(self, B: RootSet) -> bool:
        try:
            self.closure(B)
        except ClosureError:
            return False
        return True

    def orbits(self) -> List[List[RootSet]]:
        seen: Set[RootSet] = set()
        out = []
        for X in self.collection():
            if X in seen:
                continue
            orb = sorted(self.W.orbit(X), key=lambda Y: (sum(self.heights[k] for k in Y), sorted(Y)))
            seen.update(orb)
            out.append(orb)
        return out

    # -- monoidal poset --------------------------------------------------

    def classify(self, node: int, B: RootSet) -> Tuple[Optional[str], bool]:
        """('raise' | 'lower' | None, consistent) for R_node acting on B.

        Only the minimal-height roots of B moved by the reflection are consulted; when several
        such roots disagree, the majority-free answer is None and ``consistent`` is False.
        """
        rs = self.rs
        img = self.W.gen_images[node]
        moved = [b for b in B if img[b][0] != b]
        if not moved:
            return None, True
        h = min(self.heights[b] for b in moved)
        ai = rs.simple(node).coords
        verdicts = set()
        for b in moved:
            if self.heights[b] != h:
                continue
            bc = rs.positive_roots[b].coords
            up = tuple(x + y for x, y in zip(bc, ai))
            down = tuple(x - y for x, y in zip(bc, ai))
            if rs.is_root(up) and rs.locate(up)[1] > 0:
                verdicts.add("raise")
            elif rs.is_root(down) and rs.locate(down)[1] > 0:
                verdicts.add("lower")
        if len(verdicts) == 1:
            return verdicts.pop(), True
        return None, False

    def orbit_poset(self, B0: Iterable[int]) -> "OrbitPoset":
        B0 = frozenset(B0)
        elems = sorted(self.W.orbit(B0), key=lambda Y: (sum(self.heights[k] for k in Y), sorted(Y)))
        pos = {X: n for n, X in enumerate(elems)}
        edges: List[Tuple[int, int, int]] = []
        diagnostics: List[str] = []
        for X in elems:
            for node in self.rs.nodes:
                Y = self.W.act(self.W.generator(node), X)
                if Y == X:
                    continue
                verdict, ok = self.classify(node, X)
                if not ok:
                    diagnostics.append(
                        f"R{node} on {self.rs.format_set(X)}: minimal-height moved roots disagree"
                    )
                if verdict == "raise":
                    edges.append((pos[X], pos[Y], node))
        return OrbitPoset(self.rs, elems, edges, diagnostics)


@dataclass
class OrbitPoset:
    system: RootSystem
    elements: List[RootSet]
    raising_edges: List[Tuple[int, int, int]]
    diagnostics: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        n = len(self.elements)
        self.succ: Dict[int, List[int]] = {k: [] for k in range(n)}
        self.pred: Dict[int, List[int]] = {k: [] for k in range(n)}
        for a, b, _ in self.raising_edges:
            self.succ[a].append(b)
            self.pred[b].append(a)
        self.maximal = [k for k in range(n) if not self.succ[k]]
        self.minimal = [k for k in range(n) if not self.pred[k]]
        self.heights = self._heights()

    def _heights(self) -> Dict[int, int]:
        if len(self.maximal) != 1:
            return {}
        top = self.maximal[0]
        dist = {top: 0}
        q = deque([top])
        while q:
            x = q.popleft()
            for y in self.pred[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    q.append(y)
        if len(dist) != len(self.elements):
            return {}
        d = max(dist[m] for m in self.minimal)
        return {k: d - dist[k] for k in dist}

    @property
    def unique_maximum(self) -> Optional[RootSet]:
        return self.elements[self.maximal[0]] if len(self.maximal) == 1 else None

    def to_dot(self, name: str = "hasse") -> str:
        rs = self.system

        def lab(X: RootSet) -> str:
            body = ",".join(
                "(" + ",".join(str(c) for c in rs.positive_roots[k].simple_coords) + ")"
                for k in sorted(X, key=lambda k: rs.positive_roots[k].simple_coords, reverse=True)
            )
            return "{" + body + "}"

        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for k, X in enumerate(self.elements):
            extra = ", peripheries=2" if k in self.maximal else ""
            ht = self.heights.get(k)
            tail = f"\\nht={ht}" if ht is not None else ""
            lines.append(f'  n{k} [label="{lab(X)}{tail}"{extra}];')
        for a, b, node in self.raising_edges:
            lines.append(f'  n{a} -> n{b} [label="{node}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def is_admissible(rs: RootSystem, B: Iterable[int], definition: str = CLOSURE_FORM) -> bool:
    return Admissibility(rs).is_admissible(B, definition)


def closure(rs: RootSystem, B: Iterable[int]) -> AdmissibleSet:
    return AdmissibleSet.of(rs, Admissibility(rs).closure(B))


def orbit_and_hasse(rs: RootSystem, B0: Iterable[int], W: Optional[WeylGroup] = None) -> OrbitPoset:
    return Admissibility(rs, W).orbit_poset(B0)


# -- folding ---------------------------------------------------------------


@dataclass
class FoldedCensus:
    d4: RootSystem
    g2: RootSystem
    sigma_invariant: List[RootSet]
    images: List[RootSet]
    orbits: List[List[RootSet]]
    projection: Tuple[int, ...]

    def nonempty_orbits(self) -> List[List[RootSet]]:
        return [o for o in self.orbits if o != [frozenset()]]


def projection_indices(f: FoldingMap, g2: RootSystem) -> Tuple[int, ...]:
    """Positive-root index in G2 of p(beta) for each positive root beta of D4."""
    out = []
    for r in f.d4.positive_roots:
        k, s = g2.locate(reynolds(f, r.coords))
        if s < 0:
            raise RootError("projection sent a positive root to a negative one")
        out.append(k)
    return tuple(out)


def folded_admissibles(f: FoldingMap, adm: Optional[Admissibility] = None) -> FoldedCensus:
    adm = adm if adm is not None else Admissibility(f.d4)
    g2 = build_g2_roots(f)
    perm = f.root_permutation()
    proj = projection_indices(f, g2)
    inv = [X for X in adm.collection() if frozenset(perm[k] for k in X) == X]
    images = sorted({frozenset(proj[k] for k in X) for X in inv}, key=lambda Y: (len(Y), sorted(Y)))
    Wg = WeylGroup(g2)
    seen: Set[RootSet] = set()
    orbits = []
    for Y in images:
        if Y in seen:
            continue
        orb = sorted(Wg.orbit(Y), key=lambda Z: (len(Z), sorted(Z)))
        seen.update(orb)
        orbits.append(orb)
    return FoldedCensus(f.d4, g2, inv, images, orbits, proj)


def folded_closure(census: FoldedCensus, X: Iterable[int]) -> RootSet:
    """Smallest member of the folded admissible collection containing X."""
    X = frozenset(X)
    over = [Y for Y in census.images if X <= Y]
    if not over:
        raise ClosureError(f"no admissible set contains {census.g2.format_set(X)}")
    mins = [Y for Y in over if not any(Z < Y for Z in over)]
    if len(mins) != 1:
        raise ClosureError(f"closure of {census.g2.format_set(X)} is not unique")
    return mins[0]
