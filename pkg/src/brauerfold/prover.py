"""Bounded bidirectional search for equalities in a monoid presentation.

Words are kept free of the loop parameter: a search state is a word ``w`` together with an
exponent ``e`` such that the starting word equals ``delta^e w``. A rewrite with the relation
``lhs = delta^k rhs`` moves ``lhs -> rhs`` with exponent change ``+k`` (LR) or ``rhs -> lhs``
with ``-k`` (RL). When the two searches meet, the exponent difference is the proved power.

The search answers "found" with a replayable trace or returns :class:`NotFound`; it is not a
decision procedure.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import kernels
from .presentations import (
    DerivedRelationSet,
    Presentation,
    Relation,
    Word,
    WordError,
    parse_word,
    word_str,
)

LR = "LR"
RL = "RL"


@dataclass(frozen=True)
class SearchBounds:
    """Limits for one search.

    With ``iterative`` set, the search is repeated with word-length caps growing from the
    longer input word up to ``max_word_length``; each attempt is a full bidirectional search.
    """

    max_depth: int = 24
    max_word_length: int = 20
    max_frontier: int = 2_000_000
    iterative: bool = True

    def __post_init__(self) -> None:
        if min(self.max_depth, self.max_word_length, self.max_frontier) <= 0:
            raise ValueError("search bounds must be positive")

    def to_json(self) -> dict:
        return {
            "max_depth": self.max_depth,
            "max_word_length": self.max_word_length,
            "max_frontier": self.max_frontier,
            "iterative": self.iterative,
        }


@dataclass(frozen=True)
class Step:
    position: int
    tag: str
    direction: str
    delta_shift: int

    def inverse(self) -> "Step":
        return Step(self.position, self.tag, RL if self.direction == LR else LR, -self.delta_shift)

    def shifted(self, offset: int) -> "Step":
        return Step(self.position + offset, self.tag, self.direction, self.delta_shift)


@dataclass
class ProofTrace:
    start: Word
    end: Word
    steps: List[Step]
    total_delta: int
    states_visited: int = 0
    seconds: float = 0.0

    def __bool__(self) -> bool:
        return True

    @property
    def depth(self) -> int:
        return len(self.steps)

    def reversed(self) -> "ProofTrace":
        return ProofTrace(
            self.end, self.start, [s.inverse() for s in reversed(self.steps)], -self.total_delta
        )

    def to_json(self) -> dict:
        return {
            "start": word_str(self.start),
            "end": word_str(self.end),
            "total_delta": self.total_delta,
            "steps": [
                {"position": s.position, "tag": s.tag, "direction": s.direction, "delta_shift": s.delta_shift}
                for s in self.steps
            ],
        }

    @classmethod
    def from_json(cls, d: dict) -> "ProofTrace":
        steps = [Step(s["position"], s["tag"], s["direction"], s["delta_shift"]) for s in d["steps"]]
        return cls(parse_word(d["start"]), parse_word(d["end"]), steps, d["total_delta"])

    def format(self, rules: Optional[Dict[str, Relation]] = None) -> str:
        lines = [f"{word_str(self.start)}  =  δ^{self.total_delta} {word_str(self.end)}"]
        w = self.start
        exp = 0
        for n, s in enumerate(self.steps, 1):
            if rules is not None and s.tag in rules:
                w, exp = _apply_step(w, exp, s, rules[s.tag])
                lines.append(f"{n:3d}. {s.tag} {s.direction} @{s.position}: δ^{exp} {word_str(w)}")
            else:
                lines.append(f"{n:3d}. {s.tag} {s.direction} @{s.position} (δ^{s.delta_shift})")
        return "\n".join(lines)


@dataclass
class NotFound:
    start: Word
    end: Word
    reason: str  # "frontier", "exhausted" or "depth"
    bounds: SearchBounds
    states_visited: int = 0
    seconds: float = 0.0

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {
            "start": word_str(self.start),
            "end": word_str(self.end),
            "found": False,
            "reason": self.reason,
            "bounds": self.bounds.to_json(),
            "states_visited": self.states_visited,
        }


# -- rule pool --------------------------------------------------------------


class RulePool:
    """Directed rewrite rules over a byte encoding of the alphabet."""

    def __init__(self, p: Presentation, lemmas: Iterable[Relation] = ()):
        self.presentation = p
        self.alphabet = p.alphabet
        self.code = {s: bytes([65 + k]) for k, s in enumerate(self.alphabet)}
        self.decode_map = {65 + k: s for k, s in enumerate(self.alphabet)}
        self.relations: Dict[str, Relation] = {}
        self.rules: List[Tuple[bytes, bytes, int]] = []
        self.meta: List[Tuple[str, str, int]] = []
        for rel in p.relations:
            self.add(rel)
        for rel in lemmas:
            self.add(rel)

    def add(self, rel: Relation) -> None:
        if rel.tag in self.relations:
            if self.relations[rel.tag] == rel:
                return
            raise ValueError(f"duplicate relation tag {rel.tag!r}")
        self.relations[rel.tag] = rel
        lhs, rhs = self.encode(rel.lhs), self.encode(rel.rhs)
        if lhs == rhs:
            return
        self.rules.append((lhs, rhs, rel.delta_shift))
        self.meta.append((rel.tag, LR, rel.delta_shift))
        self.rules.append((rhs, lhs, -rel.delta_shift))
        self.meta.append((rel.tag, RL, -rel.delta_shift))

    def encode(self, w: Sequence[str]) -> bytes:
        try:
            return b"".join(self.code[s] for s in w)
        except KeyError as exc:
            raise WordError(f"symbol {exc.args[0]!r} not in the alphabet of {self.presentation.name}") from None

    def decode(self, b: bytes) -> Word:
        return tuple(self.decode_map[c] for c in b)


def _as_word(w: Union[str, Sequence[str]]) -> Word:
    return parse_word(w) if isinstance(w, str) else tuple(w)


def _lemma_items(lemmas) -> List[Relation]:
    if lemmas is None:
        return []
    if isinstance(lemmas, DerivedRelationSet):
        return list(lemmas.items)
    return list(lemmas)


def _path(seen: Dict[bytes, tuple], w: bytes, pool: RulePool) -> List[Step]:
    """Steps from the root of ``seen`` to ``w``."""
    steps = []
    while True:
        _exp, parent, ri, pos = seen[w]
        if parent is None:
            break
        tag, direction, shift = pool.meta[ri]
        steps.append(Step(pos, tag, direction, shift))
        w = parent
    steps.reverse()
    return steps


def search(a: Word, b: Word, pool: RulePool, bounds: SearchBounds) -> Union[ProofTrace, NotFound]:
    """Bidirectional search; with ``bounds.iterative`` the length cap grows step by step."""
    t0 = time.perf_counter()
    top = max(bounds.max_word_length, len(a), len(b))
    caps = range(max(len(a), len(b)), top + 1) if bounds.iterative else [top]
    visited = 0
    for L in caps:
        res = _search_capped(a, b, pool, bounds, L)
        visited += res.states_visited
        if res or L == top:
            break
    res.states_visited = visited
    res.seconds = time.perf_counter() - t0
    return res


def _search_capped(a: Word, b: Word, pool: RulePool, bounds: SearchBounds, L: int) -> Union[ProofTrace, NotFound]:
    t0 = time.perf_counter()
    A, B = pool.encode(a), pool.encode(b)
    fwd: Dict[bytes, tuple] = {A: (0, None, -1, -1)}
    bwd: Dict[bytes, tuple] = {B: (0, None, -1, -1)}
    ff, fb = [A], [B]
    df = db = 0
    meet = A if A in bwd else None
    while meet is None:
        if df + db >= bounds.max_depth:
            reason = "depth"
            break
        if not ff or not fb:
            reason = "exhausted"
            break
        if len(fwd) + len(bwd) > bounds.max_frontier:
            reason = "frontier"
            break
        if len(ff) <= len(fb):
            ff = kernels.expand_level(ff, pool.rules, L, fwd)
            df += 1
            other, new = bwd, ff
        else:
            fb = kernels.expand_level(fb, pool.rules, L, bwd)
            db += 1
            other, new = fwd, fb
        for w in new:
            if w in other:
                meet = w
                break
    visited = len(fwd) + len(bwd)
    dt = time.perf_counter() - t0
    if meet is None:
        return NotFound(a, b, reason, bounds, visited, dt)
    steps = _path(fwd, meet, pool) + [s.inverse() for s in reversed(_path(bwd, meet, pool))]
    return ProofTrace(a, b, steps, fwd[meet][0] - bwd[meet][0], visited, dt)


def prove_equal(
    a: Union[str, Sequence[str]],
    b: Union[str, Sequence[str]],
    p: Presentation,
    lemmas: Union[DerivedRelationSet, Iterable[Relation], None] = None,
    bounds: Optional[SearchBounds] = None,
) -> Union[ProofTrace, NotFound]:
    """Search for a chain of single-relation rewrites from ``a`` to ``b``."""
    pool = RulePool(p, _lemma_items(lemmas))
    return search(_as_word(a), _as_word(b), pool, bounds or SearchBounds())


# -- replay -------------------------------------------------------------------


class ReplayError(AssertionError):
    def __init__(self, index: int, message: str):
        super().__init__(f"step {index}: {message}")
        self.index = index


def _apply_step(w: Word, exp: int, s: Step, rel: Relation) -> Tuple[Word, int]:
    if s.direction == LR:
        pat, rep, shift = rel.lhs, rel.rhs, rel.delta_shift
    elif s.direction == RL:
        pat, rep, shift = rel.rhs, rel.lhs, -rel.delta_shift
    else:
        raise ValueError(f"bad direction {s.direction!r}")
    if shift != s.delta_shift:
        raise ValueError(f"recorded shift {s.delta_shift} but relation gives {shift}")
    if not 0 <= s.position <= len(w) - len(pat) or w[s.position:s.position + len(pat)] != pat:
        raise ValueError(f"{word_str(pat)} does not occur at position {s.position} of {word_str(w)}")
    return w[: s.position] + rep + w[s.position + len(pat):], exp + shift


def replay_checked(t: ProofTrace, p: Presentation, lemmas: Iterable[Relation] = ()) -> int:
    """Replay ``t`` on symbol tuples; return the accumulated exponent or raise ReplayError."""
    rels = {r.tag: r for r in p.relations}
    for r in _lemma_items(lemmas):
        rels.setdefault(r.tag, r)
    w: Word = tuple(t.start)
    exp = 0
    for k, s in enumerate(t.steps):
        rel = rels.get(s.tag)
        if rel is None:
            raise ReplayError(k, f"unknown relation {s.tag!r}")
        try:
            w, exp = _apply_step(w, exp, s, rel)
        except ValueError as exc:
            raise ReplayError(k, str(exc)) from None
    if w != tuple(t.end):
        raise ReplayError(len(t.steps), f"ended at {word_str(w)}, expected {word_str(t.end)}")
    if exp != t.total_delta:
        raise ReplayError(len(t.steps), f"exponent {exp}, expected {t.total_delta}")
    return exp


def replay(t: ProofTrace, p: Presentation, lemmas: Iterable[Relation] = ()) -> bool:
    try:
        replay_checked(t, p, lemmas)
    except ReplayError:
        return False
    return True


def expand_trace(t: ProofTrace, proofs: Dict[str, ProofTrace]) -> ProofTrace:
    """Inline lemma steps so the trace uses defining relations only."""
    out: List[Step] = []
    for s in t.steps:
        sub = proofs.get(s.tag)
        if sub is None:
            out.append(s)
            continue
        sub = expand_trace(sub, proofs)
        seq = sub.steps if s.direction == LR else [x.inverse() for x in reversed(sub.steps)]
        out.extend(x.shifted(s.position) for x in seq)
    return ProofTrace(t.start, t.end, out, t.total_delta, t.states_visited, t.seconds)


# -- lemma pipelines --------------------------------------------------------


@dataclass
class LemmaResult:
    relation: Relation
    result: Union[ProofTrace, NotFound]
    replayed: bool
    replayed_expanded: bool
    delta_matches: bool

    @property
    def ok(self) -> bool:
        return bool(self.result) and self.replayed and self.replayed_expanded and self.delta_matches

    def to_json(self) -> dict:
        d = {
            "tag": self.relation.tag,
            "relation": str(self.relation),
            "ok": self.ok,
            "replayed": self.replayed,
            "replayed_from_defining_relations": self.replayed_expanded,
            "delta_matches": self.delta_matches,
            "seconds": round(self.result.seconds, 3),
            "states_visited": self.result.states_visited,
        }
        if self.result:
            d["depth"] = self.result.depth
            d["trace"] = self.result.to_json()
        else:
            d["reason"] = self.result.reason
            d["bounds"] = self.result.bounds.to_json()
        return d


@dataclass
class PipelineReport:
    presentation: str
    results: List[LemmaResult] = field(default_factory=list)
    proofs: Dict[str, ProofTrace] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> List[LemmaResult]:
        return [r for r in self.results if not r.ok]

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation,
            "ok": self.ok,
            "items": [r.to_json() for r in self.results],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)


def certify_relation(
    rel: Relation, pool: RulePool, proofs: Dict[str, ProofTrace], bounds: SearchBounds
) -> LemmaResult:
    p = pool.presentation
    res = search(rel.lhs, rel.rhs, pool, bounds)
    if not res:
        return LemmaResult(rel, res, False, False, False)
    lemmas = [pool.relations[t] for t in proofs]
    replayed = replay(res, p, lemmas)
    replayed_expanded = replay(expand_trace(res, proofs), p)
    return LemmaResult(rel, res, replayed, replayed_expanded, res.total_delta == rel.delta_shift)


def certify_lemma_pipeline(
    p: Presentation,
    sets: Sequence[Union[DerivedRelationSet, Sequence[Relation]]],
    bounds: Optional[SearchBounds] = None,
    per_item_bounds: Optional[Dict[str, SearchBounds]] = None,
) -> PipelineReport:
    """Prove each item in order; certified items join the rule pool for later items.

    Items within one set are added as soon as they are certified, matching the order in which
    the identities are derived from one another.
    """
    bounds = bounds or SearchBounds()
    per_item_bounds = per_item_bounds or {}
    pool = RulePool(p)
    report = PipelineReport(p.name)
    for s in sets:
        for rel in _lemma_items(s):
            r = certify_relation(rel, pool, report.proofs, per_item_bounds.get(rel.tag, bounds))
            report.results.append(r)
            if r.ok:
                report.proofs[rel.tag] = r.result  # type: ignore[assignment]
                pool.add(rel)
    return report
