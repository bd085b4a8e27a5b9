"""The Brauer monoid of type G2 as 39 normal forms with a monomial multiplication table.

A basis element is either a Weyl group element ``a`` or a sandwich ``u e_i v w`` with
``u`` in ``D_i``, ``v`` in ``K_i`` and ``w`` in ``D_i^op``:

* ``D_0 = (1, r1, r0 r1)``, ``D_1 = (1, r0, r1 r0)`` are coset representatives for the
  stabilizers ``N_i`` of the simple roots, and ``D_i^op`` lists their inverses;
* ``K_0 = {1}`` and ``K_1 = {1, r0 r1 r0 r1 r0}``.

Multiplication uses three facts taken as input and then checked against the presentation:
``n e_i = e_i n`` for ``n`` in ``N_i``; ``e_i`` absorbs ``r0`` and ``r1 r0 r1 r0 r1`` on the right
when ``i = 0`` and ``r1`` when ``i = 1``; and the twelve products ``e_beta e_j``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .presentations import G2_EBETA_TABLE, Relation, parse_word, presentation_for, word_str
from .roots import Root, RootError, RootSystem, root_system
from .weyl import WeylElement, WeylGroup

NODES = (0, 1)
KAPPA = {0: 3, 1: 1}
D_WORDS = {0: ((), (1,), (0, 1)), 1: ((), (0,), (1, 0))}
K_WORDS = {0: ((),), 1: ((), (0, 1, 0, 1, 0))}
N_GENERATORS = {0: ((0,), (1, 0, 1, 0, 1)), 1: ((1,), (0, 1, 0, 1, 0))}
# right factors absorbed by e_i
C_GENERATORS = {0: ((0,), (1, 0, 1, 0, 1)), 1: ((1,),)}
BASIS_SIZE = 12 + 3 * 3 * 1 + 3 * 3 * 2
# rank of Br(I2^6), a documented constant: 2 * 6 + (3/2) * 6^2
I2_6_RANK = 2 * 6 + Fraction(3, 2) * 6 ** 2


def _wstr(w: WeylElement) -> str:
    return " ".join(f"r{g}" for g in w.word) or "1"


@dataclass(frozen=True)
class G2NormalForm:
    """Either ``Group(a)`` (``i`` is None) or ``Sandwich(u, i, v, w)``."""

    u: WeylElement
    i: Optional[int] = None
    v: Optional[WeylElement] = None
    w: Optional[WeylElement] = None

    @property
    def is_group(self) -> bool:
        return self.i is None

    @property
    def key(self) -> tuple:
        if self.i is None:
            return ("g", self.u.image)
        return ("s", self.u.image, self.i, self.v.image, self.w.image)  # type: ignore[union-attr]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, G2NormalForm) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def word(self) -> Tuple[str, ...]:
        if self.i is None:
            return tuple(f"r{g}" for g in self.u.word)
        parts = [f"r{g}" for g in self.u.word] + [f"e{self.i}"]
        parts += [f"r{g}" for g in self.v.word + self.w.word]  # type: ignore[union-attr]
        return tuple(parts)

    def __str__(self) -> str:
        return word_str(self.word())


Scaled = Tuple[int, G2NormalForm]


@dataclass
class EBeta:
    beta: Root
    node: int
    conjugator: WeylElement
    form: G2NormalForm
    delta_exp: int = 0


class G2Monoid:
    """Normal forms, multiplication and normalization for BrM(G2)."""

    def __init__(self, rs: Optional[RootSystem] = None):
        self.rs = rs if rs is not None else root_system("G2")
        self.W = WeylGroup(self.rs)
        W = self.W
        self.one = W.identity
        self.simple_idx = {i: self.rs.simple_index(i) for i in NODES}
        self.D = {i: [W.from_word(d) for d in D_WORDS[i]] for i in NODES}
        self.Dop = {i: [W.inv(d) for d in self.D[i]] for i in NODES}
        self.K = {i: [W.from_word(k) for k in K_WORDS[i]] for i in NODES}
        self.N = {i: W.closure([W.from_word(g) for g in N_GENERATORS[i]]) for i in NODES}
        self.C = {i: set(W.closure([W.from_word(g) for g in C_GENERATORS[i]])) for i in NODES}
        self._split: Dict[int, Dict[WeylElement, Tuple[WeylElement, WeylElement]]] = {}
        self._kpart: Dict[int, Dict[WeylElement, WeylElement]] = {}
        for i in NODES:
            self._check_stabilizer(i)
            split = {}
            for g in W:
                for a in self.D[i]:
                    n = W.mul(W.inv(a), g)
                    if n in self.N[i]:
                        split[g] = (a, n)
                        break
                else:  # pragma: no cover - guarded by _check_stabilizer
                    raise AssertionError("D_i does not cover W")
            self._split[i] = split
            kp = {}
            for n in self.N[i]:
                ks = [k for k in self.K[i] if W.mul(n, W.inv(k)) in self.C[i]]
                if len(ks) != 1:
                    raise AssertionError(f"N_{i} is not C_{i} x K_{i}")
                kp[n] = ks[0]
            self._kpart[i] = kp
        self._ebeta_table = self._load_ebeta_table()
        self.basis: List[G2NormalForm] = [G2NormalForm(a) for a in W]
        for i in NODES:
            for u, v, w in product(self.D[i], self.K[i], self.Dop[i]):
                self.basis.append(G2NormalForm(u, i, v, w))
        self.index = {b.key: k for k, b in enumerate(self.basis)}

    # -- setup checks ----------------------------------------------------

    def _check_stabilizer(self, i: int) -> None:
        W = self.W
        b = self.simple_idx[i]
        stab = [g for g in W if g.image[b][0] == b]
        if set(stab) != set(self.N[i]) or len(stab) != 4:
            raise AssertionError(f"N_{i} is not the stabilizer of the simple root {i}")
        cosets = {frozenset(W.mul(d, n) for n in stab) for d in self.D[i]}
        if len(cosets) != 3 or len(set().union(*cosets)) != 12:
            raise AssertionError(f"D_{i} is not a set of left coset representatives")

    def _load_ebeta_table(self) -> Dict[Tuple[int, int], Tuple[int, WeylElement, int, WeylElement]]:
        W = self.W
        table = {}
        for conj, i, j, t, left, m, right in G2_EBETA_TABLE:
            c = W.from_word(tuple(int(s[1]) for s in parse_word(conj)))
            beta = c.image[self.simple_idx[i]][0]
            A = W.from_word(tuple(int(s[1]) for s in parse_word(left)))
            B = W.from_word(tuple(int(s[1]) for s in parse_word(right)))
            table[(beta, j)] = (t, A, m, B)
        if len(table) != 12:
            raise AssertionError("the e_beta e_j table must cover 6 roots x 2 nodes")
        return table

    # -- primitives ------------------------------------------------------

    def node_of(self, beta: int) -> int:
        """Node whose simple root lies in the orbit of ``beta`` (by length)."""
        r = self.rs.positive_roots[beta]
        for i in NODES:
            s = self.rs.positive_roots[self.simple_idx[i]]
            if self.rs.inner(r.coords, r.coords) == self.rs.inner(s.coords, s.coords):
                return i
        raise RootError("root of unknown length")  # pragma: no cover

    def group(self, a: WeylElement) -> G2NormalForm:
        return G2NormalForm(a)

    def generator(self, symbol: str) -> G2NormalForm:
        kind, node = symbol[0], int(symbol[1:])
        if node not in NODES or kind not in "re":
            raise ValueError(f"bad G2 generator {symbol!r}")
        if kind == "r":
            return G2NormalForm(self.W.from_word((node,)))
        return G2NormalForm(self.one, node, self.one, self.one)

    def left_group(self, g: WeylElement, x: G2NormalForm) -> G2NormalForm:
        W = self.W
        if x.i is None:
            return G2NormalForm(W.mul(g, x.u))
        a, n = self._split[x.i][W.mul(g, x.u)]
        return G2NormalForm(a, x.i, W.mul(self._kpart[x.i][n], x.v), x.w)

    def right_group(self, x: G2NormalForm, g: WeylElement) -> G2NormalForm:
        W = self.W
        if x.i is None:
            return G2NormalForm(W.mul(x.u, g))
        a, n = self._split[x.i][W.inv(W.mul(x.w, g))]
        return G2NormalForm(x.u, x.i, W.mul(x.v, self._kpart[x.i][n]), W.inv(a))

    def multiply(self, x: G2NormalForm, y: G2NormalForm) -> Scaled:
        W = self.W
        if x.i is None:
            return 0, self.left_group(x.u, y)
        if y.i is None:
            return 0, self.right_group(x, y.u)
        g = W.mul(W.mul(x.v, x.w), y.u)
        beta = W.inv(g).image[self.simple_idx[x.i]][0]
        t, A, m, B = self._ebeta_table[(beta, y.i)]
        core = G2NormalForm(self.one, m, self.one, self.one)
        left = W.mul(W.mul(x.u, g), A)
        right = W.mul(W.mul(B, y.v), y.w)
        return t, self.right_group(self.left_group(left, core), right)

    def normalize(self, word: Union[str, Sequence[str]]) -> Scaled:
        if isinstance(word, str):
            word = parse_word(word)
        exp = 0
        x = G2NormalForm(self.one)
        for s in word:
            if s == "delta":
                exp += 1
                continue
            if s == "delta^-1":
                exp -= 1
                continue
            t, x = self.multiply(x, self.generator(s))
            exp += t
        return exp, x

    def op(self, x: G2NormalForm) -> Scaled:
        return self.normalize(tuple(reversed(x.word())))

    def e_beta(self, beta: Union[int, Root]) -> EBeta:
        if isinstance(beta, Root):
            k, _sign = self.rs.locate(beta.coords)
        else:
            k = beta
        if not 0 <= k < len(self.rs.positive_roots):
            raise RootError(f"{beta!r} is not a root of G2")
        i = self.node_of(k)
        c = next(g for g in self.W if g.image[self.simple_idx[i]][0] == k)
        word = tuple(f"r{s}" for s in c.word) + (f"e{i}",) + tuple(f"r{s}" for s in reversed(c.word))
        exp, form = self.normalize(word)
        return EBeta(self.rs.positive_roots[k], i, c, form, exp)


# -- structure table and verification ---------------------------------------


@dataclass
class StructureTable:
    basis: List[G2NormalForm]
    product: List[List[Tuple[int, int]]]

    def to_rows(self) -> List[dict]:
        n = len(self.basis)
        return [
            {"i": a, "j": b, "delta_exp": self.product[a][b][0], "k": self.product[a][b][1]}
            for a in range(n)
            for b in range(n)
        ]

    def to_json(self) -> dict:
        return {"basis": [str(b) for b in self.basis], "products": self.to_rows()}

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.DictWriter(buf, fieldnames=["i", "j", "delta_exp", "k"], lineterminator="\n")
        wr.writeheader()
        wr.writerows(self.to_rows())
        return buf.getvalue()


@dataclass
class VerificationReport:
    basis_size: int = 0
    checks: Dict[str, bool] = field(default_factory=dict)
    details: Dict[str, object] = field(default_factory=dict)
    failures: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and not self.failures

    def record(self, name: str, ok: bool, **detail) -> None:
        self.checks[name] = ok
        if detail:
            self.details[name] = detail

    def fail(self, check: str, **info) -> None:
        if len([f for f in self.failures if f["check"] == check]) < 20:
            self.failures.append({"check": check, **info})

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "basis_size": self.basis_size,
            "checks": self.checks,
            "details": self.details,
            "failures": self.failures,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False, default=str)


def build_table(M: Optional[G2Monoid] = None) -> Tuple[StructureTable, List[List[Optional[Tuple[int, int]]]]]:
    """Multiply all pairs; entries whose product escapes the basis are ``None``."""
    M = M or G2Monoid()
    prod: List[List[Optional[Tuple[int, int]]]] = []
    for x in M.basis:
        row: List[Optional[Tuple[int, int]]] = []
        for y in M.basis:
            t, z = M.multiply(x, y)
            row.append((t, M.index[z.key]) if z.key in M.index else None)
        prod.append(row)
    return StructureTable(M.basis, prod), prod  # type: ignore[arg-type]


def two_sided_ideal(table: StructureTable, gen: int) -> set:
    """Basis indices spanning the two-sided ideal generated by one basis element."""
    P = table.product
    n = len(table.basis)
    return {P[P[a][gen][1]][b][1] for a in range(n) for b in range(n)}


def ideal_chain(M: G2Monoid, table: StructureTable) -> Tuple[int, int, int]:
    """Layer sizes of Br / (r1 r0 e1 r0 r1) / (e0 r1 r0 e1 r0 r1)."""
    top = M.index[M.normalize("r1 r0 e1 r0 r1")[1].key]
    bottom = M.index[M.normalize("e0 r1 r0 e1 r0 r1")[1].key]
    I1 = two_sided_ideal(table, top)
    I0 = two_sided_ideal(table, bottom)
    n = len(table.basis)
    return n - len(I1), len(I1) - len(I0), len(I0)


def relation_holds(M: G2Monoid, rel: Relation) -> Tuple[bool, Scaled, Scaled]:
    a = M.normalize(rel.lhs)
    b = M.normalize(rel.rhs)
    return a[1] == b[1] and a[0] == b[0] + rel.delta_shift, a, b


def build_table_and_verify(
    M: Optional[G2Monoid] = None, associativity: bool = True
) -> Tuple[StructureTable, VerificationReport]:
    from .presentations import g2_ebeta_relations, g2_lemma_set, g2_stabilizer_set

    M = M or G2Monoid()
    rep = VerificationReport(basis_size=len(M.basis))
    n = len(M.basis)
    counts = {"group": sum(b.is_group for b in M.basis)}
    for i in NODES:
        counts[f"e{i}"] = sum(b.i == i for b in M.basis)
    rep.record("basis_size", n == BASIS_SIZE, size=n, expected=BASIS_SIZE, counts=counts)
    rep.record("basis_distinct", len(M.index) == n)

    table, raw = build_table(M)
    missing = [(a, b) for a in range(n) for b in range(n) if raw[a][b] is None]
    for a, b in missing[:20]:
        rep.fail("closure", left=str(M.basis[a]), right=str(M.basis[b]))
    rep.record("closure", not missing, products=n * n)
    if missing:
        return table, rep
    P = table.product

    # every basis word normalizes to itself
    bad = [b for b in M.basis if M.normalize(b.word()) != (0, b)]
    for b in bad:
        rep.fail("basis_words", word=str(b))
    rep.record("basis_words", not bad)

    if associativity:
        fails = 0
        for a in range(n):
            Pa = P[a]
            for b in range(n):
                t1, ab = Pa[b]
                Pab = P[ab]
                Pb = P[b]
                for c in range(n):
                    t2, abc = Pab[c]
                    s1, bc = Pb[c]
                    s2, abc2 = Pa[bc]
                    if abc != abc2 or t1 + t2 != s1 + s2:
                        fails += 1
                        rep.fail("associativity", triple=[a, b, c])
        rep.record("associativity", fails == 0, triples=n ** 3, failures=fails)

    def check_relations(name: str, rels) -> None:
        ok = True
        for rel in rels:
            good, lhs, rhs = relation_holds(M, rel)
            if not good:
                ok = False
                rep.fail(name, relation=f"{rel.tag}: {rel}", lhs=f"δ^{lhs[0]} {lhs[1]}", rhs=f"δ^{rhs[0]} {rhs[1]}")
        rep.record(name, ok, count=len(list(rels)))

    p = presentation_for("G2")
    check_relations("defining_relations", p.relations)
    check_relations("derived_identities", g2_lemma_set().items)
    check_relations("stabilizer_identities", g2_stabilizer_set().items)
    check_relations("ebeta_products", g2_ebeta_relations().items)

    # op: anti-automorphism, involution, fixes generators
    ops = [M.op(b) for b in M.basis]
    op_idx = [(t, M.index[x.key]) for t, x in ops]
    ok = all(op_idx[op_idx[k][1]] == (-op_idx[k][0], k) for k in range(n))
    ok = ok and all(M.op(M.generator(s)) == (0, M.generator(s)) for s in ("r0", "r1", "e0", "e1"))
    anti = 0
    for a in range(n):
        for b in range(n):
            t, ab = P[a][b]
            ta, oa = op_idx[a]
            tb, ob = op_idx[b]
            s, ba = P[ob][oa]
            tab, oab = op_idx[ab]
            if oab != ba or t + tab != ta + tb + s:
                anti += 1
                rep.fail("op", pair=[a, b])
    group_inverse = all(
        op_idx[k] == (0, M.index[G2NormalForm(M.W.inv(b.u)).key]) for k, b in enumerate(M.basis) if b.is_group
    )
    rep.record("op_anti_involution", ok and anti == 0 and group_inverse, pairs=n * n, failures=anti)

    # e_beta: quadratic relation and independence of the conjugator
    ok = True
    for k, beta in enumerate(M.rs.positive_roots):
        eb = M.e_beta(k)
        i = eb.node
        t, sq = M.multiply(eb.form, eb.form)
        if sq != eb.form or t != KAPPA[i]:
            ok = False
            rep.fail("e_beta_square", root=M.rs.label(beta))
        for g in M.W:
            img, _sign = g.image[M.simple_idx[i]]
            if img != k:
                continue
            word = tuple(f"r{s}" for s in g.word) + (f"e{i}",) + tuple(f"r{s}" for s in reversed(g.word))
            if M.normalize(word) != (eb.delta_exp, eb.form):
                ok = False
                rep.fail("e_beta_conjugator", root=M.rs.label(beta), conjugator=_wstr(g))
    rep.record("e_beta", ok)

    layers = ideal_chain(M, table)
    rep.record("ideal_chain", layers == (12, 18, 9), layers=list(layers))
    rep.record("I2_6_rank_constant", I2_6_RANK == 66, value=I2_6_RANK)
    return table, rep


@lru_cache(maxsize=1)
def default_monoid() -> G2Monoid:
    return G2Monoid()


def normalize(word: Union[str, Sequence[str]]) -> Scaled:
    return default_monoid().normalize(word)


def multiply(x: G2NormalForm, y: G2NormalForm) -> Scaled:
    return default_monoid().multiply(x, y)


def e_beta(beta: Union[int, Root]) -> EBeta:
    return default_monoid().e_beta(beta)
