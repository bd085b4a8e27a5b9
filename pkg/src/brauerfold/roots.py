"""Root systems of type A_n and D_n in epsilon coordinates, triality on D4, and the folded G2."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

Vector = Tuple[Fraction, ...]

DESK_LIMITS = {"A": (1, 8), "D": (4, 8)}


class ConfigurationError(ValueError):
    """Unsupported type label or rank."""


class RootError(ValueError):
    """A vector was expected to be a root of the system and is not."""


def vec(*xs) -> Vector:
    return tuple(Fraction(x) for x in xs)


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def scale(c, x: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in x)


def neg(x: Vector) -> Vector:
    return tuple(-a for a in x)


def reflect(alpha: Vector, x: Vector) -> Vector:
    """s_alpha(x) = x - 2 (x, alpha) / (alpha, alpha) * alpha."""
    c = 2 * dot(x, alpha) / dot(alpha, alpha)
    return tuple(a - c * b for a, b in zip(x, alpha))


def _solve(matrix: List[List[Fraction]], rhs: List[Fraction]) -> List[Fraction]:
    # Gauss-Jordan over Q; the Gram matrix of a root base is nonsingular.
    n = len(matrix)
    m = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


@dataclass(frozen=True)
class Root:
    coords: Vector
    simple_coords: Tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(abs(c) for c in self.simple_coords)

    def __neg__(self) -> "Root":
        return Root(neg(self.coords), tuple(-c for c in self.simple_coords))

    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.simple_coords)


@dataclass(eq=False)
class RootSystem:
    """Finite crystallographic root system given by simple roots in an ambient space.

    ``nodes`` carries the diagram labels (1..n for A/D, 0..1 for G2); ``positive_roots``
    is sorted by height, simple roots first in node order.
    """

    type_label: str
    nodes: Tuple[int, ...]
    simple_roots: Tuple[Root, ...]
    positive_roots: Tuple[Root, ...] = ()
    prefix: str = "a"
    _index: Dict[Vector, int] = field(default_factory=dict, repr=False)
    _gram: List[List[Fraction]] = field(default_factory=list, repr=False)

    @classmethod
    def from_simple_vectors(
        cls, label: str, nodes: Sequence[int], vectors: Sequence[Vector], prefix: str = "a"
    ) -> "RootSystem":
        gram = [[dot(a, b) for b in vectors] for a in vectors]
        rs = cls(label, tuple(nodes), (), prefix=prefix)
        rs._gram = gram
        simple = []
        for k, v in enumerate(vectors):
            sc = tuple(1 if j == k else 0 for j in range(len(vectors)))
            simple.append(Root(tuple(v), sc))
        rs.simple_roots = tuple(simple)
        # Closure of the simple roots under simple reflections is the whole of Phi.
        seen = {tuple(v) for v in vectors}
        todo = list(seen)
        while todo:
            x = todo.pop()
            for a in vectors:
                y = reflect(a, x)
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        pos = []
        for x in seen:
            sc = rs._simple_coords_raw(x)
            if all(c >= 0 for c in sc):
                pos.append(Root(x, sc))
        pos.sort(key=lambda r: (r.height, tuple(-c for c in r.simple_coords)))
        rs.positive_roots = tuple(pos)
        rs._index = {r.coords: i for i, r in enumerate(pos)}
        return rs

    @property
    def rank(self) -> int:
        return len(self.nodes)

    @property
    def dim(self) -> int:
        return len(self.simple_roots[0].coords)

    def node_position(self, node: int) -> int:
        return self.nodes.index(node)

    def simple(self, node: int) -> Root:
        return self.simple_roots[self.node_position(node)]

    def simple_index(self, node: int) -> int:
        return self._index[self.simple(node).coords]

    def _simple_coords_raw(self, x: Vector) -> Tuple[int, ...]:
        vectors = [r.coords for r in self.simple_roots]
        rhs = [dot(x, a) for a in vectors]
        c = _solve(self._gram, rhs)
        back = tuple(sum((ci * a[t] for ci, a in zip(c, vectors)), Fraction(0)) for t in range(len(x)))
        if back != tuple(x) or any(ci.denominator != 1 for ci in c):
            raise RootError(f"{x} is not in the root lattice of {self.type_label}")
        return tuple(int(ci) for ci in c)

    def inner(self, x, y) -> Fraction:
        x = x.coords if isinstance(x, Root) else x
        y = y.coords if isinstance(y, Root) else y
        return dot(x, y)

    def root(self, x: Vector) -> Root:
        """Return the root with ambient coordinates ``x`` (positive or negative)."""
        x = tuple(Fraction(a) for a in x)
        if x in self._index:
            return self.positive_roots[self._index[x]]
        if neg(x) in self._index:
            return -self.positive_roots[self._index[neg(x)]]
        raise RootError(f"{x} is not a root of {self.type_label}")

    def from_simple_coords(self, coeffs: Sequence[int]) -> Root:
        x = tuple(Fraction(0) for _ in range(self.dim))
        for c, a in zip(coeffs, self.simple_roots):
            x = add(x, scale(c, a.coords))
        return self.root(x)

    def locate(self, x) -> Tuple[int, int]:
        """(positive-root index, sign) with x = sign * positive_roots[index]."""
        x = x.coords if isinstance(x, Root) else tuple(x)
        i = self._index.get(x)
        if i is not None:
            return i, 1
        i = self._index.get(neg(x))
        if i is not None:
            return i, -1
        raise RootError(f"{x} is not a root of {self.type_label}")

    def is_root(self, x) -> bool:
        x = x.coords if isinstance(x, Root) else tuple(x)
        return x in self._index or neg(x) in self._index

    def index(self, r: Root) -> int:
        i, s = self.locate(r)
        if s < 0:
            raise RootError(f"{r} is negative")
        return i

    def reflect_root(self, alpha, x) -> Root:
        a = alpha.coords if isinstance(alpha, Root) else alpha
        xc = x.coords if isinstance(x, Root) else x
        return self.root(reflect(a, xc))

    def adjacent(self, i: int, j: int) -> bool:
        """Nodes joined by an edge of the Coxeter diagram."""
        return i != j and self.inner(self.simple(i), self.simple(j)) != 0

    def label(self, r: Root) -> str:
        """Sum notation in simple roots, e.g. ``a1+a2+2a3+a4``."""
        parts = []
        for c, node in zip(r.simple_coords, self.nodes):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}{self.prefix}{node}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    def parse_root(self, text: str) -> Root:
        """Parse ``a1+a2+2a3+a4`` (prefix ``b`` for G2) or a bracketed coefficient list."""
        text = text.strip().replace(" ", "")
        if text.startswith("[") or text.startswith("("):
            coeffs = [int(t) for t in re.split(r"[;:\s]+|,", text.strip("[]()")) if t]
            if len(coeffs) != self.rank:
                raise RootError(f"expected {self.rank} coefficients in {text!r}")
            return self.from_simple_coords(coeffs)
        coeffs = [0] * self.rank
        pat = re.compile(r"([+-]?)(\d*)([a-zA-Z])(\d+)")
        pos = 0
        for m in pat.finditer(text):
            if m.start() != pos:
                raise RootError(f"cannot parse root {text!r}")
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            mult = int(m.group(2)) if m.group(2) else 1
            node = int(m.group(4))
            if node not in self.nodes:
                raise RootError(f"no node {node} in {self.type_label}")
            coeffs[self.node_position(node)] += sign * mult
        if pos != len(text) or not text:
            raise RootError(f"cannot parse root {text!r}")
        return self.from_simple_coords(coeffs)

    def parse_set(self, text: str) -> frozenset:
        """Comma-separated roots (brackets may contain commas) -> positive-root indices."""
        tokens, depth, cur = [], 0, ""
        for ch in text:
            if ch in "[(":
                depth += 1
            elif ch in "])":
                depth -= 1
            if ch == "," and depth == 0:
                tokens.append(cur)
                cur = ""
            else:
                cur += ch
        if cur.strip():
            tokens.append(cur)
        return frozenset(self.locate(self.parse_root(t))[0] for t in tokens if t.strip())

    def format_set(self, B) -> str:
        return "{" + ", ".join(self.label(self.positive_roots[i]) for i in sorted(B)) + "}"

    def to_json(self) -> dict:
        return {
            "type": self.type_label,
            "simple_roots": [[str(c) for c in r.coords] for r in self.simple_roots],
            "positive_roots": [[str(c) for c in r.coords] for r in self.positive_roots],
            "simple_coords": [list(r.simple_coords) for r in self.positive_roots],
            "heights": [r.height for r in self.positive_roots],
        }


def _epsilon(n: int, i: int) -> Vector:
    # epsilon_i with 1-based index
    return tuple(Fraction(1 if k == i - 1 else 0) for k in range(n))


def build_root_system(type_label: str, rank: Optional[int] = None) -> RootSystem:
    """A_n in R^{n+1} (a_i = e_{i+1} - e_i) or D_n in R^n (a_1 = e_1 + e_2, a_i = e_i - e_{i-1})."""
    if rank is None:
        m = re.fullmatch(r"\s*([A-Za-z])\s*\(?(\d+)\)?\s*", type_label)
        if not m:
            raise ConfigurationError(f"cannot parse type {type_label!r}")
        type_label, rank = m.group(1), int(m.group(2))
    kind = type_label.upper()
    if kind not in DESK_LIMITS:
        raise ConfigurationError(f"unsupported type {type_label!r}; use A or D (G2 via folding)")
    lo, hi = DESK_LIMITS[kind]
    if not lo <= rank <= hi:
        raise ConfigurationError(f"{kind}{rank} outside desk limits {lo}..{hi}")
    if kind == "A":
        n = rank + 1
        simple = [add(_epsilon(n, i + 1), neg(_epsilon(n, i))) for i in range(1, rank + 1)]
    else:
        n = rank
        simple = [add(_epsilon(n, 1), _epsilon(n, 2))]
        simple += [add(_epsilon(n, i), neg(_epsilon(n, i - 1))) for i in range(2, n + 1)]
    return RootSystem.from_simple_vectors(f"{kind}{rank}", range(1, rank + 1), simple)


def height(rs: RootSystem, r) -> int:
    if isinstance(r, Root):
        r = r.coords
    return rs.root(r).height


SIGMA_MATRIX: Tuple[Tuple[Fraction, ...], ...] = tuple(
    tuple(Fraction(x, 2) for x in row)
    for row in ((-1, -1, -1, 1), (1, 1, -1, 1), (1, -1, 1, 1), (-1, 1, 1, 1))
)


@dataclass(eq=False)
class FoldingMap:
    """Triality sigma on R^4 (columns act on column vectors) with its D4 root system."""

    d4: RootSystem
    sigma_matrix: Tuple[Tuple[Fraction, ...], ...] = SIGMA_MATRIX
    order: int = 3

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return tuple(dot(row, v) for row in self.sigma_matrix)

    def power(self, v: Sequence[Fraction], k: int) -> Vector:
        out = tuple(Fraction(a) for a in v)
        for _ in range(k % self.order):
            out = self.apply(out)
        return out

    def root_permutation(self) -> Tuple[int, ...]:
        """sigma on positive-root indices of D4 (sigma preserves positivity)."""
        out = []
        for r in self.d4.positive_roots:
            i, s = self.d4.locate(self.apply(r.coords))
            if s < 0:
                raise RootError("sigma does not preserve positivity")
            out.append(i)
        return tuple(out)


def triality() -> FoldingMap:
    return FoldingMap(build_root_system("D", 4))


def sigma_apply(f: FoldingMap, r) -> Root:
    coords = r.coords if isinstance(r, Root) else r
    return f.d4.root(f.apply(coords))


def reynolds(f: FoldingMap, v: Sequence[Fraction]) -> Vector:
    """x -> (x + sigma x + sigma^2 x) / 3."""
    v = tuple(Fraction(a) for a in v)
    s1 = f.apply(v)
    s2 = f.apply(s1)
    return tuple((a + b + c) / 3 for a, b, c in zip(v, s1, s2))


def build_g2_roots(f: FoldingMap) -> RootSystem:
    """G2 with simple roots b0 = p(a1) (short) and b1 = p(a3) (long), in epsilon coordinates.

    Elsewhere the G2 simple roots are sometimes written alpha_0, alpha_1; here they are b0, b1.
    """
    b0 = reynolds(f, f.d4.simple(1).coords)
    b1 = reynolds(f, f.d4.simple(3).coords)
    return RootSystem.from_simple_vectors("G2", (0, 1), [b0, b1], prefix="b")


def root_system(label: str) -> RootSystem:
    """Parse ``A4``, ``D4``, ``G2``."""
    if label.strip().upper() in ("G2", "G2-FOLDED"):
        return build_g2_roots(triality())
    return build_root_system(label)
