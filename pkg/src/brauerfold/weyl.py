"""Finite Weyl groups realized by their signed action on positive roots."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .roots import RootSystem

SignedImage = Tuple[Tuple[int, int], ...]
RootSet = FrozenSet[int]


class ResourceError(RuntimeError):
    """Enumeration exceeded its size budget."""


@dataclass(frozen=True, eq=False)
class WeylElement:
    """Group element; ``word`` (g1, ..., gk) means r_g1 r_g2 ... r_gk.

    Equality and hashing go through ``image`` only, since words are not canonical.
    """

    image: SignedImage
    word: Tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeylElement) and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    @property
    def length(self) -> int:
        return len(self.word)

    def apply_index(self, k: int) -> Tuple[int, int]:
        return self.image[k]

    def word_str(self, prefix: str = "r") -> str:
        return " ".join(f"{prefix}{g}" for g in self.word) or "1"


def compose(a: SignedImage, b: SignedImage) -> SignedImage:
    """Signed image of a∘b (apply b first)."""
    out = []
    for j, s in b:
        m, t = a[j]
        out.append((m, s * t))
    return tuple(out)


def invert(a: SignedImage) -> SignedImage:
    out = [None] * len(a)
    for k, (j, s) in enumerate(a):
        out[j] = (k, s)
    return tuple(out)  # type: ignore[arg-type]


def reflection_image(rs: RootSystem, alpha) -> SignedImage:
    return tuple(rs.locate(rs.reflect_root(alpha, r)) for r in rs.positive_roots)


@dataclass(eq=False)
class Subgroup:
    generators: List[WeylElement]
    elements: List[WeylElement]

    def __contains__(self, w: WeylElement) -> bool:
        return w in self._set

    def __len__(self) -> int:
        return len(self.elements)

    def __post_init__(self) -> None:
        self._set = frozenset(self.elements)


class WeylGroup:
    """All elements of W(rs), in breadth-first order over right multiplication by generators.

    Each element keeps the lexicographically least among its shortest words, so the element
    list is sorted by (length, word).
    """

    def __init__(self, rs: RootSystem, max_size: int = 100_000):
        self.rs = rs
        self.gen_images: Dict[int, SignedImage] = {
            node: reflection_image(rs, rs.simple(node)) for node in rs.nodes
        }
        ident = tuple((k, 1) for k in range(len(rs.positive_roots)))
        self.identity = WeylElement(ident, ())
        self.elements: List[WeylElement] = [self.identity]
        self._by_image: Dict[SignedImage, WeylElement] = {ident: self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for g in rs.nodes:
                    img = compose(w.image, self.gen_images[g])
                    if img in self._by_image:
                        continue
                    if len(self.elements) >= max_size:
                        raise ResourceError(f"|W({rs.type_label})| exceeds {max_size}")
                    e = WeylElement(img, w.word + (g,))
                    self._by_image[img] = e
                    self.elements.append(e)
                    nxt.append(e)
            frontier = nxt
        self._position = {e.image: i for i, e in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def generator(self, node: int) -> WeylElement:
        return self._by_image[self.gen_images[node]]

    def position(self, w: WeylElement) -> int:
        return self._position[w.image]

    def canonical(self, image: SignedImage) -> WeylElement:
        return self._by_image[image]

    def mul(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self._by_image[compose(a.image, b.image)]

    def inv(self, a: WeylElement) -> WeylElement:
        return self._by_image[invert(a.image)]

    def from_word(self, word: Iterable[int]) -> WeylElement:
        img = self.identity.image
        for g in word:
            img = compose(img, self.gen_images[g])
        return self._by_image[img]

    def act(self, w: WeylElement, B: Iterable[int]) -> RootSet:
        """w{b1..bp} = Phi+ ∩ {±w b1, ..., ±w bp}, on positive-root indices."""
        img = w.image
        return frozenset(img[k][0] for k in B)

    def orbit(self, B: Iterable[int]) -> List[RootSet]:
        start = frozenset(B)
        seen = {start: None}
        order = [start]
        todo = [start]
        gens = [self.gen_images[g] for g in self.rs.nodes]
        while todo:
            X = todo.pop()
            for img in gens:
                Y = frozenset(img[k][0] for k in X)
                if Y not in seen:
                    seen[Y] = None
                    order.append(Y)
                    todo.append(Y)
        return order

    def stabilizer(self, B: Iterable[int]) -> Subgroup:
        B = frozenset(B)
        elems = [w for w in self.elements if self.act(w, B) == B]
        return Subgroup(self.minimal_generators(elems), elems)

    def closure(self, gens: Sequence[WeylElement]) -> List[WeylElement]:
        seen = {self.identity}
        todo = [self.identity]
        while todo:
            x = todo.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return sorted(seen, key=self.position)

    def subgroup(self, gens: Sequence[WeylElement]) -> Subgroup:
        return Subgroup(list(gens), self.closure(gens))

    def minimal_generators(self, elems: Sequence[WeylElement]) -> List[WeylElement]:
        """Greedy generating set, scanning elements in (length, word) order."""
        gens: List[WeylElement] = []
        span = {self.identity}
        for w in sorted(elems, key=self.position):
            if w not in span:
                gens.append(w)
                span = set(self.closure(gens))
        return gens

    def coset_reps(self, sub: Subgroup) -> List[WeylElement]:
        """Left-coset representatives of ``sub``: minimal length, lexicographic ties."""
        covered = set()
        reps = []
        for g in self.elements:
            if g in covered:
                continue
            reps.append(g)
            for h in sub.elements:
                covered.add(self.mul(g, h))
        return reps


def enumerate_group(rs: RootSystem, max_size: int = 100_000) -> List[WeylElement]:
    return WeylGroup(rs, max_size).elements


def act_on_rootset(w: WeylElement, B: Iterable[int]) -> RootSet:
    return frozenset(w.image[k][0] for k in B)
