"""Exact scalars: rationals (from :mod:`fractions`) and Laurent polynomials in delta."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

Rational = Fraction

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """Element of Z[delta, delta^-1] stored as sorted (exponent, coefficient) pairs.

    Zero coefficients are never stored, so structural equality is ring equality.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[int, int], Iterable[Tuple[int, int]], None] = None):
        acc: Dict[int, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for exp, coeff in items:
                acc[int(exp)] = acc.get(int(exp), 0) + int(coeff)
        self._terms: Tuple[Tuple[int, int], ...] = tuple(
            sorted((e, c) for e, c in acc.items() if c != 0)
        )

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def delta(cls, power: int = 1) -> "LaurentPoly":
        return cls({power: 1})

    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def monomial_exponent(self) -> int:
        """Exponent of a single-term value; raises ValueError otherwise."""
        if len(self._terms) != 1:
            raise ValueError(f"{self} is not a monomial")
        return self._terms[0][0]

    @staticmethod
    def _coerce(other: Scalar) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other})
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Scalar) -> "LaurentPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return LaurentPoly(list(self._terms) + list(o._terms))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly((e, -c) for e, c in self._terms)

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_monomial() and o.is_monomial():
            (e1, c1), (e2, c2) = self._terms[0], o._terms[0]
            return LaurentPoly({e1 + e2: c1 * c2})
        acc: Dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in o._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial() or abs(self._terms[0][1]) != 1:
                raise ValueError("only unit monomials are invertible")
            e, c = self._terms[0]
            return LaurentPoly({e * n: c ** (-n)})
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def to_json(self) -> Dict[str, int]:
        return {str(e): c for e, c in self._terms}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(k): int(v) for k, v in data.items()})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in reversed(self._terms):
            if e == 0:
                body = str(c)
            else:
                mono = "δ" if e == 1 else f"δ^{e}"
                body = mono if c == 1 else ("-" + mono if c == -1 else f"{c}{mono}")
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(self._terms)!r})"


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")
