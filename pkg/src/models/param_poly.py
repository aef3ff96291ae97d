"""
Polynomials in the formal entries of the coordinate-change matrices.

There are 16 variables: the eight entries of alpha and alpha-tilde, then
their formal conjugates at offset 8. Coefficients live in the splitting
algebra; monomials are ordered degree-reverse-lexicographically.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple

from sympy.polys.orderings import grevlex

from ..exceptions import DivisionByZero
from .splitting import SplitElem, SplittingAlgebra

Exponent = Tuple[int, ...]

VARIABLES = ("a12", "a14", "a32", "a34", "t21", "t23", "t41", "t43")
NVARS = 2 * len(VARIABLES)
CONJ_OFFSET = len(VARIABLES)

_ZERO: Exponent = (0,) * NVARS


def variable_name(index: int) -> str:
    if index < CONJ_OFFSET:
        return VARIABLES[index]
    return f"{VARIABLES[index - CONJ_OFFSET]}b"


class ParamPoly:
    """Sparse polynomial {exponent tuple: SplitElem}"""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: SplittingAlgebra, terms: Optional[Dict[Exponent, SplitElem]] = None):
        self.algebra = algebra
        self.terms: Dict[Exponent, SplitElem] = {
            e: c for e, c in (terms or {}).items() if c
        }

    @classmethod
    def variable(cls, algebra: SplittingAlgebra, index: int) -> "ParamPoly":
        exponent = [0] * NVARS
        exponent[index] = 1
        return cls(algebra, {tuple(exponent): algebra.one()})

    @classmethod
    def constant(cls, algebra: SplittingAlgebra, value) -> "ParamPoly":
        if not isinstance(value, SplitElem):
            value = algebra.const(value)
        return cls(algebra, {_ZERO: value})

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _lift(self, other) -> Optional["ParamPoly"]:
        if isinstance(other, ParamPoly):
            return other
        if isinstance(other, (SplitElem, int, Fraction)):
            return ParamPoly.constant(self.algebra, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc[e] + c if e in acc else c
        return ParamPoly(self.algebra, acc)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly(self.algebra, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (SplitElem, int, Fraction)):
            return ParamPoly(self.algebra, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, ParamPoly):
            return NotImplemented
        acc: Dict[Exponent, SplitElem] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                product = c1 * c2
                acc[e] = acc[e] + product if e in acc else product
        return ParamPoly(self.algebra, acc)

    def __rmul__(self, other):
        if isinstance(other, (SplitElem, int, Fraction)):
            return ParamPoly(self.algebra, {e: other * c for e, c in self.terms.items()})
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (SplitElem, int, Fraction)):
            if not other:
                raise DivisionByZero("Division of a polynomial by zero")
            inverse = other.inverse() if isinstance(other, SplitElem) else Fraction(1) / other
            return self * inverse
        return NotImplemented

    def __pow__(self, n: int) -> "ParamPoly":
        result = ParamPoly.constant(self.algebra, 1)
        for _ in range(n):
            result = result * self
        return result

    def mul_term(self, exponent: Exponent, coefficient: SplitElem) -> "ParamPoly":
        return ParamPoly(
            self.algebra,
            {
                tuple(a + b for a, b in zip(e, exponent)): c * coefficient
                for e, c in self.terms.items()
            },
        )

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------

    def conjugate(self) -> "ParamPoly":
        """Swap each variable with its conjugate and conjugate the coefficients"""
        return ParamPoly(
            self.algebra,
            {e[CONJ_OFFSET:] + e[:CONJ_OFFSET]: c.conjugate() for e, c in self.terms.items()},
        )

    def leading_term(self) -> Tuple[Exponent, SplitElem]:
        exponent = max(self.terms, key=grevlex)
        return exponent, self.terms[exponent]

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def variables(self) -> set:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def specialize(self, values: Dict[int, Any]) -> Any:
        """
        Evaluate at ``values`` (variable index 0..7 -> SplitElem or ParamPoly).

        Conjugate variables receive the conjugates of the values. Variables
        without a value stay formal, so the result is a ParamPoly unless
        every occurring variable is assigned.
        """
        full = dict(values)
        for index, value in values.items():
            if index < CONJ_OFFSET:
                full[index + CONJ_OFFSET] = value.conjugate()
        total = ParamPoly(self.algebra)
        for exponent, coefficient in self.terms.items():
            term = ParamPoly(self.algebra, {self._strip(exponent, full): coefficient})
            for index, power in enumerate(exponent):
                if power and index in full:
                    for _ in range(power):
                        term = term * full[index]
            total = total + term
        return total.as_constant() if total.is_constant else total

    @staticmethod
    def _strip(exponent: Exponent, assigned: Dict[int, Any]) -> Exponent:
        return tuple(0 if i in assigned else k for i, k in enumerate(exponent))

    @property
    def is_constant(self) -> bool:
        return all(e == _ZERO for e in self.terms)

    def as_constant(self) -> SplitElem:
        return self.terms.get(_ZERO, self.algebra.zero())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def to_json(self) -> List[Dict[str, Any]]:
        return [
            {
                "monomial": {variable_name(i): k for i, k in enumerate(e) if k},
                "coefficient": c.to_json(),
            }
            for e, c in sorted(self.terms.items())
        ]

    def __repr__(self) -> str:
        return f"ParamPoly({len(self.terms)} terms, degree {self.total_degree})"


@dataclass(frozen=True)
class AlphaMatrix:
    """A 2x2 matrix ((a11, a12), (a21, a22)) over SplitElem or ParamPoly"""

    a11: Any
    a12: Any
    a21: Any
    a22: Any

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Any]]) -> "AlphaMatrix":
        (a11, a12), (a21, a22) = rows
        return cls(a11, a12, a21, a22)

    def rows(self) -> Tuple[Tuple[Any, Any], Tuple[Any, Any]]:
        return (self.a11, self.a12), (self.a21, self.a22)

    def entries(self) -> Tuple[Any, Any, Any, Any]:
        return self.a11, self.a12, self.a21, self.a22

    def hat(self) -> "AlphaMatrix":
        """(det A) A^{-1} written entrywise"""
        return AlphaMatrix(self.a22, -self.a12, -self.a21, self.a11)

    def det(self):
        return self.a11 * self.a22 - self.a12 * self.a21

    def trace(self):
        return self.a11 + self.a22

    def conjugate(self) -> "AlphaMatrix":
        return AlphaMatrix(*(e.conjugate() for e in self.entries()))

    def __add__(self, other: "AlphaMatrix") -> "AlphaMatrix":
        return AlphaMatrix(*(x + y for x, y in zip(self.entries(), other.entries())))

    def __matmul__(self, other: "AlphaMatrix") -> "AlphaMatrix":
        return AlphaMatrix(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def scale(self, factor) -> "AlphaMatrix":
        return AlphaMatrix(*(factor * e for e in self.entries()))

    def map(self, fn) -> "AlphaMatrix":
        return AlphaMatrix(*(fn(e) for e in self.entries()))

    def to_json(self) -> List[List[Any]]:
        return [[self.a11.to_json(), self.a12.to_json()], [self.a21.to_json(), self.a22.to_json()]]
