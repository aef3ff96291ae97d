"""
The degree-48 splitting algebra L = Q(x1, x2, x3, x4, i) of a depressed quartic.

Elements are kept in the normal form of the Cauchy-module Groebner basis
(lex order x4 > x3 > x2 > x1 > i):

    x4 + x3 + x2 + x1
    f3(x1, x2, x3)      leading monomial x3^2
    f2(x1, x2)          leading monomial x2^3
    f1(x1)              leading monomial x1^4
    i^2 + 1

so every element is a Q-combination of the 48 monomials
x1^e1 x2^e2 x3^e3 i^e4 with e1 <= 3, e2 <= 2, e3 <= 1, e4 <= 1.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, ring

from ..exceptions import DivisionByZero, SingularMultiplication
from ..utils.helpers import format_rational, to_fraction, to_qq
from .galois import GaloisElem

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int, int, int, int]

# Ring monomials are (e4, e3, e2, e1, ei); these bound the normal form.
_BOUNDS = (1, 2, 3, 4, 2)


def basis_monomials() -> List[Monomial]:
    """The 48 normal-form monomials in basis-index order"""
    return [
        (0, e3, e2, e1, ei)
        for e1 in range(4)
        for e2 in range(3)
        for e3 in range(2)
        for ei in range(2)
    ]


def basis_index(monom: Monomial) -> int:
    """index = 12*e1 + 4*e2 + 2*e3 + e_i"""
    _, e3, e2, e1, ei = monom
    return 12 * e1 + 4 * e2 + 2 * e3 + ei


BASIS = basis_monomials()


class SplittingAlgebra:
    """Normal-form arithmetic, Galois action and inversion for one quartic"""

    def __init__(self, a, b, c, d):
        a, b, c, d = (to_fraction(v) for v in (a, b, c, d))
        self.coefficients = (a, b, c, d)
        self.ring, x4, x3, x2, x1, i = ring("x4,x3,x2,x1,i", QQ, lex)
        self.gens = {1: x1, 2: x2, 3: x3, 4: x4}
        self.i = i

        p, q, r = (to_qq(v / a) for v in (b, c, d))
        f1 = x1**4 + p * x1**2 + q * x1 + r
        f2 = (f1 - f1.compose(x1, x2)).exquo(x1 - x2)
        f3 = (f2 - f2.compose(x2, x3)).exquo(x2 - x3)
        self.cauchy_modules = (f1, f2, f3)
        self.basis = [x4 + x3 + x2 + x1, f3, f2, f1, i**2 + 1]

        # Each basis element g rewrites LM(g) as -(g - LM(g)).
        self._rewrites = [-(g - g.ring({g.LM: QQ.one})) for g in self.basis]
        self._nf: Dict[Monomial, PolyElement] = {}
        self._images: Dict[Tuple[GaloisElem, Monomial], PolyElement] = {}

        for m1 in BASIS:
            for m2 in BASIS:
                self._monomial_nf(tuple(e1 + e2 for e1, e2 in zip(m1, m2)))
        logger.debug(
            f"Multiplication table for {self.coefficients} holds {len(self._nf)} monomials"
        )

    # ------------------------------------------------------------------
    # Normal form
    # ------------------------------------------------------------------

    def _monomial_nf(self, monom: Monomial) -> PolyElement:
        cached = self._nf.get(monom)
        if cached is not None:
            return cached
        for k, (exp, bound) in enumerate(zip(monom, _BOUNDS)):
            if exp >= bound:
                quotient = list(monom)
                quotient[k] -= bound
                raw = self._rewrites[k].mul_monom(tuple(quotient))
                nf = self.normalize(raw)
                break
        else:
            nf = self.ring({monom: QQ.one})
        self._nf[monom] = nf
        return nf

    def normalize(self, raw: PolyElement) -> PolyElement:
        """Reduce a polynomial of this ring to its canonical normal form"""
        acc: Dict[Monomial, object] = {}
        for monom, coeff in raw.items():
            if _in_basis(monom):
                acc[monom] = acc.get(monom, QQ.zero) + coeff
                continue
            for m, c in self._monomial_nf(monom).items():
                acc[m] = acc.get(m, QQ.zero) + coeff * c
        return self.ring({m: c for m, c in acc.items() if c})

    def multiply(self, u: PolyElement, v: PolyElement) -> PolyElement:
        return self.normalize(u * v)

    # ------------------------------------------------------------------
    # Elements
    # ------------------------------------------------------------------

    def elem(self, poly: PolyElement) -> "SplitElem":
        return SplitElem(self, self.normalize(poly))

    def const(self, value) -> "SplitElem":
        return SplitElem(self, self.ring.ground_new(to_qq(value)))

    def zero(self) -> "SplitElem":
        return SplitElem(self, self.ring.zero)

    def one(self) -> "SplitElem":
        return SplitElem(self, self.ring.one)

    def root(self, j: int) -> "SplitElem":
        return self.elem(self.gens[j])

    def imaginary_unit(self) -> "SplitElem":
        return SplitElem(self, self.i)

    def from_vector(self, values: Iterable) -> "SplitElem":
        values = list(values)
        if len(values) != 48:
            raise ValueError(f"Expected 48 coordinates, got {len(values)}")
        terms = {m: to_qq(v) for m, v in zip(BASIS, values) if v}
        return SplitElem(self, self.ring(terms))

    # ------------------------------------------------------------------
    # Galois action
    # ------------------------------------------------------------------

    def _basis_image(self, g: GaloisElem, monom: Monomial) -> PolyElement:
        key = (g, monom)
        cached = self._images.get(key)
        if cached is not None:
            return cached
        _, e3, e2, e1, ei = monom
        raw = (
            self.gens[g(1)] ** e1
            * self.gens[g(2)] ** e2
            * self.gens[g(3)] ** e3
            * ((-self.i) if g.eps else self.i) ** ei
        )
        image = self.normalize(raw)
        self._images[key] = image
        return image

    def apply(self, g: GaloisElem, poly: PolyElement) -> PolyElement:
        if g.is_identity:
            return poly
        acc: Dict[Monomial, object] = {}
        for monom, coeff in poly.items():
            for m, c in self._basis_image(g, monom).items():
                acc[m] = acc.get(m, QQ.zero) + coeff * c
        return self.ring({m: c for m, c in acc.items() if c})

    def action_matrix(self, g: GaloisElem) -> List[List]:
        """48x48 rational matrix of u -> g(u); column j is the image of basis j"""
        rows = [[QQ.zero] * 48 for _ in range(48)]
        for col, monom in enumerate(BASIS):
            for m, c in self._basis_image(g, monom).items():
                rows[basis_index(m)][col] = c
        return rows

    # ------------------------------------------------------------------
    # Inversion
    # ------------------------------------------------------------------

    def multiplication_matrix(self, poly: PolyElement) -> DomainMatrix:
        rows = [[QQ.zero] * 48 for _ in range(48)]
        for col, monom in enumerate(BASIS):
            product = self.normalize(poly.mul_monom(monom))
            for m, c in product.items():
                rows[basis_index(m)][col] = c
        return DomainMatrix(rows, (48, 48), QQ)

    def invert(self, poly: PolyElement) -> PolyElement:
        if not poly:
            raise DivisionByZero("Cannot invert the zero element")
        if poly.is_ground:
            return self.ring.ground_new(QQ.one / poly.LC)
        matrix = self.multiplication_matrix(poly)
        rhs = DomainMatrix([[QQ.one]] + [[QQ.zero]] * 47, (48, 1), QQ)
        try:
            solution = matrix.lu_solve(rhs).to_list()
        except DMNonInvertibleMatrixError:
            raise SingularMultiplication(
                "Multiplication by a nonzero element is singular; "
                "the Galois group of the quartic is smaller than S4"
            )
        return self.ring({m: row[0] for m, row in zip(BASIS, solution) if row[0]})


def _in_basis(monom: Monomial) -> bool:
    e4, e3, e2, e1, ei = monom
    return e4 == 0 and e3 <= 1 and e2 <= 2 and e1 <= 3 and ei <= 1


class SplitElem:
    """An element of L in normal form"""

    __slots__ = ("algebra", "poly")

    def __init__(self, algebra: SplittingAlgebra, poly: PolyElement):
        self.algebra = algebra
        self.poly = poly

    def _coerce(self, other) -> Optional[PolyElement]:
        if isinstance(other, SplitElem):
            if other.algebra is not self.algebra:
                raise ValueError("Elements belong to different splitting algebras")
            return other.poly
        if isinstance(other, (int, Fraction)) or QQ.of_type(other):
            return self.algebra.ring.ground_new(to_qq(other))
        return None

    def __add__(self, other):
        poly = self._coerce(other)
        if poly is None:
            return NotImplemented
        return SplitElem(self.algebra, self.poly + poly)

    __radd__ = __add__

    def __neg__(self) -> "SplitElem":
        return SplitElem(self.algebra, -self.poly)

    def __sub__(self, other):
        poly = self._coerce(other)
        if poly is None:
            return NotImplemented
        return SplitElem(self.algebra, self.poly - poly)

    def __rsub__(self, other):
        poly = self._coerce(other)
        if poly is None:
            return NotImplemented
        return SplitElem(self.algebra, poly - self.poly)

    def __mul__(self, other):
        if isinstance(other, SplitElem):
            return SplitElem(self.algebra, self.algebra.multiply(self.poly, other.poly))
        if isinstance(other, (int, Fraction)) or QQ.of_type(other):
            return SplitElem(self.algebra, self.poly * to_qq(other))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SplitElem):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)) or QQ.of_type(other):
            if not other:
                raise DivisionByZero("Division by the rational zero")
            return SplitElem(self.algebra, self.poly * (QQ.one / to_qq(other)))
        return NotImplemented

    def __rtruediv__(self, other):
        poly = self._coerce(other)
        if poly is None:
            return NotImplemented
        return SplitElem(self.algebra, poly) * self.inverse()

    def __pow__(self, n: int) -> "SplitElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.algebra.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "SplitElem":
        return SplitElem(self.algebra, self.algebra.invert(self.poly))

    def conjugate(self) -> "SplitElem":
        """Complex conjugation rho: negate the terms carrying i"""
        terms = {m: (-c if m[4] else c) for m, c in self.poly.items()}
        return SplitElem(self.algebra, self.algebra.ring(terms))

    def apply(self, g: GaloisElem) -> "SplitElem":
        return SplitElem(self.algebra, self.algebra.apply(g, self.poly))

    def real_part(self) -> "SplitElem":
        terms = {m: c for m, c in self.poly.items() if not m[4]}
        return SplitElem(self.algebra, self.algebra.ring(terms))

    def imag_part(self) -> "SplitElem":
        terms = {m[:4] + (0,): c for m, c in self.poly.items() if m[4]}
        return SplitElem(self.algebra, self.algebra.ring(terms))

    @property
    def is_zero(self) -> bool:
        return not self.poly

    @property
    def is_real(self) -> bool:
        return all(not m[4] for m in self.poly)

    def rational_value(self) -> Optional[Fraction]:
        if not self.poly:
            return Fraction(0)
        if self.poly.is_ground:
            return to_fraction(self.poly.LC)
        return None

    def coefficients(self) -> List[Fraction]:
        values = [Fraction(0)] * 48
        for m, c in self.poly.items():
            values[basis_index(m)] = to_fraction(c)
        return values

    def to_json(self) -> List[str]:
        return [format_rational(v) for v in self.coefficients()]

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __eq__(self, other) -> bool:
        if isinstance(other, SplitElem):
            return self.algebra is other.algebra and self.poly == other.poly
        poly = self._coerce(other)
        if poly is None:
            return NotImplemented
        return self.poly == poly

    def __hash__(self) -> int:
        return hash(frozenset(self.poly.items()))

    def __repr__(self) -> str:
        return f"SplitElem({self.poly.as_expr()})"


@dataclass(frozen=True)
class ContextConstants:
    """Field constants attached to a quartic"""

    vandermonde: SplitElem
    i_vandermonde: SplitElem
    discriminant: Fraction
    pair_sums: Dict[int, SplitElem]
    root_derivatives: Dict[int, SplitElem]
    isogeny_a: SplitElem
    isogeny_b: SplitElem

    def h(self, k: int) -> SplitElem:
        """x1*xk + (product of the two remaining roots)"""
        return self.pair_sums[k]

    def mu(self, j: int) -> SplitElem:
        """prod_{k != j} (xj - xk)"""
        return self.root_derivatives[j]
