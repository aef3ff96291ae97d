"""
Forms service: exterior-algebra operations on translation-invariant forms,
isogeny pullbacks, restriction to the real locus, top-degree pairing,
Chern characters and the star operator on (0,2)-forms.
"""

import logging
from fractions import Fraction
from math import factorial
from typing import Dict, List, Sequence, Tuple

from ..exceptions import NotPure02, RankMismatch
from ..models.cube import CubeModel
from ..models.form import Form, LinMap, StandardForms
from ..models.splitting import ContextConstants, SplitElem, SplittingAlgebra
from ..utils.helpers import sort_sign
from .cube_service import CubeService

logger = logging.getLogger(__name__)

TOP = tuple(range(8))
HOLOMORPHIC_TOP = (0, 1, 2, 3)
ANTIHOLOMORPHIC_TOP = (4, 5, 6, 7)

# dz1^dzb2^dz3^dzb4 and dzb1^dz2^dzb3^dz4
TETRAHEDRAL_P = (0, 5, 2, 7)
TETRAHEDRAL_Q = (4, 1, 6, 3)


class FormsService:
    """Exterior algebra, pullbacks and characteristic classes"""

    @staticmethod
    def wedge(f: Form, g: Form) -> Form:
        return f.wedge(g)

    @staticmethod
    def bidegree_split(f: Form) -> Dict[Tuple[int, int], Form]:
        parts: Dict[Tuple[int, int], Dict] = {}
        for key, value in f.items():
            parts.setdefault(f.bidegree_of(key), {})[key] = value
        return {pq: Form(terms, f.generators) for pq, terms in parts.items()}

    @staticmethod
    def conjugate_form(f: Form) -> Form:
        return f.conjugate()

    @staticmethod
    def pullback(m: LinMap, f: Form) -> Form:
        return m.pullback(f)

    @staticmethod
    def linmap_compose(m: LinMap, then: LinMap) -> LinMap:
        return m.compose(then)

    @staticmethod
    def identity_map(algebra: SplittingAlgebra) -> LinMap:
        return LinMap.holomorphic({j: {j: algebra.one()} for j in range(4)})

    @staticmethod
    def isogeny_map(model: CubeModel, a: SplitElem) -> LinMap:
        """
        Complex multiplication by a: dz_j -> phi_j(a) dz_j.

        Raises:
            NotInF: a does not lie in F
        """
        rows = {j: {j: CubeService.embedding_of(model, a, j)} for j in range(4)}
        return LinMap.holomorphic(rows)

    @staticmethod
    def form_sigma1(algebra: SplittingAlgebra) -> LinMap:
        """Pullback by the antiholomorphic involution with z(sigma1 u) = conj z(u)"""
        return LinMap.holomorphic({j: {j + 4: algebra.one()} for j in range(4)})

    @staticmethod
    def restrict_to_Y(f: Form) -> Form:
        """Restriction to the real locus: dz_j and dzb_j both become dt_j"""
        acc = {}
        for key, value in f.items():
            sign, image = sort_sign(tuple(i % 4 for i in key))
            if sign == 0:
                continue
            term = value if sign > 0 else -value
            acc[image] = acc[image] + term if image in acc else term
        return Form(acc, generators=4)

    @staticmethod
    def pair_top(f: Form, constants: ContextConstants) -> SplitElem:
        """Coefficient of the top-degree part relative to theta ^ theta_bar"""
        coefficient = f.terms.get(TOP)
        if coefficient is None:
            return constants.vandermonde.algebra.zero()
        return coefficient * constants.discriminant

    @staticmethod
    def pair_Y(f: Form, algebra: SplittingAlgebra) -> SplitElem:
        """Integral over the real locus, as a multiple of its covolume"""
        restricted = FormsService.restrict_to_Y(f.degree_part(4))
        return restricted.terms.get(HOLOMORPHIC_TOP, algebra.zero())

    @staticmethod
    def exponential(a: Form, unit, max_degree: int = 8) -> Form:
        """1 + A + A^2/2 + A^3/6 + A^4/24, dropping parts above ``max_degree``"""
        total = Form.constant(unit)
        power = Form.constant(unit)
        for n in range(1, max_degree // 2 + 1):
            power = power.wedge(a)
            if power.is_zero:
                break
            total = total + power * Fraction(1, factorial(n))
        return total

    @staticmethod
    def ch_combination(
        algebra: SplittingAlgebra,
        terms: Sequence[Tuple[Fraction, Form]],
        max_degree: int = 8,
    ) -> Form:
        """
        Chern character of a virtual sum of line bundles.

        Args:
            algebra: Splitting algebra supplying the unit coefficient
            terms: (multiplicity, first Chern class) pairs; classes are 2-forms
            max_degree: Highest form degree kept

        Returns:
            Sum of multiplicity * exp(class), truncated above max_degree
        """
        total = Form()
        for multiplicity, cls in terms:
            if cls.degrees() - {2}:
                raise ValueError("Line bundle classes must be 2-forms")
            total = total + FormsService.exponential(cls, algebra.one(), max_degree) * multiplicity
        return total

    @staticmethod
    def chern_parts(ch: Form, rank) -> Tuple[Form, Form]:
        """
        First and second Chern classes from a Chern character.

        Raises:
            RankMismatch: the degree-0 part is not ``rank``
        """
        constant = ch.terms.get(())
        value = Fraction(0) if constant is None else constant.rational_value()
        if value != Fraction(rank):
            raise RankMismatch(f"Chern character has rank {value}, expected {rank}")
        c1 = ch.degree_part(2)
        c2 = c1.wedge(c1) * Fraction(1, 2) - ch.degree_part(4)
        return c1, c2

    @staticmethod
    def star_02(f: Form, forms: StandardForms) -> Form:
        """
        Conjugate-linear star on (0,2)-forms, normalized by
        a ^ star(a) = |a|^2 theta_bar with |dzb_j|^2 = 1/g_j.

        Raises:
            NotPure02: f has components outside bidegree (0,2)
        """
        if not f.is_pure(0, 2):
            raise NotPure02(f"{f} is not a pure (0,2)-form")
        acc = {}
        for key, value in f.items():
            complement = tuple(i for i in ANTIHOLOMORPHIC_TOP if i not in key)
            acc[complement] = value.conjugate() * forms.star_weights[key]
        return Form(acc)

    @staticmethod
    def phi_operator(
        model: CubeModel,
        constants: ContextConstants,
        f: Form,
        conjugate: bool = False,
    ) -> Form:
        """
        (pi_a^* - (1+Delta)^2)(pi_b^* + Delta^2) f with a = 1 + iD, or
        a = 1 - iD when ``conjugate`` is set.
        """
        delta = constants.discriminant
        a = constants.isogeny_a.conjugate() if conjugate else constants.isogeny_a
        pi_a = FormsService.isogeny_map(model, a)
        pi_b = FormsService.isogeny_map(model, constants.isogeny_b)
        step = pi_b.pullback(f) + f * (delta**2)
        return pi_a.pullback(step) - step * ((1 + delta) ** 2)

    @staticmethod
    def standard_context(
        algebra: SplittingAlgebra,
        constants: ContextConstants,
        model: CubeModel,
        charge_c: int = 1,
    ) -> StandardForms:
        """Build omega, theta, M, M', A1, A2 and the Cayley form"""
        i = algebra.imaginary_unit()
        d = constants.vandermonde
        delta = constants.discriminant

        metric = {
            j: d * constants.mu(j) * Fraction((-1) ** (j + 1), 1) / delta for j in range(1, 5)
        }
        omega = Form({(j - 1, j + 3): i * metric[j] for j in range(1, 5)})
        theta = Form({HOLOMORPHIC_TOP: d / delta})
        theta_bar = theta.conjugate()

        p_form = Form.monomial(TETRAHEDRAL_P, algebra.one())
        q_form = Form.monomial(TETRAHEDRAL_Q, algebra.one())
        M = (p_form + q_form) * d
        M_prime = (p_form - q_form) * i

        orbit = CubeService.orbit_of(model, (0, 2))
        seed = constants.h(3) * (algebra.root(1) - algebra.root(3))
        A1 = CubeService.expand_seed(model, orbit, seed)
        A2 = CubeService.expand_seed(model, orbit, i * d * seed * charge_c)

        cayley = omega.wedge(omega) * Fraction(1, 2) + theta * 2 + theta_bar * 2

        star_weights = {}
        for key in ((4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7)):
            complement = tuple(k for k in ANTIHOLOMORPHIC_TOP if k not in key)
            sign, _ = sort_sign(key + complement)
            a, b = key[0] - 3, key[1] - 3
            star_weights[key] = sign * (d * metric[a] * metric[b]).inverse()

        logger.info(f"Standard forms built with c = {charge_c}")
        return StandardForms(
            omega=omega,
            theta=theta,
            theta_bar=theta_bar,
            M=M,
            M_prime=M_prime,
            A1=A1,
            A2=A2,
            cayley=cayley,
            charge_c=charge_c,
            metric=metric,
            star_weights=star_weights,
        )
