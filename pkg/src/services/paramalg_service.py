"""
Parameter algebra service: the coordinate change z -> w that keeps the
classes A1, A2 (and optionally omega) of type (1,1).

Everything here works on AlphaMatrix values whose entries are either formal
ParamPoly entries or exact SplitElem specializations.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from ..exceptions import DegenerateH3, SingularTransform
from ..models.form import Form, Key, LinMap
from ..models.param_poly import AlphaMatrix, Exponent, ParamPoly
from ..models.splitting import ContextConstants, SplitElem, SplittingAlgebra

logger = logging.getLogger(__name__)

ANTIHOLOMORPHIC_PAIRS: Tuple[Key, ...] = tuple(combinations(range(4, 8), 2))
HOLOMORPHIC_PAIRS: Tuple[Key, ...] = tuple(combinations(range(4), 2))

# Formal variable indices of the alpha and alpha-tilde entries.
ALPHA_VARIABLES = (0, 1, 2, 3)
TILDE_VARIABLES = (4, 5, 6, 7)


@dataclass
class InverseTransform:
    """Scalars, matrices and almost complex structure of w in terms of z"""

    c: SplitElem
    c_tilde: SplitElem
    alpha_tilde: AlphaMatrix
    beta: AlphaMatrix
    beta_tilde: AlphaMatrix
    J: LinMap
    inverse: LinMap


@dataclass
class EllipsoidResidual:
    ellipsoid: object
    hyperplane: object
    quadratic: object
    singular: object


def _roots(algebra: SplittingAlgebra) -> Dict[int, SplitElem]:
    return {j: algebra.root(j) for j in range(1, 5)}


def _divides(small: Exponent, big: Exponent) -> bool:
    return all(a <= b for a, b in zip(small, big))


class ParamAlgService:
    """Conditions on alpha, their reduction and the distinguished solution"""

    # ------------------------------------------------------------------
    # Matrices
    # ------------------------------------------------------------------

    @staticmethod
    def hat(a: AlphaMatrix) -> AlphaMatrix:
        return a.hat()

    @staticmethod
    def pairing(a: AlphaMatrix, b: AlphaMatrix):
        """<A, B> = Tr(A hat(B))"""
        return (a @ b.hat()).trace()

    @staticmethod
    def H_matrix(algebra: SplittingAlgebra, constants: ContextConstants) -> AlphaMatrix:
        x = _roots(algebra)
        h2, h4 = constants.h(2), constants.h(4)
        return AlphaMatrix(
            -h4 * (x[2] - x[3]),
            h2 * (x[3] - x[4]),
            -h2 * (x[1] - x[2]),
            -h4 * (x[1] - x[4]),
        )

    @staticmethod
    def formal_alpha(algebra: SplittingAlgebra) -> AlphaMatrix:
        return AlphaMatrix(*(ParamPoly.variable(algebra, i) for i in ALPHA_VARIABLES))

    @staticmethod
    def formal_tilde(algebra: SplittingAlgebra) -> AlphaMatrix:
        return AlphaMatrix(*(ParamPoly.variable(algebra, i) for i in TILDE_VARIABLES))

    # ------------------------------------------------------------------
    # Type (1,1) conditions
    # ------------------------------------------------------------------

    @staticmethod
    def cond1_of(alpha: AlphaMatrix, algebra: SplittingAlgebra, constants: ContextConstants):
        """<alpha, H> - h3(x2-x4) - h3(x1-x3) det alpha"""
        x = _roots(algebra)
        h3 = constants.h(3)
        H = ParamAlgService.H_matrix(algebra, constants)
        return (
            ParamAlgService.pairing(alpha, H)
            - h3 * (x[2] - x[4])
            - alpha.det() * (h3 * (x[1] - x[3]))
        )

    @staticmethod
    def cond2_of(tilde: AlphaMatrix, algebra: SplittingAlgebra, constants: ContextConstants):
        """<alpha~, hat H> - h3(x1-x3) - h3(x2-x4) det alpha~"""
        x = _roots(algebra)
        h3 = constants.h(3)
        H_hat = ParamAlgService.H_matrix(algebra, constants).hat()
        return (
            ParamAlgService.pairing(tilde, H_hat)
            - h3 * (x[1] - x[3])
            - tilde.det() * (h3 * (x[2] - x[4]))
        )

    @staticmethod
    def condition_polys(
        algebra: SplittingAlgebra, constants: ContextConstants
    ) -> Tuple[ParamPoly, ParamPoly]:
        cond1 = ParamAlgService.cond1_of(ParamAlgService.formal_alpha(algebra), algebra, constants)
        cond2 = ParamAlgService.cond2_of(ParamAlgService.formal_tilde(algebra), algebra, constants)
        return cond1, cond2

    @staticmethod
    def w_substitution(alpha: AlphaMatrix, tilde: AlphaMatrix) -> LinMap:
        """
        z1, z3 = w1, w3 + conj(alpha) (wb2, wb4) and
        z2, z4 = w2, w4 + conj(alpha~) (wb1, wb3), as a pullback on one-forms.
        """
        a = alpha.conjugate()
        t = tilde.conjugate()
        one = _unit(alpha)
        return LinMap.holomorphic(
            {
                0: {0: one, 5: a.a11, 7: a.a12},
                2: {2: one, 5: a.a21, 7: a.a22},
                1: {1: one, 4: t.a11, 6: t.a12},
                3: {3: one, 4: t.a21, 6: t.a22},
            }
        )

    @staticmethod
    def symbolic_02_parts(
        f: Form, alpha: AlphaMatrix, tilde: AlphaMatrix
    ) -> Dict[Tuple[int, int], Dict[Key, object]]:
        """
        Pull f back to w-coordinates and collect the six dwb^dwb and the
        six dw^dw coefficients (zero entries included).
        """
        pulled = ParamAlgService.w_substitution(alpha, tilde).pullback(f)
        zero = _zero(alpha)
        return {
            (0, 2): {key: pulled.terms.get(key, zero) for key in ANTIHOLOMORPHIC_PAIRS},
            (2, 0): {key: pulled.terms.get(key, zero) for key in HOLOMORPHIC_PAIRS},
        }

    # ------------------------------------------------------------------
    # Ideal membership
    # ------------------------------------------------------------------

    @staticmethod
    def divide(p: ParamPoly, divisors: Sequence[ParamPoly]) -> ParamPoly:
        """Remainder of multivariate division in degree-reverse-lex order"""
        monic: List[Tuple[Exponent, ParamPoly]] = []
        for g in divisors:
            if not g:
                continue
            exponent, coefficient = g.leading_term()
            monic.append((exponent, g * coefficient.inverse()))

        remainder: Dict[Exponent, SplitElem] = {}
        current = p
        while current:
            exponent, coefficient = current.leading_term()
            for lead, g in monic:
                if _divides(lead, exponent):
                    shift = tuple(a - b for a, b in zip(exponent, lead))
                    current = current - g.mul_term(shift, coefficient)
                    break
            else:
                remainder[exponent] = coefficient
                current = current - ParamPoly(p.algebra, {exponent: coefficient})
        return ParamPoly(p.algebra, remainder)

    @staticmethod
    def s_polynomial(f: ParamPoly, g: ParamPoly) -> ParamPoly:
        lf, cf = f.leading_term()
        lg, cg = g.leading_term()
        lcm = tuple(max(a, b) for a, b in zip(lf, lg))
        return f.mul_term(
            tuple(a - b for a, b in zip(lcm, lf)), cf.inverse()
        ) - g.mul_term(tuple(a - b for a, b in zip(lcm, lg)), cg.inverse())

    @staticmethod
    def complete(divisors: Sequence[ParamPoly], max_rounds: int = 2) -> List[ParamPoly]:
        """
        Buchberger completion, stopped after ``max_rounds`` passes. Pairs with
        coprime leading monomials are skipped.
        """
        basis = [g for g in divisors if g]
        for round_number in range(max_rounds):
            added = []
            for f, g in combinations(basis, 2):
                lf, _ = f.leading_term()
                lg, _ = g.leading_term()
                if not any(a and b for a, b in zip(lf, lg)):
                    continue
                s = ParamAlgService.divide(ParamAlgService.s_polynomial(f, g), basis + added)
                if s:
                    added.append(s)
            logger.debug(f"Completion round {round_number + 1}: {len(added)} new generators")
            if not added:
                break
            basis.extend(added)
        return basis

    @staticmethod
    def reduce_by_conditions(
        p: ParamPoly, divisors: Sequence[ParamPoly], max_rounds: int = 2
    ) -> ParamPoly:
        """
        Remainder of p modulo the ideal spanned by ``divisors``; a zero
        remainder certifies membership. Division by the divisors comes first,
        completion only when that leaves a remainder.
        """
        remainder = ParamAlgService.divide(p, divisors)
        if not remainder:
            return remainder
        logger.info("Direct division left a remainder; completing the generating set")
        return ParamAlgService.divide(p, ParamAlgService.complete(divisors, max_rounds))

    # ------------------------------------------------------------------
    # Coordinate change
    # ------------------------------------------------------------------

    @staticmethod
    def ratio(algebra: SplittingAlgebra) -> SplitElem:
        """(x1 - x3) / (x2 - x4)"""
        x = _roots(algebra)
        return (x[1] - x[3]) / (x[2] - x[4])

    @staticmethod
    def tilde_from_alpha(alpha: AlphaMatrix, algebra: SplittingAlgebra) -> AlphaMatrix:
        return alpha.conjugate().hat().scale(ParamAlgService.ratio(algebra))

    @staticmethod
    def inverse_transform(alpha: AlphaMatrix, algebra: SplittingAlgebra) -> InverseTransform:
        """
        Inverse coordinate change for an exact (SplitElem) alpha.

        Raises:
            SingularTransform: 1 - r conj(det alpha) vanishes
        """
        r = ParamAlgService.ratio(algebra)
        denominator = 1 - r * alpha.det().conjugate()
        if not denominator:
            raise SingularTransform(
                "det alpha equals (x2 - x4)/(x1 - x3); the inverse transform does not exist"
            )
        c = denominator.inverse()
        c_tilde = c.conjugate()
        tilde = ParamAlgService.tilde_from_alpha(alpha, algebra)
        beta = alpha.scale(-c_tilde)
        beta_tilde = tilde.scale(-c)

        i = algebra.imaginary_unit()
        b = beta.conjugate()
        bt = beta_tilde.conjugate()
        inverse = LinMap.holomorphic(
            {
                0: {0: c, 5: b.a11, 7: b.a12},
                2: {2: c, 5: b.a21, 7: b.a22},
                1: {1: c_tilde, 4: bt.a11, 6: bt.a12},
                3: {3: c_tilde, 4: bt.a21, 6: bt.a22},
            }
        )
        diag = i * (2 * c - 1)
        diag_tilde = i * (2 * c_tilde - 1)
        J = LinMap.holomorphic(
            {
                0: {0: diag, 5: 2 * i * b.a11, 7: 2 * i * b.a12},
                2: {2: diag, 5: 2 * i * b.a21, 7: 2 * i * b.a22},
                1: {1: diag_tilde, 4: 2 * i * bt.a11, 6: 2 * i * bt.a12},
                3: {3: diag_tilde, 4: 2 * i * bt.a21, 6: 2 * i * bt.a22},
            }
        )
        return InverseTransform(
            c=c, c_tilde=c_tilde, alpha_tilde=tilde, beta=beta, beta_tilde=beta_tilde,
            J=J, inverse=inverse,
        )

    @staticmethod
    def alpha_star(algebra: SplittingAlgebra, constants: ContextConstants) -> AlphaMatrix:
        """
        The distinguished real solution of the (1,1) conditions.

        Raises:
            DegenerateH3: x1 x3 + x2 x4 = 0
        """
        h3 = constants.h(3)
        if not h3:
            raise DegenerateH3("x1*x3 + x2*x4 vanishes")
        x = _roots(algebra)
        h3_inv = h3.inverse()
        u2 = 1 - 2 * constants.h(2) * h3_inv
        u4 = 1 - 2 * constants.h(4) * h3_inv
        scale = (x[1] - x[3]).inverse()
        return AlphaMatrix(
            (x[2] - x[3]) * u4,
            -(x[3] - x[4]) * u2,
            (x[1] - x[2]) * u2,
            (x[1] - x[4]) * u4,
        ).scale(scale)

    @staticmethod
    def omega_coefficients(algebra: SplittingAlgebra) -> Tuple[SplitElem, SplitElem]:
        """(x1-x4)/(x2-x3) and (x3-x4)/(x1-x2)"""
        x = _roots(algebra)
        return (x[1] - x[4]) / (x[2] - x[3]), (x[3] - x[4]) / (x[1] - x[2])

    @staticmethod
    def omega_preserving_alpha(a12, a32, algebra: SplittingAlgebra) -> AlphaMatrix:
        """alpha with a34 = s1 conj(a12) and a14 = -s2 conj(a32)"""
        s1, s2 = ParamAlgService.omega_coefficients(algebra)
        return AlphaMatrix(a12, -(a32.conjugate() * s2), a32, a12.conjugate() * s1)

    @staticmethod
    def ellipsoid_residual(
        a12, a32, algebra: SplittingAlgebra, constants: ContextConstants
    ) -> EllipsoidResidual:
        """
        Residuals of the constrained (1,1) condition at (a12, a32).

        ``quadratic`` is det alpha under the omega-preserving relations;
        ``singular`` vanishes on the ellipsoid exactly where the inverse
        transform breaks down.
        """
        x = _roots(algebra)
        s1, s2 = ParamAlgService.omega_coefficients(algebra)
        h2, h3, h4 = constants.h(2), constants.h(3), constants.h(4)
        quadratic = a12 * a12.conjugate() * s1 + a32 * a32.conjugate() * s2
        hyperplane = (
            (a12 + a12.conjugate()) * (h4 * (x[1] - x[4]))
            + (a32 + a32.conjugate()) * (h2 * (x[3] - x[4]))
            + h3 * (x[2] - x[4])
        )
        ellipsoid = quadratic * (h3 * (x[1] - x[3])) + hyperplane
        singular = hyperplane + h3 * (x[2] - x[4])
        return EllipsoidResidual(
            ellipsoid=ellipsoid, hyperplane=hyperplane, quadratic=quadratic, singular=singular
        )


def _unit(matrix: AlphaMatrix):
    return matrix.a11.algebra.one()


def _zero(matrix: AlphaMatrix):
    entry = matrix.a11
    if isinstance(entry, ParamPoly):
        return ParamPoly(entry.algebra)
    return entry.algebra.zero()


def solve_cond1_for_a34(
    a12: SplitElem, a14: SplitElem, a32: SplitElem, algebra: SplittingAlgebra,
    constants: ContextConstants,
) -> Optional[AlphaMatrix]:
    """
    Complete (a12, a14, a32) to a point of cond1 = 0; cond1 is affine in a34.
    None when the a34 coefficient vanishes.
    """
    zero = algebra.zero()
    base = AlphaMatrix(a12, a14, a32, zero)
    unit = AlphaMatrix(a12, a14, a32, algebra.one())
    constant = ParamAlgService.cond1_of(base, algebra, constants)
    slope = ParamAlgService.cond1_of(unit, algebra, constants) - constant
    if not slope:
        return None
    return AlphaMatrix(a12, a14, a32, -constant / slope)
