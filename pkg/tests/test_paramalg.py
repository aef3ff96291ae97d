"""
Parameter algebra tests: polynomials in the entries of alpha, the type (1,1)
conditions, their reduction and the distinguished solution alpha*.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from src.exceptions import SingularTransform
from src.models.form import LinMap
from src.models.param_poly import CONJ_OFFSET, AlphaMatrix, ParamPoly, variable_name
from src.services.forms_service import FormsService
from src.services.paramalg_service import ParamAlgService, solve_cond1_for_a34
from tests.test_utils import AlgebraFactory, quadratic_terms, small_rationals


def _const_matrix(algebra, values):
    return AlphaMatrix(*(algebra.const(v) for v in values))


class TestParamPoly:
    """Sparse polynomials over the splitting algebra"""

    def test_binomial(self, fixture_algebra):
        x = ParamPoly.variable(fixture_algebra, 0)
        y = ParamPoly.variable(fixture_algebra, 2)
        assert (x + y) ** 2 == x * x + 2 * x * y + y * y
        assert (x + y) - y == x
        assert not (x - x)

    def test_conjugate_swaps_variables(self, fixture_algebra):
        i = fixture_algebra.imaginary_unit()
        x = ParamPoly.variable(fixture_algebra, 1)
        p = x * i + 3
        conj = p.conjugate()
        assert conj == ParamPoly.variable(fixture_algebra, 1 + CONJ_OFFSET) * (-i) + 3
        assert conj.conjugate() == p

    def test_variable_names(self):
        assert variable_name(0) == "a12"
        assert variable_name(CONJ_OFFSET + 3) == "a34b"

    def test_specialize(self, fixture_algebra):
        i = fixture_algebra.imaginary_unit()
        x = ParamPoly.variable(fixture_algebra, 0)
        xb = ParamPoly.variable(fixture_algebra, CONJ_OFFSET)
        y = ParamPoly.variable(fixture_algebra, 1)
        value = (x * xb).specialize({0: i + 2})
        assert value == fixture_algebra.const(5)
        partial = (x * y).specialize({0: fixture_algebra.const(3)})
        assert partial == y * 3

    def test_leading_term_is_graded(self, fixture_algebra):
        x = ParamPoly.variable(fixture_algebra, 0)
        y = ParamPoly.variable(fixture_algebra, 1)
        exponent, coefficient = (x * y * 5 + x + 1).leading_term()
        assert sum(exponent) == 2
        assert coefficient == fixture_algebra.const(5)

    def test_division_by_multiple(self, fixture_context):
        cond1, _ = fixture_context.conditions
        p = ParamPoly.variable(fixture_context.algebra, 1) + 3
        assert not ParamAlgService.divide(p * cond1, [cond1])
        assert ParamAlgService.divide(p, [cond1]) == p


class TestAlphaMatrix:
    @given(left=st.tuples(small_rationals, small_rationals), right=st.tuples(small_rationals, small_rationals))
    @hypothesis_settings(max_examples=25, deadline=None)
    def test_determinant_is_multiplicative(self, fixture_algebra, left, right):
        a = _const_matrix(fixture_algebra, (left[0], left[1], right[0], 1))
        b = _const_matrix(fixture_algebra, (right[1], 2, left[1], right[0]))
        assert (a @ b).det() == a.det() * b.det()

    def test_hat_is_adjugate(self, fixture_algebra):
        a = _const_matrix(fixture_algebra, (1, 2, 3, 4))
        det = a.det()
        zero = fixture_algebra.zero()
        assert a @ a.hat() == AlphaMatrix(det, zero, zero, det)
        assert ParamAlgService.pairing(a, a) == det * 2


class TestConditions:
    """cond1, cond2 and the alpha-tilde substitution"""

    def test_alpha_star_solves_both(self, fixture_context):
        algebra, constants = fixture_context.algebra, fixture_context.constants
        alpha = fixture_context.alpha_star
        tilde = ParamAlgService.tilde_from_alpha(alpha, algebra)
        assert ParamAlgService.cond1_of(alpha, algebra, constants).is_zero
        assert ParamAlgService.cond2_of(tilde, algebra, constants).is_zero

    def test_alpha_star_is_real(self, fixture_context):
        assert all(e.is_real for e in fixture_context.alpha_star.entries())

    def test_tilde_product_is_scalar(self, fixture_context):
        algebra = fixture_context.algebra
        alpha = fixture_context.alpha_star
        tilde = ParamAlgService.tilde_from_alpha(alpha, algebra)
        scalar = ParamAlgService.ratio(algebra) * alpha.conjugate().det()
        zero = algebra.zero()
        assert alpha.conjugate() @ tilde == AlphaMatrix(scalar, zero, zero, scalar)

    def test_completed_point_solves_cond1(self, fixture_context):
        algebra, constants = fixture_context.algebra, fixture_context.constants
        point = solve_cond1_for_a34(
            algebra.const(1), algebra.const(Fraction(-1, 2)), algebra.const(2), algebra, constants
        )
        assert point is not None
        assert ParamAlgService.cond1_of(point, algebra, constants).is_zero

    def test_formal_condition_specializes(self, fixture_context):
        """The formal cond1 evaluated at alpha* vanishes"""
        cond1, _ = fixture_context.conditions
        alpha = fixture_context.alpha_star
        value = cond1.specialize(dict(enumerate(alpha.entries())))
        assert value.is_zero

    def test_zero_alpha_gives_identity(self, fixture_algebra):
        zero = _const_matrix(fixture_algebra, (0, 0, 0, 0))
        assert ParamAlgService.w_substitution(zero, zero) == FormsService.identity_map(fixture_algebra)


class TestInverseTransform:
    def test_alpha_star(self, fixture_context):
        algebra = fixture_context.algebra
        alpha = fixture_context.alpha_star
        t = ParamAlgService.inverse_transform(alpha, algebra)
        r = ParamAlgService.ratio(algebra)
        assert t.c * (1 - r * alpha.det().conjugate()) == algebra.one()
        assert t.c_tilde == t.c.conjugate()
        substitution = ParamAlgService.w_substitution(alpha, t.alpha_tilde)
        assert substitution.compose(t.inverse) == FormsService.identity_map(algebra)

    def test_J_squares_to_minus_one(self, fixture_context):
        algebra = fixture_context.algebra
        t = ParamAlgService.inverse_transform(fixture_context.alpha_star, algebra)
        minus = LinMap({s: {s: -algebra.one()} for s in range(8)})
        assert t.J.compose(t.J) == minus

    def test_singular_locus(self, fixture_algebra):
        """det alpha = (x2 - x4)/(x1 - x3) admits no inverse"""
        one, zero = fixture_algebra.one(), fixture_algebra.zero()
        alpha = AlphaMatrix(one, zero, zero, ParamAlgService.ratio(fixture_algebra).inverse())
        with pytest.raises(SingularTransform):
            ParamAlgService.inverse_transform(alpha, fixture_algebra)


class TestOmegaPreserving:
    def test_alpha_star_satisfies_relations(self, fixture_context):
        alpha = fixture_context.alpha_star
        s1, s2 = ParamAlgService.omega_coefficients(fixture_context.algebra)
        assert alpha.a22 == alpha.a11.conjugate() * s1
        assert alpha.a12 == -(alpha.a21.conjugate() * s2)

    def test_quadratic_part_is_determinant(self, fixture_context):
        algebra, constants = fixture_context.algebra, fixture_context.constants
        a12 = ParamPoly.variable(algebra, 0)
        a32 = ParamPoly.variable(algebra, 2)
        alpha = ParamAlgService.omega_preserving_alpha(a12, a32, algebra)
        residual = ParamAlgService.ellipsoid_residual(a12, a32, algebra, constants)
        assert residual.quadratic == alpha.det()

    def test_alpha_star_on_ellipsoid(self, fixture_context):
        algebra, constants = fixture_context.algebra, fixture_context.constants
        alpha = fixture_context.alpha_star
        residual = ParamAlgService.ellipsoid_residual(alpha.a11, alpha.a21, algebra, constants)
        assert residual.ellipsoid.is_zero
        assert not residual.singular.is_zero


class TestIdealReduction:
    def test_conditions_reduce_to_zero(self, fixture_context):
        cond1, cond2 = fixture_context.conditions
        assert not ParamAlgService.reduce_by_conditions(cond1, [cond1, cond2])
        combination = cond1 * ParamPoly.variable(fixture_context.algebra, 5) + cond2 * 3
        assert not ParamAlgService.reduce_by_conditions(combination, [cond1, cond2])

    @given(terms=quadratic_terms, shift=st.integers(min_value=0, max_value=7))
    @hypothesis_settings(max_examples=25, deadline=None)
    def test_reduction_is_idempotent(self, fixture_context, terms, shift):
        cond1, cond2 = fixture_context.conditions
        p = AlgebraFactory.param_poly(fixture_context.algebra, terms)
        p = p + cond1 * ParamPoly.variable(fixture_context.algebra, shift)
        once = ParamAlgService.reduce_by_conditions(p, [cond1, cond2])
        assert ParamAlgService.reduce_by_conditions(once, [cond1, cond2]) == once

    def test_unit_is_not_reduced(self, fixture_context):
        one = ParamPoly.constant(fixture_context.algebra, 1)
        assert ParamAlgService.reduce_by_conditions(one, list(fixture_context.conditions)) == one

    def test_formal_conditions_are_quadratic(self, fixture_context):
        cond1, cond2 = ParamAlgService.condition_polys(fixture_context.algebra, fixture_context.constants)
        assert cond1.total_degree == 2
        assert cond1.variables() <= {0, 1, 2, 3}
        assert cond2.variables() <= {4, 5, 6, 7}

    def test_symbolic_parts_without_change(self, fixture_context):
        """With alpha = 0 the (1,1) class A1 has no (2,0) or (0,2) part"""
        zero = _const_matrix(fixture_context.algebra, (0, 0, 0, 0))
        parts = ParamAlgService.symbolic_02_parts(fixture_context.forms.A1, zero, zero)
        assert set(parts) == {(0, 2), (2, 0)}
        assert all(not c for coefficients in parts.values() for c in coefficients.values())
