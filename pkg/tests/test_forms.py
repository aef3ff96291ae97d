"""
Forms tests: exterior algebra, pullbacks, the standard forms and the
Chern character identities they satisfy.
"""

from fractions import Fraction

import pytest
from hypothesis import given, seed, settings as hypothesis_settings
from hypothesis import strategies as st

from src.exceptions import NotPure02, RankMismatch
from src.models.form import Form
from src.services.forms_service import TETRAHEDRAL_P, TETRAHEDRAL_Q, FormsService
from tests.test_utils import (
    FIXTURE_DELTA,
    AlgebraFactory,
    TestHelpers,
    homogeneous_forms,
    map_rows,
    mixed_forms,
)

index_sequences = st.lists(st.integers(min_value=0, max_value=7), min_size=1, max_size=4, unique=True)


class TestExteriorAlgebra:
    """Signs and bidegrees of monomials"""

    @given(seq=index_sequences)
    @hypothesis_settings(max_examples=40, deadline=None)
    def test_monomial_equals_wedge_of_generators(self, fixture_algebra, seq):
        one = fixture_algebra.one()
        product = Form.constant(one)
        for index in seq:
            product = product.wedge(Form({(index,): one}))
        assert product == AlgebraFactory.monomial(seq, fixture_algebra)

    @seed(1957)
    @given(left=mixed_forms, middle=mixed_forms, right=mixed_forms)
    @hypothesis_settings(max_examples=100, deadline=None)
    def test_wedge_is_associative(self, fixture_algebra, left, middle, right):
        a, b, c = (AlgebraFactory.form(fixture_algebra, t) for t in (left, middle, right))
        assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))

    @seed(1957)
    @given(left=homogeneous_forms, right=homogeneous_forms)
    @hypothesis_settings(max_examples=100, deadline=None)
    def test_wedge_is_graded_commutative(self, fixture_algebra, left, right):
        (p, left_terms), (q, right_terms) = left, right
        a = AlgebraFactory.form(fixture_algebra, left_terms)
        b = AlgebraFactory.form(fixture_algebra, right_terms)
        assert a.wedge(b) == b.wedge(a) * (-1) ** (p * q)

    def test_one_forms_anticommute(self, fixture_algebra):
        one = fixture_algebra.one()
        dz1, dz2 = Form({(0,): one}), Form({(1,): one})
        assert dz1.wedge(dz2) == -dz2.wedge(dz1)
        assert dz1.wedge(dz1).is_zero

    def test_repeated_index_vanishes(self, fixture_algebra):
        assert Form.monomial((0, 3, 0), fixture_algebra.one()).is_zero

    def test_bidegree_split(self, fixture_context):
        forms = fixture_context.forms
        mixed = forms.omega + forms.theta
        parts = FormsService.bidegree_split(mixed)
        assert parts[(1, 1)] == forms.omega
        assert parts[(4, 0)] == forms.theta

    def test_conjugate_swaps_bidegree(self, fixture_context):
        theta = fixture_context.forms.theta
        TestHelpers.assert_pure(FormsService.conjugate_form(theta), 0, 4)
        assert FormsService.conjugate_form(theta) == fixture_context.forms.theta_bar

    def test_mixed_generators_rejected(self, fixture_algebra):
        one = fixture_algebra.one()
        with pytest.raises(ValueError):
            Form({(0,): one}) + Form({(0,): one}, generators=4)


class TestStandardForms:
    """omega, theta, M and M'"""

    def test_volume_normalization(self, fixture_context):
        forms = fixture_context.forms
        constants = fixture_context.constants
        one = fixture_context.algebra.one()
        TestHelpers.assert_rational(FormsService.pair_top(forms.theta.wedge(forms.theta_bar), constants), Fraction(1))
        TestHelpers.assert_rational(FormsService.pair_top(forms.omega.power(4, one), constants), Fraction(24))

    def test_bidegrees(self, fixture_context):
        forms = fixture_context.forms
        TestHelpers.assert_pure(forms.omega, 1, 1)
        TestHelpers.assert_pure(forms.theta, 4, 0)
        TestHelpers.assert_pure(forms.M, 2, 2)
        TestHelpers.assert_pure(forms.M_prime, 2, 2)

    def test_metric_real(self, fixture_context):
        assert all(g.is_real for g in fixture_context.forms.metric.values())

    def test_M_from_tetrahedra(self, fixture_context):
        forms = fixture_context.forms
        algebra = fixture_context.algebra
        d = fixture_context.constants.vandermonde
        p = AlgebraFactory.monomial(TETRAHEDRAL_P, algebra)
        q = AlgebraFactory.monomial(TETRAHEDRAL_Q, algebra)
        assert forms.M == (p + q) * d
        assert forms.M_prime == (p - q) * algebra.imaginary_unit()

    def test_T_a(self, fixture_context):
        """A1^2 on dz1 dz3 dzb2 dzb4 is -2D"""
        a1 = fixture_context.forms.A1
        coefficient = a1.wedge(a1).coefficient((0, 2, 5, 7))
        assert coefficient * Fraction(1, 2) == -fixture_context.constants.vandermonde

    def test_A_wedge_omega_cubed(self, fixture_context):
        forms = fixture_context.forms
        cube = forms.omega.power(3, fixture_context.algebra.one())
        assert forms.A1.wedge(cube).is_zero
        assert forms.A2.wedge(cube).is_zero


class TestMaps:
    """Isogenies, the real structure and restriction to Y"""

    def test_isogeny_eigenvalues(self, fixture_context):
        forms = fixture_context.forms
        model, constants = fixture_context.model, fixture_context.constants
        pi_a = FormsService.isogeny_map(model, constants.isogeny_a)
        pi_b = FormsService.isogeny_map(model, constants.isogeny_b)
        assert pi_a.pullback(forms.omega) == forms.omega * (1 + FIXTURE_DELTA)
        assert pi_b.pullback(forms.theta) == forms.theta * FIXTURE_DELTA**2

    def test_sigma1(self, fixture_context):
        forms = fixture_context.forms
        algebra = fixture_context.algebra
        sigma = FormsService.form_sigma1(algebra)
        assert FormsService.linmap_compose(sigma, sigma) == FormsService.identity_map(algebra)
        assert FormsService.pullback(sigma, forms.theta) == forms.theta_bar
        assert sigma.pullback(forms.omega) == -forms.omega

    @given(first=map_rows, second=map_rows, terms=mixed_forms)
    @hypothesis_settings(max_examples=20, deadline=None)
    def test_pullback_is_functorial(self, fixture_algebra, first, second, terms):
        """Pulling back along F then G equals pulling back along the composite"""
        f = AlgebraFactory.linmap(fixture_algebra, first)
        g = AlgebraFactory.linmap(fixture_algebra, second)
        form = AlgebraFactory.form(fixture_algebra, terms)
        composite = FormsService.linmap_compose(f, g)
        step = FormsService.pullback(f, form)
        assert FormsService.pullback(composite, form) == FormsService.pullback(g, step)

    def test_restriction_to_Y(self, fixture_context):
        forms = fixture_context.forms
        algebra = fixture_context.algebra
        assert FormsService.restrict_to_Y(forms.omega).is_zero
        assert FormsService.pair_Y(forms.M, algebra) == fixture_context.constants.vandermonde * 2
        assert FormsService.pair_Y(forms.M_prime, algebra).is_zero

    def test_phi_kills_holomorphic_volume(self, fixture_context):
        """dz1 dz2 dz3 dz4 has pi_a eigenvalue (1+Delta)^2"""
        f = AlgebraFactory.monomial((0, 1, 2, 3), fixture_context.algebra)
        result = FormsService.phi_operator(fixture_context.model, fixture_context.constants, f)
        assert result.is_zero

    def test_phi_on_M(self, fixture_context):
        """Phi_a M = -8 Delta^2 (2 Delta M - (1 - Delta) Delta M')"""
        forms = fixture_context.forms
        delta = FIXTURE_DELTA
        result = FormsService.phi_operator(fixture_context.model, fixture_context.constants, forms.M)
        expected = (forms.M * (2 * delta) - forms.M_prime * ((1 - delta) * delta)) * (-8 * delta**2)
        assert result == expected


class TestChernCharacter:
    def test_exponential_truncates(self, fixture_context):
        a1 = fixture_context.forms.A1
        exp = FormsService.exponential(a1, fixture_context.algebra.one(), max_degree=4)
        assert exp.degrees() <= {0, 2, 4}

    def test_key_theorem(self, fixture_context):
        """Degree-4 part of Delta ch(V1) - ch(V2) is 4 Delta M"""
        forms = fixture_context.forms
        algebra = fixture_context.algebra
        delta = FIXTURE_DELTA
        terms = [(delta, forms.A1), (delta, -forms.A1), (Fraction(-1), forms.A2), (Fraction(-1), -forms.A2)]
        ch = FormsService.ch_combination(algebra, terms, max_degree=4)
        assert ch.degree_part(2).is_zero
        assert ch.degree_part(4) == forms.M * (4 * delta)
        c1, _ = FormsService.chern_parts(ch, 2 * delta - 2)
        assert c1.is_zero

    def test_rank_mismatch(self, fixture_context):
        ch = FormsService.ch_combination(fixture_context.algebra, [(Fraction(1), fixture_context.forms.A1)])
        with pytest.raises(RankMismatch):
            FormsService.chern_parts(ch, 2)

    def test_line_bundle_class_must_be_two_form(self, fixture_context):
        with pytest.raises(ValueError):
            FormsService.ch_combination(fixture_context.algebra, [(Fraction(1), fixture_context.forms.theta)])


class TestStar:
    def test_involution(self, fixture_context):
        forms = fixture_context.forms
        f = AlgebraFactory.monomial((4, 5), fixture_context.algebra)
        assert FormsService.star_02(FormsService.star_02(f, forms), forms) == f

    def test_requires_02_form(self, fixture_context):
        forms = fixture_context.forms
        with pytest.raises(NotPure02):
            FormsService.star_02(forms.omega, forms)
