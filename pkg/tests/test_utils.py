"""
Test utilities and fixtures for the claim verifier tests.

This module provides:
- Factories for quartics, splitting algebras and field elements
- Session fixtures holding the expensive per-quartic context
- Hypothesis strategies for small exact coefficient data, forms and maps
- Helper assertions with readable failure messages
"""

from fractions import Fraction
from typing import List, Sequence

import pytest
from hypothesis import strategies as st

from src.models.form import Form, LinMap
from src.models.param_poly import ParamPoly
from src.models.splitting import SplitElem, SplittingAlgebra
from src.schemas.quartic import Quartic
from src.services.claims_service import VerificationContext, build_context
from src.services.kernel_service import KernelService

# x^4 - 4x^2 + x + 1: Delta = 1957
FIXTURE_COEFFICIENTS = (1, -4, 1, 1)
FIXTURE_DELTA = Fraction(1957)

# First admissible quartic of the bound-5 search: Delta = 5744
SEARCH_COEFFICIENTS = (1, -5, -2, 1)
SEARCH_DELTA = Fraction(5744)

# x^4 - 2: two real roots
REJECTED_COEFFICIENTS = (1, 0, 0, -2)


# ============================================================================
# Factories
# ============================================================================


class AlgebraFactory:
    """Factory for quartics and exact field data"""

    @staticmethod
    def quartic(coefficients: Sequence[int] = FIXTURE_COEFFICIENTS) -> Quartic:
        """Quartic a x^4 + b x^2 + c x + d from (a, b, c, d)"""
        a, b, c, d = coefficients
        return Quartic(a=a, b=b, c=c, d=d)

    @staticmethod
    def algebra(coefficients: Sequence[int] = FIXTURE_COEFFICIENTS) -> SplittingAlgebra:
        return KernelService.build_algebra(AlgebraFactory.quartic(coefficients))

    @staticmethod
    def element(algebra: SplittingAlgebra, values: Sequence[int]) -> SplitElem:
        """Element with the given leading coordinates, the rest zero"""
        vector = list(values) + [0] * (48 - len(values))
        return algebra.from_vector(vector)

    @staticmethod
    def monomial(seq: Sequence[int], algebra: SplittingAlgebra) -> Form:
        return Form.monomial(tuple(seq), algebra.one())

    @staticmethod
    def form(algebra: SplittingAlgebra, terms) -> Form:
        """Sum of c * d(seq) over (seq, c) pairs"""
        total = Form({})
        for seq, c in terms:
            total = total + Form.monomial(tuple(seq), algebra.const(c))
        return total

    @staticmethod
    def linmap(algebra: SplittingAlgebra, rows) -> LinMap:
        """Map sending generator s to sum c * d(t) over the (t, c) pairs of rows[s]"""
        return LinMap({s: {t: algebra.const(c) for t, c in row} for s, row in enumerate(rows)})

    @staticmethod
    def param_poly(algebra: SplittingAlgebra, terms) -> ParamPoly:
        """Sum of c * a_j * a_k over (j, k, c) triples"""
        total = ParamPoly.constant(algebra, 0)
        for j, k, c in terms:
            total = total + ParamPoly.variable(algebra, j) * ParamPoly.variable(algebra, k) * c
        return total


# ============================================================================
# Strategies
# ============================================================================


small_vectors = st.lists(st.integers(min_value=-3, max_value=3), min_size=6, max_size=6)
nonzero_vectors = small_vectors.filter(any)
small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def _monomial_terms(degree: int):
    keys = st.lists(st.integers(min_value=0, max_value=7), min_size=degree, max_size=degree, unique=True)
    return st.lists(st.tuples(keys, st.integers(min_value=-3, max_value=3)), min_size=1, max_size=3)


# (degree, terms) of a homogeneous form of degree 0..3
homogeneous_forms = st.integers(min_value=0, max_value=3).flatmap(
    lambda d: st.tuples(st.just(d), _monomial_terms(d))
)
mixed_forms = st.lists(
    st.tuples(
        st.lists(st.integers(min_value=0, max_value=7), max_size=3, unique=True),
        st.integers(min_value=-3, max_value=3),
    ),
    min_size=1,
    max_size=3,
)
# one (target, coefficient) list per source generator
map_rows = st.lists(
    st.lists(
        st.tuples(st.integers(min_value=0, max_value=7), st.integers(min_value=-2, max_value=2)),
        min_size=1,
        max_size=2,
    ),
    min_size=8,
    max_size=8,
)
quadratic_terms = st.lists(
    st.tuples(
        st.integers(min_value=0, max_value=7),
        st.integers(min_value=0, max_value=7),
        st.integers(min_value=-3, max_value=3),
    ),
    min_size=1,
    max_size=4,
)


# ============================================================================
# Helper Functions
# ============================================================================


class TestHelpers:
    """Helper assertions for tests"""

    @staticmethod
    def assert_verified(report):
        """Assert a claim report carries a verified status"""
        assert report.verified, (
            f"Expected {report.id} verified, got {report.status.value}: {report.witness}"
        )

    @staticmethod
    def assert_rational(value: SplitElem, expected: Fraction):
        """Assert a field element is the given rational number"""
        actual = value.rational_value()
        assert actual == expected, f"Expected rational {expected}, got {actual}"

    @staticmethod
    def assert_pure(form: Form, p: int, q: int):
        """Assert a form has a single bidegree"""
        assert form.is_pure(p, q), f"Expected pure ({p},{q}), got bidegrees {form.bidegrees()}"

    @staticmethod
    def claim_ids(reports) -> List[str]:
        return [r.id for r in reports]


# ============================================================================
# Pytest Fixtures
# ============================================================================


@pytest.fixture(scope="session")
def fixture_context() -> VerificationContext:
    """Verification context of the fixture quartic, shared by every test"""
    return build_context(AlgebraFactory.quartic())


@pytest.fixture(scope="session")
def fixture_algebra(fixture_context) -> SplittingAlgebra:
    return fixture_context.algebra


@pytest.fixture(scope="session")
def rejected_context() -> VerificationContext:
    return build_context(AlgebraFactory.quartic(REJECTED_COEFFICIENTS))


@pytest.fixture(scope="session")
def search_context() -> VerificationContext:
    """Context of the first quartic found by the bound-5 search"""
    return build_context(AlgebraFactory.quartic(SEARCH_COEFFICIENTS))


@pytest.fixture
def algebra_factory():
    """Provide AlgebraFactory instance"""
    return AlgebraFactory()


@pytest.fixture
def test_helpers():
    """Provide TestHelpers instance"""
    return TestHelpers()
