from pytest import fixture

from src.config import settings


@fixture
def default_settings():
    return settings


# Import test utilities fixtures
from tests.test_utils import (  # noqa: E402,F401
    algebra_factory,
    fixture_algebra,
    fixture_context,
    rejected_context,
    search_context,
    test_helpers,
)
