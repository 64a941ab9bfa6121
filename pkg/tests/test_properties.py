import pytest

from property_suites import ALL_SUITES, CASES


@pytest.mark.parametrize("name,suite", ALL_SUITES, ids=[n for n, _ in ALL_SUITES])
def test_property_suite(name, suite):
    assert suite() >= CASES
