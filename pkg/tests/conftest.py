import pytest

from liouville import parse_prime_set

# the five standing fixture sets used by multiplicativity / sieve cross-checks
FIXTURE_LABELS = ("finite:2", "finite:3,5", "all", "nonres:5", "tail:11")


@pytest.fixture(params=FIXTURE_LABELS)
def fixture_set(request):
    return parse_prime_set(request.param)
