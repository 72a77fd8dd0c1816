import pytest

from trilattice import arith


@pytest.fixture(scope="session")
def table_small():
    """Primes to 10^4: enough for the fast unit tests."""
    return arith.sieve(10**4)


@pytest.fixture(scope="session")
def table_million():
    """Primes to 10^6: shared by the theta sweeps and acceptance suite."""
    return arith.sieve(10**6)
