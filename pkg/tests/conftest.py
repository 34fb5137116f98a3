import pytest

from cycspec.datasets import load_counterexample


@pytest.fixture(scope="session")
def bundle():
    return load_counterexample()


@pytest.fixture(scope="session")
def tile_a(bundle):
    return bundle.tile_a


@pytest.fixture(scope="session")
def tile_b(bundle):
    return bundle.tile_b
