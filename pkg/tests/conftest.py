import random

import pytest

from paratorsion import corpus
from paratorsion.pstruct import Structure


def pytest_report_header(config):
    return f"paratorsion seed: {corpus.seed_from_env()} (set PARATORSION_SEED to override)"


@pytest.fixture(scope="session")
def seed():
    return corpus.seed_from_env()


@pytest.fixture
def rng(seed):
    return random.Random(seed)


@pytest.fixture(scope="session")
def population(seed):
    """Corpus structures followed by 100 seeded coframe perturbations."""
    out = [(name, Structure(L, check=False)) for name, L in corpus.algebras()]
    out += [(name, Structure(L, M, check=False)) for name, L, M in corpus.perturbations(seed, 100)]
    return out
