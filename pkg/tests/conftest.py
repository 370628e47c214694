import pytest

from charseq.constructions import fermat_curve
from charseq.verify import corpus_curve


@pytest.fixture(scope="session")
def quartic_big():
    """Fermat quartic over the default working modulus."""
    return fermat_curve(10007, 4)


@pytest.fixture(scope="session")
def quartic_small():
    """Smooth quartic over the full-scan field."""
    return corpus_curve(101, 4)


@pytest.fixture(scope="session")
def quintic_small():
    return corpus_curve(101, 5)


@pytest.fixture(scope="session")
def sextic_big():
    return corpus_curve(10007, 6)
