import pytest

from refdecomp.gen import generate_methods
from refdecomp.minij import tokenize


def token_keys(text: str):
    return [(t.kind, t.lexeme) for t in tokenize(text)]


@pytest.fixture(scope="session")
def method_corpus():
    """A shared batch of generated methods for property-style tests."""
    return generate_methods(150, seed=20240811)
