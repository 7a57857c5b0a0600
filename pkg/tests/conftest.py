import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def registry():
    from qcongruences.congruences import load_registry

    return load_registry()
