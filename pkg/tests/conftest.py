import pytest

from mazur_floer import cfk, pipeline


@pytest.fixture(scope="session")
def companion_names():
    return pipeline.default_companions()


@pytest.fixture(scope="session")
def models(companion_names):
    return {name: cfk.model(name) for name in companion_names}


@pytest.fixture(scope="session")
def t23():
    return cfk.model("T23")
