import pytest

from ultracon.corpus import corpus_by_name, standard_corpus


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()


@pytest.fixture(scope="session")
def by_name():
    return corpus_by_name()


@pytest.fixture(scope="session")
def c3(by_name):
    return by_name["C3"]


@pytest.fixture(scope="session")
def s2(by_name):
    return by_name["S2"]


@pytest.fixture(scope="session")
def z3(by_name):
    return by_name["Z3"]


@pytest.fixture(scope="session")
def c4(by_name):
    return by_name["C4"]
