import pytest

from zcgroups import build_kneading


@pytest.fixture(scope="session")
def k01():
    return build_kneading([0], [1])


@pytest.fixture(scope="session")
def k02():
    return build_kneading([0], [2])


@pytest.fixture(scope="session")
def family():
    """The single-letter automata for k = 1..5 plus two rank-two instances."""
    auts = [build_kneading([0], [k]) for k in range(1, 6)]
    auts.append(build_kneading([0, 5], [1, 2]))
    auts.append(build_kneading([1, -2], [3, 0]))
    return auts
