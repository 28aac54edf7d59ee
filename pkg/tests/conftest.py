import pytest

from semicolor.groups import build_dihedral, build_p4m_quotient, subgroup_from_words


@pytest.fixture(scope="session")
def d6():
    return build_dihedral(6)


@pytest.fixture(scope="session")
def hexH(d6):
    return subgroup_from_words(d6, "a2,b")


@pytest.fixture(scope="session")
def hexH_rot(d6):
    return subgroup_from_words(d6, "a")


@pytest.fixture(scope="session")
def g2():
    return build_p4m_quotient(2)


@pytest.fixture(scope="session")
def g4():
    return build_p4m_quotient(4)


@pytest.fixture(scope="session")
def pmmH(g2):
    return subgroup_from_words(g2, "b,a2b,x,y")
