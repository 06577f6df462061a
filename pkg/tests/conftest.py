import pytest

from logres.poly import Ring


def P(ring, text):
    return ring.parse(text)


@pytest.fixture(scope="session")
def cusp():
    R = Ring(("x", "y"))
    return R.parse("x^2-y^3")


@pytest.fixture(scope="session")
def f0():
    R = Ring(("z", "x", "y"), (3, 4, 4))
    return R.parse("x^3+y^3+z^4")


@pytest.fixture(scope="session")
def ft():
    R = Ring(("z", "x", "y"), (3, 4, 4), "t")
    return R.parse("x^3+y^3+z^4+t*x*y*z^2")


@pytest.fixture(scope="session")
def scherk():
    R = Ring(("x", "y"))
    return R.parse("x^5+x^2*y^2+y^5")


@pytest.fixture(scope="session")
def e12():
    R = Ring(("x", "y"), (7, 3), "t")
    return R.parse("x^3+y^7+t*x*y^6")


@pytest.fixture(scope="session")
def all_fixtures(cusp, f0, ft, scherk, e12):
    return {"cusp": cusp, "f0": f0, "ft": ft, "scherk": scherk, "e12": e12}
