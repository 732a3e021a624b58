import pytest

from relcoeff import RingPresentation, ideal, IdealFlags


@pytest.fixture(scope="session")
def reg2():
    return RingPresentation(["x", "y"], [], 2, label="reg2")


@pytest.fixture(scope="session")
def reg3():
    return RingPresentation(["x", "y", "z"], [], 3, label="reg3")


@pytest.fixture(scope="session")
def cusp():
    return RingPresentation(["x", "y"], ["y^2 - x^3"], 1, label="cusp",
                            gorenstein=True)


@pytest.fixture(scope="session")
def ring_northcott():
    return RingPresentation(
        ["X", "Y", "Z", "W"], ["X*Y - Y*Z", "X*Z + Y^3 - Z^2"], 2,
        label="northcott-equality",
    )


@pytest.fixture(scope="session")
def ring_cm_essential():
    return RingPresentation(
        ["X", "Y", "Z", "U", "V", "W"],
        ["Z^2", "Z*U", "Z*V", "U*V", "Y*Z - U^3", "X*Z - V^3"], 3,
        label="cm-essential",
    )


@pytest.fixture(scope="session")
def ring_narita():
    return RingPresentation(
        ["X", "Y", "Z", "U", "V"],
        ["Z^2", "Z*U", "Z*V", "U*V", "Y^2*Z - U^3", "X^2*Z - V^3"], 2,
        label="narita-equality",
    )


@pytest.fixture(scope="session")
def ring_sally():
    return RingPresentation(
        ["X", "Y", "Z", "W"], ["X^2 - Y^2*Z", "X*Y^4 - Z^2"], 2,
        label="sally-bound",
    )
