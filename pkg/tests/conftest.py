import pytest

from zeta3 import exactdet
from zeta3.construct import (
    base_quotient,
    connected_covers,
    find_triangle_presentation,
    first_presentation_with_covers,
    projective_plane,
)


def pytest_configure(config):
    # every det_poly_matrix call re-checks itself against det_integer
    exactdet.SELF_CHECK = True


@pytest.fixture(scope="session")
def plane2():
    return projective_plane(2)


@pytest.fixture(scope="session")
def pres2(plane2):
    return find_triangle_presentation(plane2)


@pytest.fixture(scope="session")
def base2(pres2):
    return base_quotient(pres2)


@pytest.fixture(scope="session")
def pres_m2(plane2):
    pres = first_presentation_with_covers(plane2, 2)
    assert pres is not None
    return pres


@pytest.fixture(scope="session")
def covers_m2(pres_m2):
    return [cx for _idx, cx in connected_covers(pres_m2, 2)]


@pytest.fixture(scope="session")
def cover_m2(covers_m2):
    return covers_m2[0]


@pytest.fixture(scope="session")
def pres_m3(plane2):
    pres = first_presentation_with_covers(plane2, 3)
    assert pres is not None
    return pres


@pytest.fixture(scope="session")
def cover_m3(pres_m3):
    return connected_covers(pres_m3, 3)[0][1]


@pytest.fixture(scope="session")
def small_battery(base2, covers_m2, cover_m3):
    """Base plus the small covers; the m=7 cover only joins the acceptance run."""
    return [base2] + covers_m2 + [cover_m3]
