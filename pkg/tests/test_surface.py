import pytest
from hypothesis import given, strategies as st

from ghorkit.surface import HomologyClass, UnsupportedSurfaceError, h1_rank, make_surface


@pytest.mark.parametrize("n,genus", [(2, 1), (4, 2), (6, 3)])
def test_polygon_genus(n, genus):
    s = make_surface(n)
    assert s.genus == genus
    assert h1_rank(s) == n
    assert s.euler_char == 2 - 2 * genus


def test_rejects_degenerate_polygon():
    with pytest.raises(UnsupportedSurfaceError):
        make_surface(1)


vec = st.lists(st.integers(-5, 5), min_size=3, max_size=3).map(lambda v: HomologyClass(tuple(v)))


@given(vec, vec)
def test_homology_group_laws(a, b):
    z = HomologyClass.zero(3)
    assert a + b == b + a
    assert a + z == a
    assert (a - b) + b == a
    assert (a + -a).is_zero()


def test_class_format():
    assert str(HomologyClass((1, -1))) == "(1,-1)"
