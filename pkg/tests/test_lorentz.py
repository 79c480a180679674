"""Minkowski product and hyperboloid membership."""

import math

import pytest
from hypothesis import given, strategies as st

from hypstab.lorentz import LorentzVector, minkowski_inner, on_hyperboloid


def test_inner_signature():
    assert minkowski_inner((1.0, 0.0, 0.0), (1.0, 0.0, 0.0)) == -1.0
    assert minkowski_inner((0.0, 1.0, 0.0), (0.0, 1.0, 0.0)) == 1.0
    assert minkowski_inner((0.0, 0.0, 2.0), (0.0, 0.0, 3.0)) == 6.0
    # mixed timelike/spacelike cross terms
    assert minkowski_inner((2.0, 3.0), (5.0, 7.0)) == -10.0 + 21.0


def test_inner_accepts_vectors_and_sequences():
    v = LorentzVector((2.0, 1.0, 1.0, 1.0))
    assert minkowski_inner(v, v) == pytest.approx(-1.0)
    assert minkowski_inner(v, (2.0, 1.0, 1.0, 1.0)) == pytest.approx(-1.0)
    assert minkowski_inner([2.0, 1.0, 1.0, 1.0], v) == pytest.approx(-1.0)


def test_inner_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        minkowski_inner((1.0, 0.0), (1.0, 0.0, 0.0))


def test_vector_validation():
    with pytest.raises(ValueError):
        LorentzVector((1.0,))
    v = LorentzVector((1, 0, 0))  # ints are coerced
    assert v.coords == (1.0, 0.0, 0.0)
    assert v.dim == 3
    assert list(v) == [1.0, 0.0, 0.0]
    assert v[0] == 1.0


def test_on_hyperboloid_basepoint_and_sheets():
    assert on_hyperboloid((1.0, 0.0, 0.0, 0.0), 1e-12)
    # lower sheet satisfies the quadric but not the sheet condition
    assert not on_hyperboloid((-1.0, 0.0, 0.0, 0.0), 1e-12)
    # spacelike unit vector is off the quadric entirely
    assert not on_hyperboloid((0.0, 1.0, 0.0, 0.0), 1e-3)


def test_on_hyperboloid_tolerance_semantics():
    x = (1.0, 1e-5, 0.0)  # <x,x> = -1 + 1e-10
    assert on_hyperboloid(x, 1e-9)
    assert not on_hyperboloid(x, 1e-11)
    with pytest.raises(ValueError):
        on_hyperboloid(x, 0.0)
    with pytest.raises(ValueError):
        on_hyperboloid(x, -1e-9)


@given(st.floats(-5.0, 5.0), st.floats(0.0, 2 * math.pi))
def test_boosted_points_stay_on_hyperboloid(u, theta):
    """Orbit of the basepoint under a boost and a rotation."""
    x = (
        math.cosh(u),
        math.sinh(u) * math.cos(theta),
        math.sinh(u) * math.sin(theta),
    )
    assert on_hyperboloid(x, 1e-9)


@given(
    st.lists(st.floats(-10.0, 10.0), min_size=3, max_size=3),
    st.lists(st.floats(-10.0, 10.0), min_size=3, max_size=3),
)
def test_inner_is_symmetric_bilinear(xs, ys):
    assert minkowski_inner(xs, ys) == pytest.approx(minkowski_inner(ys, xs), abs=1e-9)
    doubled = [2.0 * v for v in xs]
    assert minkowski_inner(doubled, ys) == pytest.approx(
        2.0 * minkowski_inner(xs, ys), abs=1e-9
    )
