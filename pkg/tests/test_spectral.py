"""Sturm-Liouville discretization, inertia counting, and the Morse index of
spherical catenoids.  Constant-coefficient and exponential-weight problems
with known spectra anchor the machinery before it touches the catenoid."""

import math

import numpy as np
import pytest

from hypstab.spectral import (
    IndexReport,
    SturmLiouvilleDisc,
    assemble_mode_operator,
    count_negative_eigenvalues,
    default_count_margin,
    discretize,
    lowest_eigenvalues,
    mode_is_positive_by_bound,
    morse_index,
)
from hypstab.spherical_catenoid import SphericalCatenoid, norm_A_sq


def flat_disc(q_val, R, N):
    return discretize(lambda s: 1.0, lambda s: q_val, R, N)


# -- constant-coefficient box problems: -u'' + q u on [-R, R], Dirichlet ----
# eigenvalues q + (k pi / 2R)^2, k = 1, 2, ...


def test_box_eigenvalues_zero_potential():
    disc = flat_disc(0.0, math.pi, 800)
    got = lowest_eigenvalues(disc, 3)
    for k, lam in enumerate(got, start=1):
        # second-difference eigenvalues undershoot by about lam^2 h^2 / 12
        assert lam == pytest.approx((k / 2.0) ** 2, abs=5e-5)


def test_negative_count_shifted_box():
    # q = -1: eigenvalues -1 + (k/2)^2 for R = pi -> -0.75, 0, 0.75, ...
    # one eigenvalue strictly below zero, one discrete-zero straggler
    for N in (500, 1000, 2000):
        assert count_negative_eigenvalues(flat_disc(-1.0, math.pi, N)) == 1
        assert count_negative_eigenvalues(flat_disc(1.0, math.pi, N)) == 0


def test_raw_count_sees_the_marginal_mode():
    # with zero margin the k = 2 eigenvalue, exactly 0 in the continuum but
    # slightly negative on the grid, is counted too
    disc = flat_disc(-1.0, math.pi, 1000)
    assert count_negative_eigenvalues(disc, margin=0.0) == 2
    lams = lowest_eigenvalues(disc, 3)
    assert lams[0] == pytest.approx(-0.75, abs=2e-5)
    assert lams[1] == pytest.approx(0.0, abs=2e-5)
    assert lams[2] == pytest.approx(1.25, abs=2e-5)
    assert lams[1] < 0.0  # the discrete straggler the margin absorbs


def test_large_margin_absorbs_everything():
    disc = flat_disc(-1.0, math.pi, 1000)
    assert count_negative_eigenvalues(disc, margin=10.0) == 0


def test_exponential_weight_problem():
    # weight e^{2s}, zero potential, R = pi: substituting u = e^{-s} w maps
    # the pencil to the shifted box, eigenvalues 1 + (k/2)^2
    disc = discretize(lambda s: np.exp(2.0 * s), lambda s: 0.0, math.pi, 2000)
    got = lowest_eigenvalues(disc, 3)
    for k, lam in enumerate(got, start=1):
        assert lam == pytest.approx(1.0 + (k / 2.0) ** 2, abs=5e-5)
    assert count_negative_eigenvalues(disc) == 0


def test_count_matches_eigenvalue_signs():
    disc = flat_disc(-2.0, math.pi, 1500)
    lams = lowest_eigenvalues(disc, 6)
    margin = default_count_margin(disc)
    expected = sum(1 for lam in lams if lam < -margin)
    assert count_negative_eigenvalues(disc) == expected == 2


def test_zero_pivot_retry():
    # R = 2, N = 4, q = -2: h = 1, every diagonal entry is exactly zero and
    # the factorization must fall back to the perturbed shift.  Spectrum of
    # the resulting 3x3 system is -sqrt(2), 0, sqrt(2).
    disc = flat_disc(-2.0, 2.0, 4)
    assert count_negative_eigenvalues(disc, margin=0.0) == 1
    lams = lowest_eigenvalues(disc, 3)
    assert lams[0] == pytest.approx(-math.sqrt(2.0), abs=1e-12)
    assert lams[1] == pytest.approx(0.0, abs=1e-12)
    assert lams[2] == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_discretize_validation():
    with pytest.raises(ValueError):
        discretize(lambda s: 1.0, lambda s: 0.0, 0.0, 100)
    with pytest.raises(ValueError):
        discretize(lambda s: 1.0, lambda s: 0.0, 1.0, 3)
    with pytest.raises(ValueError):
        discretize(lambda s: 1.0, lambda s: 0.0, 1.0, 100.0)


def test_disc_field_validation():
    grid = np.linspace(-1.0, 1.0, 11)
    ones = np.ones_like(grid)
    mid = np.ones(10)
    with pytest.raises(ValueError):
        SturmLiouvilleDisc(0, 1.0, grid, -ones, mid, ones)  # negative weight
    warped = grid.copy()
    warped[3] += 0.05
    with pytest.raises(ValueError):
        SturmLiouvilleDisc(0, 1.0, warped, ones, mid, ones)  # non-uniform


def test_assemble_mode_operator_validation():
    cat = SphericalCatenoid(0.6)
    with pytest.raises(ValueError):
        assemble_mode_operator(cat, -1, 10.0, 500)
    with pytest.raises(ValueError):
        assemble_mode_operator(cat, 0, 10.0, 50)  # too few cells
    with pytest.raises(ValueError):
        assemble_mode_operator(cat, 0, 400.0, 500)  # beyond domain cap


def test_mode_potential_values_at_center():
    # q_m(0) = m^2/rho(0)^2 - |A|^2(0) + 2 with rho(0)^2 = a - 1/2, the
    # squared neck radius of the rotation orbit
    for a in (0.6, 1.0, 2.0):
        cat = SphericalCatenoid(a)
        for m in (0, 1, 3):
            disc = assemble_mode_operator(cat, m, 8.0, 200)
            center = disc.potential[100]
            rho_sq = a - 0.5
            expected = m * m / rho_sq - norm_A_sq(cat, 0.0) + 2.0
            assert center == pytest.approx(expected, rel=1e-12)


def test_mode_weight_is_rotation_radius():
    cat = SphericalCatenoid(0.8)
    disc = assemble_mode_operator(cat, 0, 6.0, 300)
    s = disc.grid[225]
    w = cat.a * math.cosh(2.0 * s) - 0.5
    assert disc.weight[225] == pytest.approx(math.sqrt(w), rel=1e-12)


def test_positive_mode_screen():
    assert mode_is_positive_by_bound(SphericalCatenoid(0.6), 10)
    assert mode_is_positive_by_bound(SphericalCatenoid(0.6), 2)
    assert mode_is_positive_by_bound(SphericalCatenoid(10.0), 2)
    # m = 0 keeps the unstable direction in play, never screened out
    assert not mode_is_positive_by_bound(SphericalCatenoid(0.6), 0)
    assert not mode_is_positive_by_bound(SphericalCatenoid(10.0), 0)
    with pytest.raises(ValueError):
        mode_is_positive_by_bound(SphericalCatenoid(0.6), -1)


def test_morse_index_below_threshold():
    rep = morse_index(SphericalCatenoid(0.6), R=10.0, N=2000, m_max=5)
    assert isinstance(rep, IndexReport)
    assert rep.total_index == 1
    assert rep.converged
    by_mode = {m.mode: m.negative_count for m in rep.modes}
    assert by_mode[0] == 1
    assert all(count == 0 for mode, count in by_mode.items() if mode != 0)
    # rotational modes enter twice; the report carries each once with the
    # doubling applied in the total
    assert rep.total_index == by_mode[0] + 2 * sum(
        count for mode, count in by_mode.items() if mode != 0
    )


def test_morse_index_above_threshold():
    for a in (0.8, 1.0, 10.0):
        rep = morse_index(SphericalCatenoid(a), R=10.0, N=1500, m_max=3)
        assert rep.total_index == 0, a
        assert rep.converged


def test_morse_index_transition_brackets_critical_neck():
    flips = []
    values = [0.72 + 0.01 * k for k in range(9)]
    for a in values:
        rep = morse_index(SphericalCatenoid(a), R=10.0, N=1000, m_max=0)
        flips.append(rep.total_index)
    assert flips[0] == 1 and flips[-1] == 0
    changes = [i for i in range(1, len(flips)) if flips[i] != flips[i - 1]]
    assert len(changes) == 1
    crossing = 0.5 * (values[changes[0] - 1] + values[changes[0]])
    assert abs(crossing - 0.7341) < 0.05


def test_morse_index_converges_across_necks():
    for a in (0.55, 0.65, 0.7, 1.5):
        rep = morse_index(SphericalCatenoid(a), R=9.0, N=900, m_max=2)
        assert rep.converged, a


def test_morse_index_stable_under_domain_growth():
    cat = SphericalCatenoid(0.6)
    # same cell width h = 0.01, growing window
    for R, N in ((8.0, 1600), (12.0, 2400), (16.0, 3200)):
        rep = morse_index(cat, R=R, N=N, m_max=1)
        assert rep.total_index == 1, R


def test_morse_index_validation():
    cat = SphericalCatenoid(0.6)
    with pytest.raises(ValueError):
        morse_index(cat, R=-1.0)
    with pytest.raises(ValueError):
        morse_index(cat, m_max=-1)
    with pytest.raises(ValueError):
        morse_index(cat, k_eigs=0)


def test_report_aliases():
    rep = morse_index(SphericalCatenoid(1.0), R=6.0, N=600, m_max=0)
    assert rep.R == rep.radius == 6.0
    assert rep.N == rep.nodes == 600
    assert rep.a == 1.0
