"""Hyperbolic minimal catenoids in hyperbolic (n+1)-space.

The rotational profile x(s), parametrized by arclength and starting on the
neck sphere at height x(0) = t > 1, obeys the second-order equation

    x'' = x + (n - 1) * a^2 * x^(1 - 2n),      a = t^(n-1) * sqrt(t^2 - 1),

whose first integral is x'^2 = x^2 - 1 - a^2 x^(2 - 2n).  The module
integrates the second-order form directly so the first integral stays a
genuine consistency check rather than a definition, and carries the rotation
angle of the generating curve alongside.

The start s = 0 is a degenerate point of the arclength parametrization
(x' = 0 there), so integration launches from a quartic Taylor state at a
small offset instead of stepping through the degeneracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .lorentz import LorentzVector

__all__ = [
    "ProfileError",
    "HyperbolicCatenoid",
    "ProfileSample",
    "shape_constant",
    "integrate_profile",
    "norm_A_sq",
    "principal_curvatures",
    "stability_window_max_t",
    "is_stable_by_window",
    "generating_curve",
    "generating_curve_points",
    "DEFAULT_S_MAX",
    "DEFAULT_STEP_TOL",
    "S_MAX_CAP",
]

DEFAULT_S_MAX = 15.0
DEFAULT_STEP_TOL = 1e-10
S_MAX_CAP = 300.0  # x grows like e^s; past this x^2 approaches double overflow
_LAUNCH = 1e-3  # offset of the Taylor launch from the degenerate start
_MAX_STEPS = 200_000
_MIN_STEP = 1e-13

# Dormand-style embedded Runge-Kutta pair (Cash-Karp coefficients), orders
# 5 and 4; the difference of the two weights rows estimates the local error.
_CK_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0),
    (-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0),
    (
        1631.0 / 55296.0,
        175.0 / 512.0,
        575.0 / 13824.0,
        44275.0 / 110592.0,
        253.0 / 4096.0,
    ),
)
_CK_B5 = (37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0)
_CK_B4 = (
    2825.0 / 27648.0,
    0.0,
    18575.0 / 48384.0,
    13525.0 / 55296.0,
    277.0 / 14336.0,
    1.0 / 4.0,
)
_SAFETY = 0.9
_GROW_EXP = -0.2
_SHRINK_EXP = -0.25


class ProfileError(RuntimeError):
    """Profile integration failed or produced geometrically invalid state."""


def shape_constant(n: int, t: float) -> float:
    """Conserved flux constant a = t^(n-1) * sqrt(t^2 - 1) of the profile.

    Requires integer n >= 2 and t >= 1; vanishes exactly at t = 1 (the
    degenerate cylinder-free limit) and is strictly increasing in t.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ValueError(f"dimension n must be an integer >= 2, got {n!r}")
    t = float(t)
    if not (math.isfinite(t) and t >= 1.0):
        raise ValueError(f"neck height t must satisfy t >= 1, got {t}")
    return t ** (n - 1) * math.sqrt(t * t - 1.0)


@dataclass(frozen=True)
class HyperbolicCatenoid:
    """Catenoid with neck height t > 1 in hyperbolic (n+1)-space, n >= 2."""

    n: int
    t: float
    a: float = field(init=False)

    def __post_init__(self) -> None:
        t = float(self.t)
        if not (math.isfinite(t) and t > 1.0):
            raise ValueError(f"neck height must satisfy t > 1, got {self.t}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "a", shape_constant(self.n, t))


@dataclass(frozen=True)
class ProfileSample:
    """Profile state at arclength s: height x(s) and slope x'(s)."""

    s: float
    x: float
    x_prime: float


def _accel(cat: HyperbolicCatenoid, x: float) -> float:
    """x'' from the profile equation."""
    return x + (cat.n - 1) * cat.a * cat.a * x ** (1 - 2 * cat.n)


def _phi_rate(cat: HyperbolicCatenoid, x: float) -> float:
    """d(phi)/ds of the rotation angle, closed in x via the flux constant."""
    return cat.a * x ** (1 - cat.n) / (x * x - 1.0)


def _launch_state(cat: HyperbolicCatenoid, s0: float) -> tuple[float, float, float]:
    """Quartic Taylor state (x, x', phi) at s = s0 about the degenerate start.

    With c = x''(0) and G the acceleration as a function of x, the expansion
    is x = t + c s^2/2 + G'(t) c s^4/24, x' = c s + G'(t) c s^3/6, and the
    angle integrates its own rate to phi = H(t) s + H'(t) c s^3/6.  The
    truncation error is O(s0^6), far below the step tolerance at s0 = 1e-3.
    """
    n, t, a = cat.n, cat.t, cat.a
    a_sq = a * a
    c = _accel(cat, t)
    g_prime = 1.0 + (n - 1) * (1 - 2 * n) * a_sq * t ** (-2 * n)
    x = t + 0.5 * c * s0 * s0 + g_prime * c * s0**4 / 24.0
    v = c * s0 + g_prime * c * s0**3 / 6.0
    denom = t * t - 1.0
    h_prime = a * t ** (-n) * ((1 - n) * denom - 2.0 * t * t) / (denom * denom)
    p = _phi_rate(cat, t) * s0 + h_prime * c * s0**3 / 6.0
    return x, v, p


def _deriv(cat: HyperbolicCatenoid, y: tuple[float, float, float]) -> tuple[float, float, float]:
    x, v, _ = y
    try:
        return v, _accel(cat, x), _phi_rate(cat, x)
    except OverflowError as exc:
        raise ProfileError(f"profile state overflowed at x = {x!r}") from exc


def _ck_step(
    cat: HyperbolicCatenoid, y: tuple[float, float, float], h: float
) -> tuple[tuple[float, float, float], float]:
    """One embedded step of size h; returns (5th-order state, scaled error)."""
    k = [_deriv(cat, y)]
    for stage in range(1, 6):
        coeffs = _CK_A[stage]
        yi = tuple(
            y[j] + h * sum(coeffs[m] * k[m][j] for m in range(stage))
            for j in range(3)
        )
        k.append(_deriv(cat, yi))
    y5 = tuple(
        y[j] + h * sum(_CK_B5[m] * k[m][j] for m in range(6)) for j in range(3)
    )
    y4 = tuple(
        y[j] + h * sum(_CK_B4[m] * k[m][j] for m in range(6)) for j in range(3)
    )
    err = max(abs(y5[j] - y4[j]) / max(1.0, abs(y5[j])) for j in range(3))
    return y5, err


def _check_state(cat: HyperbolicCatenoid, s: float, x: float, v: float) -> None:
    """Geometric sanity of an accepted state; violations are integrator bugs
    or blow-ups, not user errors, hence ProfileError."""
    if not (math.isfinite(x) and math.isfinite(v)):
        raise ProfileError(f"non-finite profile state at s = {s}")
    if x < cat.t - 1e-9 * max(1.0, cat.t):
        raise ProfileError(f"profile height {x} fell below the neck {cat.t} at s = {s}")
    if v < -1e-9 * max(1.0, x):
        raise ProfileError(f"profile slope {v} went negative at s = {s}")
    scale = max(1.0, x * x)
    # First integral; drift here means the step control failed.
    residual = v * v - (x * x - 1.0 - cat.a * cat.a * x ** (2 - 2 * cat.n))
    if abs(residual) > 1e-6 * scale:
        raise ProfileError(
            f"first-integral drift {residual:.3e} at s = {s} exceeds tolerance"
        )
    # Slope brackets sqrt(x^2 - 1 - a^2) < x' < sqrt(x^2 - 1); checked on the
    # squares with slack for accumulated rounding, since the upper gap falls
    # under one ulp of x^2 at large s.
    v_sq = v * v
    if v_sq > (x * x - 1.0) * (1.0 + 1e-9) + 1e-9:
        raise ProfileError(f"upper slope bracket violated at s = {s}")
    if v_sq < (x * x - 1.0 - cat.a * cat.a) - 1e-9 * scale:
        raise ProfileError(f"lower slope bracket violated at s = {s}")


def _advance(
    cat: HyperbolicCatenoid,
    y: tuple[float, float, float],
    s_from: float,
    s_to: float,
    step_tol: float,
    on_accept: Optional[Callable[[float, tuple[float, float, float]], None]] = None,
) -> tuple[float, float, float]:
    """Adaptive integration from s_from to s_to > s_from, clipping the final
    step so the last accepted state lands exactly on s_to."""
    s = s_from
    h = min(0.1, s_to - s_from)
    steps = 0
    while s < s_to:
        steps += 1
        if steps > _MAX_STEPS:
            raise ProfileError(
                f"step budget {_MAX_STEPS} exhausted at s = {s} of {s_to}"
            )
        h = min(h, s_to - s)
        y_trial, err = _ck_step(cat, y, h)
        if err <= step_tol:
            s = s_to if s + h >= s_to else s + h
            y = y_trial
            _check_state(cat, s, y[0], y[1])
            if on_accept is not None:
                on_accept(s, y)
            if err > 0.0:
                h *= min(5.0, _SAFETY * (err / step_tol) ** _GROW_EXP)
            else:
                h *= 5.0
        else:
            h *= max(0.1, _SAFETY * (err / step_tol) ** _SHRINK_EXP)
            if h < _MIN_STEP:
                raise ProfileError(f"step size underflow at s = {s}")
    return y


def integrate_profile(
    cat: HyperbolicCatenoid,
    s_max: float = DEFAULT_S_MAX,
    step_tol: float = DEFAULT_STEP_TOL,
) -> list[ProfileSample]:
    """Profile samples on [0, s_max] at the integrator's accepted steps.

    The first sample is exactly (0, t, 0), the last lands exactly on s_max.
    The height is strictly increasing past the neck; each accepted state is
    validated against the first integral and the slope brackets.  s_max is
    capped at S_MAX_CAP because the height grows exponentially.
    """
    s_max = float(s_max)
    if not (math.isfinite(s_max) and 0.0 < s_max <= S_MAX_CAP):
        raise ValueError(f"s_max must lie in (0, {S_MAX_CAP}], got {s_max}")
    if not (math.isfinite(step_tol) and step_tol > 0.0):
        raise ValueError(f"step_tol must be positive, got {step_tol}")

    samples = [ProfileSample(0.0, cat.t, 0.0)]
    s0 = min(_LAUNCH, 0.5 * s_max)
    x0, v0, p0 = _launch_state(cat, s0)
    samples.append(ProfileSample(s0, x0, v0))

    def accept(s: float, y: tuple[float, float, float]) -> None:
        if y[0] <= samples[-1].x:
            raise ProfileError(f"profile height failed to increase at s = {s}")
        samples.append(ProfileSample(s, y[0], y[1]))

    _advance(cat, (x0, v0, p0), s0, s_max, step_tol, on_accept=accept)
    return samples


def norm_A_sq(cat: HyperbolicCatenoid, sample: ProfileSample) -> float:
    """Squared norm of the second fundamental form at a profile sample.

    Computed two independent ways: the closed form n(n-1) a^2 x^(-2n) and
    the state-based form n(n-1)(x^2 - x'^2 - 1)/x^2, which agree through
    the first integral.  Disagreement beyond 1e-6 reports integration
    failure; healthy profiles agree to well below 1e-8.
    """
    n = cat.n
    x, v = sample.x, sample.x_prime
    if not (math.isfinite(x) and x >= 1.0):
        raise ValueError(f"sample height must satisfy x >= 1, got {x}")
    closed = n * (n - 1) * cat.a * cat.a * x ** (-2 * n)
    from_state = n * (n - 1) * (x * x - v * v - 1.0) / (x * x)
    if abs(closed - from_state) > 1e-6:
        raise ProfileError(
            f"curvature cross-check failed at s = {sample.s}: "
            f"{closed:.12e} vs {from_state:.12e}"
        )
    return closed


def principal_curvatures(
    cat: HyperbolicCatenoid, sample: ProfileSample
) -> tuple[float, float]:
    """Principal curvatures (profile direction, orbit direction) at a sample.

    The orbit curvature sqrt(x^2 - x'^2 - 1)/x has multiplicity n - 1 and
    the profile curvature is -(n-1) times it, so the trace vanishes.  A
    negative radicand beyond rounding means the sample does not come from a
    valid profile.
    """
    n = cat.n
    x, v = sample.x, sample.x_prime
    rad = x * x - v * v - 1.0
    if rad < 0.0:
        if rad < -1e-9 * max(1.0, x * x):
            raise ProfileError(
                f"degenerate curvature radicand {rad:.3e} at s = {sample.s}"
            )
        rad = 0.0
    orbit = math.sqrt(rad) / x
    return -(n - 1) * orbit, orbit


def stability_window_max_t(n: int) -> float:
    """Upper endpoint 1 + (n+1)^2 / (4 n (n-1)) of the stable neck range."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ValueError(f"dimension n must be an integer >= 2, got {n!r}")
    return 1.0 + (n + 1) ** 2 / (4.0 * n * (n - 1))


def is_stable_by_window(cat: HyperbolicCatenoid) -> bool:
    """True iff the neck height lies strictly inside the certified stable
    window 1 < t < stability_window_max_t(n)."""
    return cat.t < stability_window_max_t(cat.n)


def _reintegrate_to(
    cat: HyperbolicCatenoid, s_target: float, step_tol: float
) -> tuple[float, float, float]:
    if s_target == 0.0:
        return cat.t, 0.0, 0.0
    s0 = min(_LAUNCH, 0.5 * s_target)
    y = _launch_state(cat, s0)
    if s_target > s0:
        y = _advance(cat, y, s0, s_target, step_tol)
    return y


def generating_curve(
    cat: HyperbolicCatenoid, sample: ProfileSample, tol: float = 1e-9
) -> LorentzVector:
    """Point of the generating curve at the sample's arclength, as a point of
    the hyperbolic plane slice in hyperboloid coordinates (x, y, z).

    The curve is (x, sqrt(x^2 - 1) sin phi, sqrt(x^2 - 1) cos phi) with phi
    the accumulated rotation angle; the Minkowski square is -1 identically.
    The angle is recovered by re-integrating the profile, and the sample's
    height is cross-checked against the re-integration so samples from a
    different catenoid are rejected.
    """
    if not (math.isfinite(tol) and tol > 0.0):
        raise ValueError(f"tol must be positive, got {tol}")
    s = sample.s
    if not (math.isfinite(s) and abs(s) <= S_MAX_CAP):
        raise ValueError(f"sample arclength must lie in [-{S_MAX_CAP}, {S_MAX_CAP}]")
    step_tol = min(tol, DEFAULT_STEP_TOL)
    x, _, p = _reintegrate_to(cat, abs(s), step_tol)
    if abs(x - sample.x) > 1e-6 * max(1.0, abs(sample.x)):
        raise ValueError(
            f"sample height {sample.x} does not match this catenoid's profile "
            f"height {x} at s = {s}"
        )
    p = math.copysign(p, s) if s != 0.0 else 0.0
    r = math.sqrt(x * x - 1.0)
    point = LorentzVector((x, r * math.sin(p), r * math.cos(p)))
    return point


def generating_curve_points(
    cat: HyperbolicCatenoid,
    s_values: Iterable[float],
    step_tol: float = DEFAULT_STEP_TOL,
) -> list[tuple[float, LorentzVector]]:
    """Generating-curve points at many nonnegative arclengths in one sweep.

    s_values must be sorted ascending; the integration continues from one
    target to the next instead of restarting, so a dense export costs one
    pass over the profile.
    """
    targets = [float(s) for s in s_values]
    if any(s < 0.0 or not math.isfinite(s) for s in targets):
        raise ValueError("arclength targets must be finite and nonnegative")
    if any(b < a for a, b in zip(targets, targets[1:])):
        raise ValueError("arclength targets must be sorted ascending")
    if targets and targets[-1] > S_MAX_CAP:
        raise ValueError(f"arclength targets must not exceed {S_MAX_CAP}")

    out: list[tuple[float, LorentzVector]] = []
    s_cur = 0.0
    y: tuple[float, float, float] = (cat.t, 0.0, 0.0)
    launched = False
    for s in targets:
        if s > s_cur:
            if not launched:
                s0 = min(_LAUNCH, 0.5 * s)
                y = _launch_state(cat, s0)
                s_cur = s0
                launched = True
            if s > s_cur:
                y = _advance(cat, y, s_cur, s, step_tol)
                s_cur = s
        x, _, p = y
        r = math.sqrt(x * x - 1.0)
        out.append((s, LorentzVector((x, r * math.sin(p), r * math.cos(p)))))
    return out
