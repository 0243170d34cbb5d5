"""Generating-curve ODE systems and a deterministic adaptive integrator.

The arc-length system is always integrated:

    x' = cos(theta),  y' = sin(theta),
    theta' = [sin(2 theta)(-x cos + y sin) - 2 H (1 + A^2)^{3/2}] / (1 + x^2 + y^2)

with H = 0 for minimal surfaces.  theta is kept unwrapped so closure events
(theta returning to theta0 - 2 pi) reduce to a plain sign test.  Initial
angles within 1e-14 of the constant-angle solutions are snapped and routed to
the exact lines, where nearby numerics would look spuriously stiff.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

import numpy as np

from ._rk import StepSizeUnderflow, solve_fixed_horizon
from .surface import CurveState

_INV_SQRT2 = 1.0 / math.sqrt(2.0)
_HALF_PI = math.pi / 2.0
_QUARTER_PI = math.pi / 4.0
_SNAP_TOL = 1e-14


class IntegrationError(RuntimeError):
    """Integration could not reach the requested horizon."""

    def __init__(self, message: str, last_s: float):
        super().__init__(f"{message} (last good s = {last_s!r})")
        self.last_s = last_s


class InvalidInitialCondition(ValueError):
    """Initial condition violates a constant-angle line's constraint."""


@dataclass(frozen=True)
class OdeSettings:
    """Integrator tolerances and horizons; all entries must be positive."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_step: float = 1e-2
    max_s: float = 10.0
    event_tol: float = 1e-12

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "max_step", "max_s", "event_tol"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class InitialCondition:
    x0: float
    y0: float
    theta0: float

    def __post_init__(self):
        for name in ("x0", "y0", "theta0"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


def _minimal_raw(x: float, y: float, theta: float) -> tuple[float, float, float]:
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    dtheta = 2.0 * sin_t * cos_t * (-x * cos_t + y * sin_t) / (1.0 + x * x + y * y)
    return cos_t, sin_t, dtheta


def _cmc_raw(H: float) -> Callable[[float, float, float], tuple[float, float, float]]:
    def f(x: float, y: float, theta: float) -> tuple[float, float, float]:
        sin_t, cos_t = math.sin(theta), math.cos(theta)
        A = x * sin_t + y * cos_t
        W = 1.0 + A * A
        num = 2.0 * sin_t * cos_t * (-x * cos_t + y * sin_t) - 2.0 * H * W * math.sqrt(W)
        return cos_t, sin_t, num / (1.0 + x * x + y * y)

    return f


def _raw_rhs(H: Optional[float]) -> Callable[[float, float, float], tuple[float, float, float]]:
    return _minimal_raw if H is None else _cmc_raw(H)


def rhs_minimal(state: CurveState) -> tuple[float, float, float]:
    """(x', y', theta') of the minimal-surface system at one state."""
    return _minimal_raw(state.x, state.y, state.theta)


def rhs_cmc(state: CurveState, H: float) -> tuple[float, float, float]:
    """(x', y', theta') of the constant-mean-curvature system; H = 0 is minimal."""
    return _cmc_raw(H)(state.x, state.y, state.theta)


class Trajectory:
    """Dense, ordered solution samples of one generating-curve integration.

    Samples are the accepted integrator steps (strictly increasing in s);
    between them states can be evaluated through the stored quartic
    interpolants.  Instances are immutable after construction.
    """

    def __init__(
        self,
        s: np.ndarray,
        x: np.ndarray,
        y: np.ndarray,
        theta: np.ndarray,
        theta_prime: np.ndarray,
        ic: InitialCondition,
        H_target: Optional[float],
        settings: OdeSettings,
        segments: Optional[list] = None,
        explicit_kind: Optional[str] = None,
    ):
        for arr in (s, x, y, theta, theta_prime):
            arr.flags.writeable = False
        self.s = s
        self.x = x
        self.y = y
        self.theta = theta
        self.theta_prime = theta_prime
        self.ic = ic
        self.H_target = H_target
        self.settings = settings
        self.explicit_kind = explicit_kind
        self._line_direction: Optional[tuple[float, float]] = None
        self._segments = segments or []
        # Mirrored segments cover s in [-(t0 + h), -t0]; forward ones [t0, t0 + h].
        self._seg_his = [-seg.t0 if mirrored else seg.t0 + seg.h
                         for seg, mirrored in self._segments]
        self._raw = _raw_rhs(H_target)

    def __len__(self) -> int:
        return self.s.size

    def sample(self, i: int) -> tuple[CurveState, float]:
        return (CurveState(float(self.s[i]), float(self.x[i]), float(self.y[i]),
                           float(self.theta[i])), float(self.theta_prime[i]))

    @property
    def samples(self) -> Iterator[tuple[CurveState, float]]:
        return (self.sample(i) for i in range(len(self)))

    def state_at(self, s: float) -> CurveState:
        """Dense-output state at arc length s (s within the sampled range)."""
        if self.explicit_kind is not None:
            ic, th = self.ic, float(self.theta[0])
            dx, dy = self._line_direction
            return CurveState(s, ic.x0 + s * dx, ic.y0 + s * dy, th)
        if not self._segments:
            raise ValueError("trajectory has no dense segments")
        lo, hi = float(self.s[0]), float(self.s[-1])
        if s < lo - 1e-12 or s > hi + 1e-12:
            raise ValueError(f"s = {s!r} outside sampled range [{lo}, {hi}]")
        i = min(bisect.bisect_left(self._seg_his, s), len(self._segments) - 1)
        seg, mirrored = self._segments[i]
        vals = seg.eval(-s if mirrored else s)
        return CurveState(s, float(vals[0]), float(vals[1]), float(vals[2]))

    def theta_prime_at(self, s: float) -> float:
        state = self.state_at(s)
        return self._raw(state.x, state.y, state.theta)[2]

    def eval(self, s: float) -> tuple[CurveState, float]:
        state = self.state_at(s)
        return state, self._raw(state.x, state.y, state.theta)[2]

    def max_ode_residual(self) -> float:
        """Max |theta'_stored - theta'(state)| over all samples, re-evaluated."""
        worst = 0.0
        for i in range(len(self)):
            d = self._raw(float(self.x[i]), float(self.y[i]), float(self.theta[i]))[2]
            worst = max(worst, abs(d - float(self.theta_prime[i])))
        return worst


# Constant-angle solutions: exact angle and exact direction components, so the
# line's frozen coordinate never picks up a cos(pi/2)-sized drift.
_LINE_DIRECTIONS = (
    (0.0, "I", (1.0, 0.0)),
    (_HALF_PI, "II", (0.0, 1.0)),
    (-_HALF_PI, "II", (0.0, -1.0)),
    (_QUARTER_PI, "III", (_INV_SQRT2, _INV_SQRT2)),
    (-_QUARTER_PI, "IV", (_INV_SQRT2, -_INV_SQRT2)),
)


def _snap_line_kind(ic: InitialCondition) -> Optional[tuple[str, float, tuple[float, float]]]:
    """Line (kind, exact theta, direction) when ic sits on a constant-angle solution."""
    for target, kind, direction in _LINE_DIRECTIONS:
        if abs(ic.theta0 - target) > _SNAP_TOL:
            continue
        if kind == "III" and ic.y0 != ic.x0:
            return None
        if kind == "IV" and ic.y0 != -ic.x0:
            return None
        return kind, target, direction
    return None


def _line_trajectory(
    ic: InitialCondition, settings: OdeSettings, kind: str, theta: float,
    direction: tuple[float, float], s_lo: float, s_hi: float,
) -> Trajectory:
    n = max(2, int(math.ceil((s_hi - s_lo) / settings.max_step)) + 1)
    s = np.linspace(s_lo, s_hi, n)
    if s_lo < 0.0 < s_hi and 0.0 not in s:
        s = np.sort(np.append(s, 0.0))
    x = ic.x0 + s * direction[0]
    y = ic.y0 + s * direction[1]
    th = np.full_like(s, theta)
    tp = np.zeros_like(s)
    traj = Trajectory(s, x, y, th, tp, ic, None, settings, explicit_kind=kind)
    traj._line_direction = direction
    return traj


def _run_side(raw, ic, settings, horizon, mirrored, stop_event=None):
    """One forward integration; mirrored=True integrates the reversed field."""
    f = (lambda x, y, th: tuple(-v for v in raw(x, y, th))) if mirrored else raw
    stop = None
    if stop_event is not None:
        stop = lambda s, yv: stop_event(-s if mirrored else s, yv)
    try:
        ss, ys, segs, seen = solve_fixed_horizon(
            f, (ic.x0, ic.y0, ic.theta0), horizon,
            settings.abs_tol, settings.rel_tol, settings.max_step, stop)
    except StepSizeUnderflow as exc:
        side_s = -exc.last_s if mirrored else exc.last_s
        raise IntegrationError("generating-curve integration failed", side_s) from exc
    return ss, ys, segs, seen


def integrate(
    ic: InitialCondition,
    settings: Optional[OdeSettings] = None,
    H: Optional[float] = None,
    snap: bool = True,
) -> Trajectory:
    """Deterministic bidirectional trajectory on [-max_s, max_s].

    H selects the system: None integrates the minimal equation, a float the
    constant-mean-curvature equation with that target.  With snap=True (the
    default), minimal initial conditions on a constant-angle line reproduce
    the exact line instead of integrating it numerically.
    """
    settings = settings or OdeSettings()
    if snap and H is None:
        hit = _snap_line_kind(ic)
        if hit is not None:
            kind, theta, direction = hit
            return _line_trajectory(ic, settings, kind, theta, direction,
                                    -settings.max_s, settings.max_s)
    raw = _raw_rhs(H)
    fs, fy, fsegs, _ = _run_side(raw, ic, settings, settings.max_s, mirrored=False)
    bs, by, bsegs, _ = _run_side(raw, ic, settings, settings.max_s, mirrored=True)

    s = np.concatenate([-bs[::-1][:-1], fs])
    states = np.concatenate([by[::-1][:-1], fy])
    segments = [(seg, True) for seg in reversed(bsegs)] + [(seg, False) for seg in fsegs]
    theta_prime = np.array([raw(*row)[2] for row in states])
    return Trajectory(s, states[:, 0], states[:, 1], states[:, 2], theta_prime,
                      ic, H, settings, segments=segments)


def integrate_forward(
    ic: InitialCondition,
    settings: Optional[OdeSettings] = None,
    H: Optional[float] = None,
    stop_event: Optional[Callable[[float, np.ndarray], float]] = None,
    horizon: Optional[float] = None,
) -> Trajectory:
    """One-sided variant of `integrate` over [0, horizon or max_s].

    `stop_event(s, (x, y, theta))` halts integration one step past its first
    sign change, leaving the change bracketed by the final two samples.
    """
    settings = settings or OdeSettings()
    raw = _raw_rhs(H)
    span = settings.max_s if horizon is None else horizon
    fs, fy, fsegs, _ = _run_side(raw, ic, settings, span, False, stop_event)
    theta_prime = np.array([raw(*row)[2] for row in fy])
    return Trajectory(fs, fy[:, 0], fy[:, 1], fy[:, 2], theta_prime,
                      ic, H, settings, segments=[(seg, False) for seg in fsegs])


def explicit_solution(kind: str, x0: float, y0: float, s: float) -> CurveState:
    """Closed-form constant-angle lines, arc-length parametrized.

    kind I:  (x0 + s, y0, theta = 0)
    kind II: (x0, y0 + s, theta = pi/2)
    kind III (requires y0 == x0):  (x0 + s/sqrt2, x0 + s/sqrt2, theta = pi/4)
    kind IV  (requires y0 == -x0): (x0 + s/sqrt2, -x0 - s/sqrt2, theta = -pi/4)
    """
    if kind == "I":
        return CurveState(s, x0 + s, y0, 0.0)
    if kind == "II":
        return CurveState(s, x0, y0 + s, _HALF_PI)
    if kind == "III":
        if y0 != x0:
            raise InvalidInitialCondition("kind III requires y0 == x0")
        u = x0 + s * _INV_SQRT2
        return CurveState(s, u, u, _QUARTER_PI)
    if kind == "IV":
        if y0 != -x0:
            raise InvalidInitialCondition("kind IV requires y0 == -x0")
        u = x0 + s * _INV_SQRT2
        return CurveState(s, u, -u, -_QUARTER_PI)
    raise ValueError(f"unknown line kind {kind!r}")


def circle_flat(r: float, s: float) -> tuple[CurveState, float]:
    """The flat-surface circle x = r sin(s/r), y = -r cos(s/r), theta = s/r."""
    if not r > 0.0:
        raise ValueError("circle radius must be positive")
    u = s / r
    return CurveState(s, r * math.sin(u), -r * math.cos(u), u), 1.0 / r


def graph_residual(x: float, y: float, yp: float, ypp: float) -> float:
    """Residual of the graph form y'' = 2 y'(y y' - x)/(1 + x^2 + y^2).

    Verification only; the arc-length system is what gets integrated,
    because graphs degenerate near vertical tangents.
    """
    return ypp - 2.0 * yp * (y * yp - x) / (1.0 + x * x + y * y)


def find_event(
    traj: Trajectory,
    predicate: Callable[[CurveState, float], float],
) -> Optional[float]:
    """First s > 0 where the predicate changes sign along the trajectory.

    The sign change is located among the stored samples and refined by
    bisection on the dense output to settings.event_tol.  Returns None when
    no sign change exists on the sampled horizon.
    """
    idx = np.searchsorted(traj.s, 0.0, side="left")
    vals = []
    for i in range(idx, len(traj)):
        state, tp = traj.sample(i)
        vals.append((state.s, predicate(state, tp)))
    for (s_a, p_a), (s_b, p_b) in zip(vals, vals[1:]):
        if p_b == 0.0 and s_b > 0.0:
            return s_b
        if p_a == 0.0:
            continue
        if p_a * p_b < 0.0:
            return _bisect_event(traj, predicate, s_a, s_b, p_a, traj.settings.event_tol)
    return None


def _bisect_event(traj, predicate, lo, hi, p_lo, tol):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        p_mid = predicate(*traj.eval(mid))
        if p_mid == 0.0:
            return mid
        if p_lo * p_mid < 0.0:
            hi = mid
        else:
            lo, p_lo = mid, p_mid
    return 0.5 * (lo + hi)
