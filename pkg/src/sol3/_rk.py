"""Adaptive embedded Runge-Kutta 5(4) stepper with quartic dense output.

Dormand-Prince pair: six fresh right-hand-side evaluations per step (FSAL),
fifth-order propagation, fourth-order error estimate, proportional-integral
step-size control.  Each accepted step stores interpolation coefficients so
trajectories can be evaluated continuously and events located by bisection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

# Butcher tableau (node fractions are implicit: the fields are autonomous here).
_A = (
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
)
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84])
# Fifth-minus-fourth order weights, including the FSAL stage.
_E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920,
               -17253 / 339200, 22 / 525, -1 / 40])
# Quartic interpolant weights (rows: stages, columns: powers of the step fraction).
_P = np.array([
    [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
    [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
    [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
    [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
    [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
])

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0
_BETA = 0.04            # integral gain of the PI controller
_EXP1 = 0.2 - 0.75 * _BETA


class StepSizeUnderflow(RuntimeError):
    """Step size collapsed below floating-point resolution."""

    def __init__(self, last_s: float):
        super().__init__(f"step size underflow at s = {last_s!r}")
        self.last_s = last_s


@dataclass(frozen=True)
class DenseSegment:
    """One accepted step's interpolant: y(t0 + u*h) = y0 + h * Q @ [u, u^2, u^3, u^4]."""

    t0: float
    h: float
    y0: np.ndarray
    Q: np.ndarray  # shape (n, 4)

    def eval(self, t: float) -> np.ndarray:
        u = (t - self.t0) / self.h
        powers = np.array([u, u * u, u ** 3, u ** 4])
        return self.y0 + self.h * (self.Q @ powers)


def solve_fixed_horizon(
    f: Callable[..., tuple],
    y0: tuple,
    s_end: float,
    abs_tol: float,
    rel_tol: float,
    max_step: float,
    stop_event: Optional[Callable[[float, np.ndarray], float]] = None,
) -> tuple[np.ndarray, np.ndarray, list[DenseSegment], bool]:
    """Integrate y' = f(*y) from s = 0 to s_end (s_end > 0).

    Returns (s samples, state samples, dense segments, event_seen).  When
    `stop_event` is given, integration halts at the first accepted step whose
    endpoint changes the sign of the event function (the step itself is kept,
    so the sign change is bracketed by the last two samples).
    """
    y = np.asarray(y0, dtype=float)
    n = y.size
    k = np.empty((7, n))
    k[0] = f(*y)
    h = min(max_step, 1e-3, s_end)
    s = 0.0
    ss = [0.0]
    ys = [y.copy()]
    segments: list[DenseSegment] = []
    err_prev = 1e-4
    p_prev = stop_event(0.0, y) if stop_event is not None else None
    event_seen = False

    while s < s_end:
        h = min(h, max_step, s_end - s)
        if h < 1e-14 * max(1.0, abs(s)):
            raise StepSizeUnderflow(s)

        for i in range(5):
            yi = y + h * (_A[i] @ k[: i + 1])
            k[i + 1] = f(*yi)
        y_new = y + h * (_B @ k[:6])
        k[6] = f(*y_new)

        err_vec = h * (_E @ k)
        scale = abs_tol + rel_tol * np.maximum(np.abs(y), np.abs(y_new))
        err_norm = math.sqrt(float(np.mean((err_vec / scale) ** 2)))

        if err_norm <= 1.0:
            segments.append(DenseSegment(t0=s, h=h, y0=y.copy(), Q=k.T @ _P))
            s += h
            ss.append(s)
            ys.append(y_new.copy())
            if err_norm == 0.0:
                factor = _MAX_FACTOR
            else:
                factor = _SAFETY * err_norm ** (-_EXP1) * err_prev ** _BETA
            err_prev = max(err_norm, 1e-4)
            h *= min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
            y = y_new
            k[0] = k[6]
            if stop_event is not None:
                p_new = stop_event(s, y)
                if p_prev is not None and (p_new == 0.0 or p_prev * p_new < 0.0):
                    event_seen = True
                    break
                p_prev = p_new
        else:
            h *= min(1.0, max(_MIN_FACTOR, _SAFETY * err_norm ** (-_EXP1)))

    return np.array(ss), np.array(ys), segments, event_seen
