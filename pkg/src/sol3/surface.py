"""Pointwise geometry of a vertically invariant surface patch.

A curve s -> (x(s), y(s), 0) in the plane z = 0 with direction angle theta
(x' = cos theta, y' = sin theta) sweeps the surface

    psi(s, t) = (e^{-t} x(s), e^{t} y(s), t)

under vertical left translations.  All first/second fundamental form
quantities of psi depend only on the curve state (x, y, theta) and on
theta'; none depend on t.  Shared shorthand used throughout:

    A = x sin(theta) + y cos(theta),      W = 1 + A^2  (metric determinant)
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import FrameVector, SolPoint


@dataclass(frozen=True)
class CurveState:
    """Generating-curve phase point; theta is unwrapped (never reduced mod 2*pi)."""

    s: float
    x: float
    y: float
    theta: float


@dataclass(frozen=True)
class FundamentalForms:
    """First and second fundamental form coefficients at one curve state.

    `first_form` fills only (E, F, G, A, W) and leaves e = f = g = 0;
    `fundamental_forms` fills everything.
    """

    E: float
    F: float
    G: float
    A: float
    W: float
    e: float = 0.0
    f: float = 0.0
    g: float = 0.0


@dataclass(frozen=True)
class CurvatureReport:
    """Mean, Gauss, extrinsic and ambient-sectional curvature at one state."""

    H: float
    K: float
    K_ext: float
    K_sec: float


def immersion(state: CurveState, t: float) -> SolPoint:
    """Surface point psi(s, t) = (e^{-t} x, e^{t} y, t)."""
    return SolPoint(math.exp(-t) * state.x, math.exp(t) * state.y, t)


def surface_tangents(state: CurveState) -> tuple[FrameVector, FrameVector]:
    """The patch tangents psi_s = cos(theta) E1 + sin(theta) E2 and
    psi_t = -x E1 + y E2 + E3, in frame components."""
    return (
        FrameVector(math.cos(state.theta), math.sin(state.theta), 0.0),
        FrameVector(-state.x, state.y, 1.0),
    )


def first_form(state: CurveState) -> FundamentalForms:
    """First fundamental form: E = 1, F = -x cos + y sin, G = 1 + x^2 + y^2."""
    sin_t, cos_t = math.sin(state.theta), math.cos(state.theta)
    A = state.x * sin_t + state.y * cos_t
    return FundamentalForms(
        E=1.0,
        F=-state.x * cos_t + state.y * sin_t,
        G=1.0 + state.x * state.x + state.y * state.y,
        A=A,
        W=1.0 + A * A,
    )


def unit_normal(state: CurveState) -> FrameVector:
    """Unit normal (sin E1 - cos E2 + A E3)/sqrt(W); the sign is never flipped."""
    sin_t, cos_t = math.sin(state.theta), math.cos(state.theta)
    A = state.x * sin_t + state.y * cos_t
    rw = 1.0 / math.sqrt(1.0 + A * A)
    return FrameVector(sin_t * rw, -cos_t * rw, A * rw)


def covariant_derivatives(
    state: CurveState, theta_prime: float
) -> tuple[FrameVector, FrameVector, FrameVector]:
    """Ambient covariant derivatives (D_s psi_s, D_s psi_t, D_t psi_t) in the frame."""
    sin_t, cos_t = math.sin(state.theta), math.cos(state.theta)
    x, y = state.x, state.y
    d_ss = FrameVector(-theta_prime * sin_t, theta_prime * cos_t,
                       -(cos_t * cos_t - sin_t * sin_t))
    d_st = FrameVector(0.0, 0.0, x * cos_t + y * sin_t)
    d_tt = FrameVector(-x, -y, y * y - x * x)
    return d_ss, d_st, d_tt


def second_form(state: CurveState, theta_prime: float) -> tuple[float, float, float]:
    """Second fundamental form (e, f, g) assembled from the covariant derivatives."""
    n = unit_normal(state)
    d_ss, d_st, d_tt = covariant_derivatives(state, theta_prime)
    return n.dot(d_ss), n.dot(d_st), n.dot(d_tt)


def fundamental_forms(state: CurveState, theta_prime: float) -> FundamentalForms:
    """All eight coefficients (E, F, G, A, W, e, f, g) at one state."""
    first = first_form(state)
    e, f, g = second_form(state, theta_prime)
    return FundamentalForms(first.E, first.F, first.G, first.A, first.W, e, f, g)


def mean_curvature(state: CurveState, theta_prime: float) -> float:
    """H = [sin(2 theta)(-x cos + y sin) - (1 + x^2 + y^2) theta'] / (2 W^{3/2})."""
    sin_t, cos_t = math.sin(state.theta), math.cos(state.theta)
    x, y = state.x, state.y
    A = x * sin_t + y * cos_t
    W = 1.0 + A * A
    num = 2.0 * sin_t * cos_t * (-x * cos_t + y * sin_t) - (1.0 + x * x + y * y) * theta_prime
    return num / (2.0 * W * math.sqrt(W))


def sectional_curvature(state: CurveState) -> float:
    """Ambient sectional curvature of the tangent plane: (A^2 - 1)/(1 + A^2)."""
    sin_t, cos_t = math.sin(state.theta), math.cos(state.theta)
    A = state.x * sin_t + state.y * cos_t
    return (A * A - 1.0) / (1.0 + A * A)


def _curvature_pieces(state: CurveState, theta_prime: float) -> tuple[float, float, float]:
    """Shared subexpressions: (K_ext, K_sec, W) computed in one pass."""
    sin_t, cos_t = math.sin(state.theta), math.cos(state.theta)
    x, y = state.x, state.y
    A = x * sin_t + y * cos_t
    W = 1.0 + A * A
    cos2t = cos_t * cos_t - sin_t * sin_t
    radial = x * cos_t + y * sin_t
    lateral = -x * sin_t + y * cos_t + A * (y * y - x * x)
    k_ext = -(A * A * radial * radial + (theta_prime + A * cos2t) * lateral) / (W * W)
    k_sec = (A * A - 1.0) / W
    return k_ext, k_sec, W


def extrinsic_curvature(state: CurveState, theta_prime: float) -> float:
    """Extrinsic curvature det(II)/det(I) in closed form."""
    k_ext, _, _ = _curvature_pieces(state, theta_prime)
    return k_ext


def gauss_curvature(state: CurveState, theta_prime: float) -> float:
    """Gauss curvature of the swept surface in closed form.

    K = [-(theta' + A cos 2theta)(-x sin + y cos + A(y^2 - x^2))
         - 1 - cos(2 theta)(x^2 - y^2) A^2] / W^2
    """
    sin_t, cos_t = math.sin(state.theta), math.cos(state.theta)
    x, y = state.x, state.y
    A = x * sin_t + y * cos_t
    W = 1.0 + A * A
    cos2t = cos_t * cos_t - sin_t * sin_t
    lateral = -x * sin_t + y * cos_t + A * (y * y - x * x)
    num = -(theta_prime + A * cos2t) * lateral - 1.0 - cos2t * (x * x - y * y) * A * A
    return num / (W * W)


def flat_residual(state: CurveState, theta_prime: float) -> float:
    """Left-hand side of the zero-Gauss-curvature equation; 0 iff K = 0."""
    sin_t, cos_t = math.sin(state.theta), math.cos(state.theta)
    x, y = state.x, state.y
    A = x * sin_t + y * cos_t
    cos2t = cos_t * cos_t - sin_t * sin_t
    lateral = -x * sin_t + y * cos_t + A * (y * y - x * x)
    return (theta_prime + A * cos2t) * lateral + 1.0 + cos2t * (x * x - y * y) * A * A


def curvature_report(state: CurveState, theta_prime: float) -> CurvatureReport:
    """H, K, K_ext, K_sec in a single pass over the shared subexpressions."""
    k_ext, k_sec, W = _curvature_pieces(state, theta_prime)
    sin_t, cos_t = math.sin(state.theta), math.cos(state.theta)
    x, y = state.x, state.y
    num = 2.0 * sin_t * cos_t * (-x * cos_t + y * sin_t) - (1.0 + x * x + y * y) * theta_prime
    H = num / (2.0 * W * math.sqrt(W))
    return CurvatureReport(H=H, K=k_ext + k_sec, K_ext=k_ext, K_sec=k_sec)
