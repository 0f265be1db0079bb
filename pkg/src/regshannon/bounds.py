"""Error constants for windowed-sinc reconstruction.

The reconstruction error for a unit-norm bandlimited signal splits into two
constants computed here:

* ``e1_numeric``  -- the frequency-mismatch constant: the maximum over the
  signal band [-delta, delta] of |1 - (2 pi)^(-1/2) * integral of the window
  transform over [omega - pi, omega + pi]|.
* ``e2_numeric``  -- the spatial tail constant
  sqrt(2)/(pi m) * sqrt(phi(m)^2 + integral of phi^2 over [m, inf)),
  identically zero for the compactly supported families.

Their sum bounds the uniform reconstruction error per unit signal norm.
``bound_closed_form`` gives the sharp closed-form constants available for
the optimal parameter choices:

    gauss:    2 sqrt(2) / sqrt(pi m (pi - delta)) * exp(-m (pi - delta)/2)
    modgauss: same with pi - delta replaced by pi - lambda - delta
    sinh:     exp(-m (pi - delta))
    ckb:      (7/8 m (pi-delta) + 7/pi m^2 (pi-delta)^2) * exp(-m (pi-delta))

All bounds are per unit L2 norm; callers scale by the signal norm.  The
modulated Gaussian violates the nonnegative-decreasing window hypothesis
behind the two-constant split for lambda > 0; its constants are still
computed from the transform alone, matching how its closed-form bound is
derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .quadrature import _WGK, _XGK, integrate
from .windows import WindowFamily, WindowSpec, as_family, optimal_spec, window_ft

__all__ = ["BoundMethod", "BoundBreakdown", "e1_numeric", "e2_numeric",
           "bound_closed_form", "numeric_breakdown", "closed_form_breakdown"]

_SQRT2PI = float(np.sqrt(2.0 * np.pi))


class BoundMethod(str, Enum):
    NUMERIC = "numeric"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class BoundBreakdown:
    """Frequency and tail error constants with their scaled total."""

    e1: float
    e2: float
    total: float
    method: BoundMethod

    def __post_init__(self):
        if self.e1 < 0.0 or self.e2 < 0.0 or self.total < 0.0:
            raise ValueError("error constants must be nonnegative")


def _fixed_rule(m: int) -> tuple[np.ndarray, np.ndarray]:
    # Composite 15-point panels over the base offsets [-pi, pi]; the panel
    # count scales with the transform's oscillation rate (about m per unit
    # frequency).
    panels = max(16, 2 * m + 8)
    edges = np.linspace(-np.pi, np.pi, panels + 1)
    half = 0.5 * (edges[1] - edges[0])
    mids = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mids[:, None] + half * _XGK[None, :]).ravel()
    weights = np.broadcast_to(half * _WGK, (panels, _XGK.size)).ravel()
    return nodes, weights


def _mismatch_at(spec: WindowSpec, omega: float, tol: float = 1e-13) -> float:
    r = integrate(lambda tau: window_ft(spec, tau), omega - np.pi, omega + np.pi, tol)
    return abs(1.0 - r.value / _SQRT2PI)


def _golden_max(fn, a: float, b: float, xtol: float) -> float:
    inv = (np.sqrt(5.0) - 1.0) / 2.0
    x1 = b - inv * (b - a)
    x2 = a + inv * (b - a)
    f1, f2 = fn(x1), fn(x2)
    while b - a > xtol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv * (b - a)
            f2 = fn(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv * (b - a)
            f1 = fn(x1)
    return max(f1, f2)


def e1_numeric(spec: WindowSpec, delta: float, grid_points: int = 2048,
               omega_tol: float = 1e-6) -> float:
    """Frequency-mismatch constant, maximized numerically over the band.

    The mismatch is even in omega, so the scan covers [0, delta] on a
    uniform grid (vectorized fixed-panel quadrature shared across grid
    points) and the best point is polished by golden-section search with
    adaptive quadrature.
    """
    if not (0.0 < delta < np.pi):
        raise ValueError(f"bandwidth delta must lie in (0, pi), got {delta!r}")
    nodes, weights = _fixed_rule(spec.m)
    omegas = np.linspace(0.0, delta, grid_points)
    vals = window_ft(spec, omegas[:, None] + nodes[None, :])
    mismatch = np.abs(1.0 - (vals @ weights) / _SQRT2PI)
    best = int(np.argmax(mismatch))
    spacing = delta / (grid_points - 1)
    lo = max(0.0, omegas[best] - spacing)
    hi = min(delta, omegas[best] + spacing)
    refined = _golden_max(lambda w: _mismatch_at(spec, w), lo, hi, omega_tol)
    return max(float(mismatch[best]), refined)


def e2_numeric(spec: WindowSpec) -> float:
    """Spatial tail constant; exactly zero for the compact-support families."""
    if spec.family in (WindowFamily.SINH, WindowFamily.CKB):
        return 0.0
    m = spec.m
    sigma = np.sqrt(spec.sigma2)
    phi_m = float(np.exp(-m * m / (2.0 * spec.sigma2)))
    if spec.family is WindowFamily.MODGAUSS:
        phi_m *= float(np.cos(spec.lam * m))

    def phi2(t):
        out = np.exp(-t * t / spec.sigma2)
        if spec.family is WindowFamily.MODGAUSS:
            out = out * np.cos(spec.lam * t) ** 2
        return out

    tail = integrate(phi2, float(m), float(m + 40.0 * sigma), tol=1e-13)
    return np.sqrt(2.0) / (np.pi * m) * float(np.sqrt(phi_m * phi_m + tail.value))


def _check_hypotheses(fam: WindowFamily, m: int, delta: float, lam: float) -> None:
    if fam is WindowFamily.MODGAUSS and not 0.0 <= lam < np.pi - delta:
        raise ValueError(
            f"modgauss bound requires 0 <= lambda < pi - delta; got lambda={lam!r}")
    if fam is WindowFamily.CKB and delta > (m - 1) * np.pi / m:
        raise ValueError(
            f"ckb bound requires delta <= (m-1) pi / m; got delta={delta!r} "
            f"with bound {(m - 1) * np.pi / m!r}")


def bound_closed_form(family, m: int, delta: float, lam: float = 0.0) -> float:
    """Closed-form error constant of the optimal-parameter window, per unit norm."""
    fam = as_family(family)
    if not (isinstance(m, (int, np.integer)) and m >= 2):
        raise ValueError(f"truncation parameter m must be an integer >= 2, got {m!r}")
    if not (0.0 < delta < np.pi):
        raise ValueError(f"bandwidth delta must lie in (0, pi), got {delta!r}")
    _check_hypotheses(fam, m, delta, lam)
    gap = np.pi - delta
    if fam is WindowFamily.GAUSS:
        return float(2.0 * np.sqrt(2.0) / np.sqrt(np.pi * m * gap) * np.exp(-m * gap / 2.0))
    if fam is WindowFamily.MODGAUSS:
        gap = np.pi - lam - delta
        return float(2.0 * np.sqrt(2.0) / np.sqrt(np.pi * m * gap) * np.exp(-m * gap / 2.0))
    if fam is WindowFamily.SINH:
        return float(np.exp(-m * gap))
    beta = m * gap
    return float((7.0 / 8.0 * beta + 7.0 / np.pi * beta * beta) * np.exp(-beta))


def numeric_breakdown(spec: WindowSpec, delta: float,
                      l2_norm: float = 1.0) -> BoundBreakdown:
    """Numeric error constants for ``spec`` scaled by the signal norm."""
    e1 = e1_numeric(spec, delta)
    e2 = e2_numeric(spec)
    return BoundBreakdown(e1, e2, (e1 + e2) * l2_norm, BoundMethod.NUMERIC)


def closed_form_breakdown(family, m: int, delta: float, lam: float = 0.0,
                          l2_norm: float = 1.0) -> BoundBreakdown:
    """Split of the closed-form constant into its frequency and tail parts."""
    fam = as_family(family)
    _check_hypotheses(fam, m, delta, lam)
    if fam in (WindowFamily.SINH, WindowFamily.CKB):
        e1 = bound_closed_form(fam, m, delta)
        e2 = 0.0
    else:
        gap = np.pi - delta - (lam if fam is WindowFamily.MODGAUSS else 0.0)
        e1 = float(np.sqrt(2.0) / np.sqrt(np.pi * m * gap) * np.exp(-m * gap / 2.0))
        e2 = e1
    return BoundBreakdown(e1, e2, (e1 + e2) * l2_norm, BoundMethod.CLOSED_FORM)
