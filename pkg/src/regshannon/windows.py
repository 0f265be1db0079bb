"""Window families for localized sinc reconstruction.

Four windows are supported, each normalized to 1 at the origin:

* ``gauss``    -- exp(-t^2 / (2 sigma^2)), supported on the whole line
* ``modgauss`` -- exp(-t^2 / (2 sigma^2)) * cos(lambda t); may dip negative
* ``sinh``     -- sinh(beta sqrt(1 - t^2/m^2)) / sinh(beta) on [-m, m]
* ``ckb``      -- (I0(beta sqrt(1 - t^2/m^2)) - 1) / (I0(beta) - 1) on [-m, m]

``m`` is the truncation half-width of the reconstruction sum: only samples
within distance m of the evaluation point contribute.  For a declared signal
bandwidth ``delta`` in (0, pi), :func:`optimal_spec` returns the parameter
choice under which the reconstruction error decays fastest in m, and
:func:`alpha_spec` scales that choice by a factor ``alpha`` for comparison
experiments.

Closed-form Fourier transforms use the unitary convention
F(phi)(w) = (2 pi)^(-1/2) * integral phi(t) exp(-i t w) dt.

Specs are immutable and evaluation is pure, so all operations here may be
called concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .special import bessel_i0m1, bessel_i1, bessel_j1

__all__ = ["WindowFamily", "WindowSpec", "eval_window", "window_ft",
           "optimal_spec", "alpha_spec"]


class WindowFamily(str, Enum):
    GAUSS = "gauss"
    MODGAUSS = "modgauss"
    SINH = "sinh"
    CKB = "ckb"


def as_family(family) -> WindowFamily:
    if isinstance(family, WindowFamily):
        return family
    try:
        return WindowFamily(str(family).lower())
    except ValueError:
        names = ", ".join(f.value for f in WindowFamily)
        raise ValueError(f"unknown window family {family!r}; expected one of {names}")


@dataclass(frozen=True)
class WindowSpec:
    """Immutable description of one window: family, half-width and shape.

    Only the fields relevant to the family are kept; the rest are forced to
    None.  ``sigma2`` is the Gaussian variance, ``lam`` the modulation
    frequency of the modulated Gaussian, ``beta`` the shape parameter of the
    compactly supported pair.
    """

    family: WindowFamily
    m: int
    sigma2: float | None = None
    lam: float | None = None
    beta: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", as_family(self.family))
        if not (isinstance(self.m, (int, np.integer)) and self.m >= 2):
            raise ValueError(f"truncation parameter m must be an integer >= 2, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        fam = self.family
        if fam in (WindowFamily.GAUSS, WindowFamily.MODGAUSS):
            if self.sigma2 is None or not self.sigma2 > 0.0:
                raise ValueError(f"{fam.value} window requires variance sigma2 > 0")
            object.__setattr__(self, "beta", None)
            if fam is WindowFamily.GAUSS:
                object.__setattr__(self, "lam", None)
            else:
                lam = 0.0 if self.lam is None else float(self.lam)
                if lam < 0.0:
                    raise ValueError("modgauss window requires lambda >= 0")
                object.__setattr__(self, "lam", lam)
        else:
            if self.beta is None or not self.beta > 0.0:
                raise ValueError(f"{fam.value} window requires shape parameter beta > 0")
            object.__setattr__(self, "sigma2", None)
            object.__setattr__(self, "lam", None)


def _ret(out: np.ndarray, x):
    return float(out[()]) if np.ndim(x) == 0 else out


def eval_window(spec: WindowSpec, t):
    """Evaluate the window at time offsets ``t`` (scalar or array).

    The compactly supported families return exactly 0 for |t| >= m (the
    window vanishes at the support edge).  The modulated Gaussian is
    returned as written and may be negative; the other three families stay
    within [0, 1].
    """
    arr = np.asarray(t, dtype=float)
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError("eval_window: t must be finite")
    fam = spec.family
    if fam is WindowFamily.GAUSS:
        out = np.exp(-arr * arr / (2.0 * spec.sigma2))
    elif fam is WindowFamily.MODGAUSS:
        out = np.exp(-arr * arr / (2.0 * spec.sigma2)) * np.cos(spec.lam * arr)
    else:
        m = float(spec.m)
        beta = spec.beta
        inside = np.abs(arr) <= m
        w = np.sqrt(np.clip(1.0 - (arr / m) ** 2, 0.0, None))
        if fam is WindowFamily.SINH:
            # sinh(beta w)/sinh(beta) in overflow-safe form; exact 0 at w=0
            # and exact 1 at w=1.
            val = np.exp(beta * (w - 1.0)) * np.expm1(-2.0 * beta * w) / np.expm1(-2.0 * beta)
        else:
            val = bessel_i0m1(beta * w) / bessel_i0m1(beta)
        out = np.where(inside, val, 0.0)
    return _ret(out, t)


# Taylor windows around the nu = 1 branch point; both transform branches
# restrict one entire function of z = 1 - nu^2, so a short expansion in z
# bridges the 0/0 form.
_BRANCH_EPS = 1e-8


def _sinh_ft_profile(beta: float, nu: np.ndarray) -> np.ndarray:
    # I1(beta sqrt(1-nu^2))/sqrt(1-nu^2) continued across |nu| = 1.
    z = 1.0 - nu * nu
    out = np.empty_like(z)
    near = np.abs(z) <= _BRANCH_EPS
    if near.any():
        q = beta * beta * z[near]
        out[near] = 0.5 * beta * (1.0 + q / 8.0 + q * q / 192.0 + q * q * q / 9216.0)
    pos = ~near & (z > 0.0)
    if pos.any():
        s = np.sqrt(z[pos])
        out[pos] = bessel_i1(beta * s) / s
    neg = ~near & (z < 0.0)
    if neg.any():
        s = np.sqrt(-z[neg])
        out[neg] = bessel_j1(beta * s) / s
    return out


def _ckb_ft_profile(beta: float, nu: np.ndarray) -> np.ndarray:
    # sinh(beta sqrt(1-nu^2))/(beta sqrt(1-nu^2)) - sin(beta nu)/(beta nu),
    # with the first factor continued across |nu| = 1 (it turns into
    # sin(beta sqrt(nu^2-1))/(beta sqrt(nu^2-1)) outside).
    z = 1.0 - nu * nu
    first = np.empty_like(z)
    near = np.abs(z) <= _BRANCH_EPS
    if near.any():
        q = beta * beta * z[near]
        first[near] = 1.0 + q / 6.0 + q * q / 120.0 + q * q * q / 5040.0
    pos = ~near & (z > 0.0)
    if pos.any():
        w = beta * np.sqrt(z[pos])
        first[pos] = np.sinh(w) / w
    neg = ~near & (z < 0.0)
    if neg.any():
        first[neg] = np.sinc(beta * np.sqrt(-z[neg]) / np.pi)
    return first - np.sinc(beta * nu / np.pi)


def window_ft(spec: WindowSpec, tau):
    """Closed-form Fourier transform of the window at frequencies ``tau``.

    Uses the unitary transform convention.  The compactly supported
    families have a removable branch point at |tau| = beta/m, where the
    returned value is the two-sided limit.
    """
    arr = np.asarray(tau, dtype=float)
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError("window_ft: tau must be finite")
    fam = spec.family
    if fam is WindowFamily.GAUSS:
        sigma = np.sqrt(spec.sigma2)
        out = sigma * np.exp(-arr * arr * spec.sigma2 / 2.0)
    elif fam is WindowFamily.MODGAUSS:
        sigma = np.sqrt(spec.sigma2)
        lam = spec.lam
        out = 0.5 * sigma * (np.exp(-spec.sigma2 * (arr + lam) ** 2 / 2.0)
                             + np.exp(-spec.sigma2 * (arr - lam) ** 2 / 2.0))
    else:
        m = float(spec.m)
        beta = spec.beta
        nu = m * arr / beta
        if fam is WindowFamily.SINH:
            coef = m * np.sqrt(np.pi) / (np.sqrt(2.0) * np.sinh(beta))
            out = coef * _sinh_ft_profile(beta, nu)
        else:
            coef = m * np.sqrt(2.0) / (bessel_i0m1(beta) * np.sqrt(np.pi))
            out = coef * _ckb_ft_profile(beta, nu)
    return _ret(out, tau)


def _check_m_delta(m: int, delta: float) -> None:
    if not (isinstance(m, (int, np.integer)) and m >= 2):
        raise ValueError(f"truncation parameter m must be an integer >= 2, got {m!r}")
    if not (0.0 < delta < np.pi):
        raise ValueError(f"bandwidth delta must lie in (0, pi), got {delta!r}")


def optimal_spec(family, m: int, delta: float, lam: float = 0.0) -> WindowSpec:
    """Window parameters giving the fastest error decay at half-width ``m``.

    gauss:    sigma^2 = m / (pi - delta)
    modgauss: sigma^2 = m / (pi - lambda - delta), needs 0 <= lambda < pi - delta
    sinh:     beta = m (pi - delta)
    ckb:      beta = m (pi - delta), needs delta <= (m - 1) pi / m
    """
    fam = as_family(family)
    _check_m_delta(m, delta)
    if fam is WindowFamily.GAUSS:
        return WindowSpec(fam, m, sigma2=m / (np.pi - delta))
    if fam is WindowFamily.MODGAUSS:
        if not 0.0 <= lam < np.pi - delta:
            raise ValueError(
                f"modgauss optimum requires 0 <= lambda < pi - delta; "
                f"got lambda={lam!r} with pi - delta = {np.pi - delta!r}")
        return WindowSpec(fam, m, sigma2=m / (np.pi - lam - delta), lam=lam)
    if fam is WindowFamily.CKB and delta > (m - 1) * np.pi / m:
        raise ValueError(
            f"ckb optimum requires delta <= (m-1) pi / m; "
            f"got delta={delta!r} with bound {(m - 1) * np.pi / m!r}")
    return WindowSpec(fam, m, beta=m * (np.pi - delta))


def alpha_spec(family, m: int, delta: float, alpha: float) -> WindowSpec:
    """Scale the optimal parameter by ``alpha`` > 0.

    gauss takes sigma = alpha * sigma_opt; sinh and ckb take
    beta = alpha * m (pi - delta).  ckb additionally needs alpha >= 1/pi and
    delta <= (m - 1) pi / m for its decay analysis to apply.
    """
    fam = as_family(family)
    _check_m_delta(m, delta)
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    if fam is WindowFamily.GAUSS:
        return WindowSpec(fam, m, sigma2=alpha * alpha * m / (np.pi - delta))
    if fam is WindowFamily.SINH:
        return WindowSpec(fam, m, beta=alpha * m * (np.pi - delta))
    if fam is WindowFamily.CKB:
        if alpha < 1.0 / np.pi:
            raise ValueError(f"ckb scaling requires alpha >= 1/pi, got {alpha!r}")
        if delta > (m - 1) * np.pi / m:
            raise ValueError(
                f"ckb scaling requires delta <= (m-1) pi / m; "
                f"got delta={delta!r} with bound {(m - 1) * np.pi / m!r}")
        return WindowSpec(fam, m, beta=alpha * m * (np.pi - delta))
    raise ValueError("alpha scaling is defined for gauss, sinh and ckb only")
