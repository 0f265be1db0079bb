"""Decay-rate diagnostics for the compactly supported window families.

For shape parameters beta = alpha * m * (pi - delta), the frequency mismatch
of the sinh and continuous Kaiser-Bessel windows splits into a constant part
and an omega-dependent part,

    mismatch(omega) = D1-part - D2-part(omega),

whose magnitudes ``d1`` and ``d2 = max over omega in [-delta, delta]`` both
decay exponentially in m.  At alpha = 1 the two parts share the fastest
possible decay rate m (pi - delta) and admit closed forms; away from
alpha = 1 the decay degrades, which is what makes the alpha = 1 choice
optimal.  This module computes the split by adaptive quadrature of the
window transforms, fits decay rates, and also verifies the quadrature
identities and inequalities that the closed forms rest on.

All computations are pure; points of a series are independent and safe to
evaluate concurrently.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .quadrature import QuadratureConvergenceError, integrate, integrate_sqrt_singular
from .special import bessel_i0, bessel_i0m1, bessel_i1, bessel_j1, sine_integral, struve_l0
from .windows import WindowFamily, as_family, _ckb_ft_profile, _sinh_ft_profile

__all__ = ["DiagnosticSeries", "nu1", "delta_sinh_split", "delta_ckb_split",
           "decay_slope", "diagnostic_series", "save_series_csv",
           "IdentityPoint", "IdentityCheck", "IdentityReport", "verify_identities"]

_SLOPE_FLOOR = 1e-15  # below this, rounding noise dominates the split values
_SEG_TOL = 1e-13


def nu1(omega: float, m: int, beta: float) -> float:
    """Scaled frequency (m/beta) (omega + pi) marking the transform's branch point."""
    if not beta > 0.0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    return m * (omega + np.pi) / beta


def _profile(family: WindowFamily):
    if family is WindowFamily.SINH:
        return _sinh_ft_profile
    return _ckb_ft_profile


def _prefactors(family: WindowFamily, beta: float) -> tuple[float, float]:
    # (coefficient of the D1 integral, coefficient of each D2 integral)
    if family is WindowFamily.SINH:
        p = beta / np.sinh(beta)
        return p, 0.5 * p
    p = 2.0 * beta / (np.pi * bessel_i0m1(beta))
    return p, 0.5 * p


def _integrate_profile(profile, beta: float, a: float, b: float,
                       tol: float = _SEG_TOL) -> float:
    # split at the branch point nu = 1 so each panel sees one smooth branch
    total = 0.0
    cuts = [a, b] if not (a < 1.0 < b) else [a, 1.0, b]
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        total += integrate(lambda nu: profile(beta, nu), lo, hi, tol).value
    return total


def _check_split_args(family: WindowFamily, m: int, delta: float, alpha: float) -> None:
    if not (isinstance(m, (int, np.integer)) and m >= 2):
        raise ValueError(f"truncation parameter m must be an integer >= 2, got {m!r}")
    if not (0.0 < delta < np.pi):
        raise ValueError(f"bandwidth delta must lie in (0, pi), got {delta!r}")
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    if family is WindowFamily.CKB:
        if alpha < 1.0 / np.pi:
            raise ValueError(f"ckb split requires alpha >= 1/pi, got {alpha!r}")
        if delta > (m - 1) * np.pi / m:
            raise ValueError(
                f"ckb split requires delta <= (m-1) pi / m; got delta={delta!r}")


def _omega_grid(delta: float, alpha: float, gap: float, points: int = 257) -> np.ndarray:
    # uniform grid plus clusters at the band edge and at the branch-crossing
    # frequency omega1 where the integrand switches branches
    extras = [delta * (1.0 - 10.0 ** (-k)) for k in range(1, 9)]
    omega1 = alpha * gap - np.pi
    if 0.0 < omega1 < delta:
        extras.append(omega1)
        extras.extend(min(delta, max(0.0, omega1 + s * 10.0 ** (-k)))
                      for s in (-1.0, 1.0) for k in range(1, 9))
    grid = np.unique(np.concatenate([np.linspace(0.0, delta, points), extras]))
    return grid


def _split(family: WindowFamily, m: int, delta: float, alpha: float) -> tuple[float, float]:
    _check_split_args(family, m, delta, alpha)
    gap = np.pi - delta
    beta = alpha * m * gap
    profile = _profile(family)
    pref1, pref2 = _prefactors(family, beta)

    d1 = abs(1.0 - pref1 * _integrate_profile(profile, beta, 0.0, 1.0 / alpha))

    # D2: cumulative integrals of the profile from 1/alpha to every needed
    # upper limit nu1(+-omega), assembled by prefix sums over the sorted
    # breakpoints.
    omegas = _omega_grid(delta, alpha, gap)
    uppers = np.concatenate([m * (np.pi - omegas) / beta, m * (np.pi + omegas) / beta])
    cuts = np.unique(np.concatenate([[1.0 / alpha], uppers,
                                     [1.0] if uppers.min() < 1.0 < uppers.max() else []]))
    seg = np.zeros(len(cuts))
    for i in range(1, len(cuts)):
        seg[i] = integrate(lambda nu: profile(beta, nu), cuts[i - 1], cuts[i], _SEG_TOL).value
    cum = np.cumsum(seg)
    lookup = dict(zip(cuts.tolist(), cum.tolist()))
    vals = np.abs(pref2 * (np.array([lookup[x] for x in (m * (np.pi - omegas) / beta)])
                           + np.array([lookup[x] for x in (m * (np.pi + omegas) / beta)])))
    d2 = float(np.max(vals))
    return float(d1), d2


def delta_sinh_split(m: int, delta: float, alpha: float = 1.0) -> tuple[float, float]:
    """(d1, d2) mismatch split for the sinh window with beta = alpha m (pi - delta).

    At alpha = 1, d1 equals 2 exp(-beta) / (1 + exp(-beta)) up to quadrature
    tolerance and d2 is bounded by 1.5 times that value.
    """
    return _split(WindowFamily.SINH, m, delta, alpha)


def delta_ckb_split(m: int, delta: float, alpha: float = 1.0) -> tuple[float, float]:
    """(d1, d2) mismatch split for the continuous Kaiser-Bessel window.

    Needs alpha >= 1/pi and delta <= (m-1) pi / m.  At alpha = 1, d1 equals
    (I0(beta) - L0(beta) - 1 + (2/pi) Si(beta)) / (I0(beta) - 1).
    """
    return _split(WindowFamily.CKB, m, delta, alpha)


def decay_slope(m_values, series) -> float:
    """Least-squares exponential decay rate of ``series`` against ``m_values``.

    Fits ln(series) linearly in m and returns the negated slope, so a pure
    exp(-c m) sequence yields c.
    """
    ms = np.asarray(m_values, dtype=float)
    ys = np.asarray(series, dtype=float)
    if ms.shape != ys.shape or ms.ndim != 1:
        raise ValueError("m_values and series must be 1-d of equal length")
    if ms.size < 4:
        raise ValueError("need at least 4 points for a slope fit")
    if np.any(ys <= 0.0):
        raise ValueError("series entries must be strictly positive")
    return float(-np.polyfit(ms, np.log(ys), 1)[0])


@dataclass(frozen=True)
class DiagnosticSeries:
    """d1/d2 values over a range of m for fixed (family, alpha, delta).

    Slopes are fitted only when every series value sits above the rounding
    floor (1e-15) and at least four points are available; otherwise they
    stay None.  ``skipped_m`` lists points dropped due to quadrature
    failure.
    """

    family: WindowFamily
    alpha: float
    delta: float
    m_values: tuple[int, ...]
    d1: tuple[float, ...]
    d2: tuple[float, ...]
    slope_d1: float | None = None
    slope_d2: float | None = None
    skipped_m: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not (len(self.m_values) == len(self.d1) == len(self.d2)):
            raise ValueError("m_values, d1 and d2 must share length")
        if any(v < 0.0 for v in self.d1) or any(v < 0.0 for v in self.d2):
            raise ValueError("d1 and d2 entries must be nonnegative")


def _fit_or_none(ms, ys) -> float | None:
    if len(ms) >= 4 and all(v > _SLOPE_FLOOR for v in ys):
        return decay_slope(ms, ys)
    return None


def diagnostic_series(family, m_values, delta: float, alpha: float) -> DiagnosticSeries:
    """Compute the mismatch split over ``m_values`` and fit decay rates.

    Quadrature failures at individual m are recorded in ``skipped_m`` and
    the series continues without them.
    """
    fam = as_family(family)
    if fam not in (WindowFamily.SINH, WindowFamily.CKB):
        raise ValueError("diagnostics cover the sinh and ckb families only")
    ms, d1s, d2s, skipped = [], [], [], []
    for m in m_values:
        try:
            d1, d2 = _split(fam, int(m), delta, alpha)
        except QuadratureConvergenceError:
            skipped.append(int(m))
            continue
        ms.append(int(m))
        d1s.append(d1)
        d2s.append(d2)
    return DiagnosticSeries(
        family=fam, alpha=alpha, delta=delta,
        m_values=tuple(ms), d1=tuple(d1s), d2=tuple(d2s),
        slope_d1=_fit_or_none(ms, d1s), slope_d2=_fit_or_none(ms, d2s),
        skipped_m=tuple(skipped))


def save_series_csv(series_list, path) -> None:
    """Write diagnostic series as CSV columns family,alpha,delta,m,d1,d2."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["family", "alpha", "delta", "m", "d1", "d2"])
        for s in series_list:
            for m, d1, d2 in zip(s.m_values, s.d1, s.d2):
                writer.writerow([s.family.value, repr(float(s.alpha)),
                                 repr(float(s.delta)), m, repr(d1), repr(d2)])


# ---------------------------------------------------------------------------
# Identity suite
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityPoint:
    label: str
    residual: float
    status: str  # "pass", "fail" or "inconclusive"


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    points: tuple[IdentityPoint, ...]

    @property
    def passed(self) -> bool:
        return all(p.status != "fail" for p in self.points)

    @property
    def max_residual(self) -> float:
        return max((p.residual for p in self.points), default=0.0)


@dataclass(frozen=True)
class IdentityReport:
    checks: tuple[IdentityCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            state = "PASS" if c.passed else "FAIL"
            lines.append(f"{state} {c.name} (max residual {c.max_residual:.3e}, "
                         f"{len(c.points)} points)")
        return "\n".join(lines)


def _j_tail_profile(beta: float, nu) -> np.ndarray:
    w = np.sqrt(nu * nu - 1.0)
    out = np.where(w > 0.0, bessel_j1(beta * np.maximum(w, 1e-300)) / np.maximum(w, 1e-300),
                   0.5 * beta)
    return out


def _j_tail_integral(beta: float, upper: float) -> float:
    return _integrate_profile(_j_tail_profile, beta, 1.0, upper, tol=1e-13)


def _j_tail_to_infinity(beta: float, chunks: int = 48) -> float:
    # Integrate over whole oscillation chunks in u = sqrt(nu^2 - 1) and
    # accelerate the alternating tail by iterated averaging of the partial
    # sums.
    u_edges = np.pi / beta * np.arange(0, chunks + 1)
    nu_edges = np.sqrt(1.0 + u_edges * u_edges)
    pieces = np.array([
        integrate(lambda nu: _j_tail_profile(beta, nu), nu_edges[i], nu_edges[i + 1],
                  1e-14).value
        for i in range(chunks)])
    partials = np.cumsum(pieces)
    tail = partials[chunks // 2:]
    while tail.size > 1:
        tail = 0.5 * (tail[1:] + tail[:-1])
    return float(tail[0])


def _grid_points(check_fn, params) -> tuple[IdentityPoint, ...]:
    pts = []
    for label, args in params:
        try:
            residual, ok = check_fn(*args)
            status = "pass" if ok else "fail"
        except QuadratureConvergenceError:
            residual, status = float("nan"), "inconclusive"
        pts.append(IdentityPoint(label, residual, status))
    return tuple(pts)


def verify_identities(beta_grid=None, w_grid=None) -> IdentityReport:
    """Numerically check the quadrature identities behind the closed forms.

    Each identity or inequality is evaluated on a grid of shape parameters
    (and truncation limits ``w_grid`` where applicable); per-point
    quadrature failures are marked inconclusive rather than failed.
    """
    betas = [1.0, 2.0, 5.0, 10.0, 20.0] if beta_grid is None else [float(b) for b in beta_grid]
    ws = [1.1, 1.5, 3.0, 10.0, 100.0] if w_grid is None else [float(w) for w in w_grid]
    if not betas or not ws or min(betas) <= 0.0 or min(ws) <= 0.0:
        raise ValueError("beta and W grids must be nonempty and positive")
    checks = []

    def check_i1(beta):
        val = integrate_sqrt_singular(
            lambda nu: bessel_i1(beta * np.sqrt(1.0 - nu * nu)) / np.sqrt(1.0 - nu * nu),
            0.0, 1.0, 1e-12).value
        target = 2.0 / beta * np.sinh(beta / 2.0) ** 2
        resid = abs(val - target) / max(1.0, target)
        return resid, resid < 1e-9
    checks.append(IdentityCheck(
        "i1_profile_integral",
        _grid_points(check_i1, [(f"beta={b:g}", (b,)) for b in betas])))

    def check_j_tail(beta, w):
        val = _j_tail_integral(beta, w)
        upper = 3.0 * (1.0 - np.exp(-beta)) / (2.0 * beta)
        margin = 1e-12
        return val, (0.0 < val <= upper + margin)
    checks.append(IdentityCheck(
        "j1_tail_inequality",
        _grid_points(check_j_tail, [(f"beta={b:g},W={w:g}", (b, w))
                                    for b in betas for w in ws])))

    def check_j_full(beta):
        val = _j_tail_to_infinity(beta)
        target = (1.0 - np.exp(-beta)) * np.exp(-beta)
        resid = abs(val - target)
        return resid, resid < 1e-8
    checks.append(IdentityCheck(
        "j1_full_tail",
        _grid_points(check_j_full, [(f"beta={b:g}", (b,)) for b in betas])))

    def check_sinc_defect(beta, nu):
        w = np.sqrt(nu * nu - 1.0)
        first = np.sinc(beta * w / np.pi) if w > 0 else 1.0
        diff = abs(first - np.sinc(beta * nu / np.pi))
        return diff, diff <= 2.0 / (nu * nu) + 1e-15
    nus = np.linspace(1.0, 20.0, 40)
    sinc_params = [(f"beta={b:g},nu={nu:.3f}", (b, float(nu)))
                   for b in np.linspace(0.5, 60.0, 25) for nu in nus]
    checks.append(IdentityCheck("sinc_defect_bound",
                                _grid_points(check_sinc_defect, sinc_params)))

    def check_struve_window(beta):
        val = bessel_i0(beta) - struve_l0(beta) - 1.0 + 2.0 / np.pi * sine_integral(beta)
        return val, (-1e-12 <= val <= 0.5 + 1e-12)
    struve_params = [(f"m={m},delta={dl}", (m * (np.pi - d),))
                     for m in range(2, 21)
                     for dl, d in (("pi/4", np.pi / 4), ("pi/2", np.pi / 2),
                                   ("3pi/4", 3 * np.pi / 4))]
    checks.append(IdentityCheck("struve_si_window",
                                _grid_points(check_struve_window, struve_params)))

    def check_ratio_monotone(_):
        xs = np.linspace(1.0, 60.0, 1000)
        vals = np.exp(xs) / (xs * bessel_i0m1(xs))
        worst = float(np.max(np.diff(vals)))
        return max(worst, 0.0), bool(np.all(np.diff(vals) < 0.0))
    checks.append(IdentityCheck("i0_ratio_decreasing",
                                _grid_points(check_ratio_monotone, [("x in [1,60]", (None,))])))

    def check_constants(which):
        if which == "pi":
            val = np.exp(np.pi) / (np.pi * bessel_i0m1(np.pi))
            resid = abs(val - 1.644967)
        else:
            val = np.e / bessel_i0m1(1.0)
            resid = abs(val - 10.216574)
        return resid, resid < 5e-6
    checks.append(IdentityCheck(
        "reference_constants",
        _grid_points(check_constants, [("e^pi/(pi (I0(pi)-1))", ("pi",)),
                                       ("e/(I0(1)-1)", ("one",))])))

    return IdentityReport(tuple(checks))
