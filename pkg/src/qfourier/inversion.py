"""Recovery of f from its transform through the classical limit.

Route: evaluate the real-line transform at q = 1 + eps for a decreasing
schedule of eps, extrapolate the slices toward eps = 0, then apply the
plain inverse Fourier integral on a symmetric k grid. The limit exists
pointwise only when f itself has a classical Fourier transform, so step
functions and constants are rejected up front; their spectral content is
a delta at k = 0 and belongs to the contour machinery.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import AliasingError, InversionDomainError, LimitFailureError
from .transform import (
    FunctionSpec,
    Gaussian,
    PowerLaw,
    QGaussian,
    QuadratureConfig,
    membership_check,
    qft_real_line,
)

__all__ = ["EpsilonSchedule", "InversionResult", "q1_slice", "inverse_ft",
           "roundtrip"]

# residual is measured outside this half-width around each jump of f
_JUMP_WINDOW = 0.05

# imaginary part above this (relative) fraction draws a warning
_IMAG_RESIDUE_TOL = 1e-6


@dataclass(frozen=True)
class EpsilonSchedule:
    """Decreasing eps values for the q = 1 + eps slices."""
    eps_list: tuple = (1e-2, 1e-3, 1e-4)
    extrapolation: str = "richardson"

    def __post_init__(self):
        eps = tuple(float(e) for e in self.eps_list)
        if len(eps) == 0:
            raise ValueError("eps_list must not be empty")
        if any(not (0.0 < e < 0.5) for e in eps):
            raise ValueError("every eps must lie in (0, 0.5)")
        if any(e1 >= e0 for e0, e1 in zip(eps, eps[1:])):
            raise ValueError("eps_list must be strictly decreasing")
        if self.extrapolation not in ("none", "richardson"):
            raise ValueError("extrapolation must be 'none' or 'richardson'")
        if self.extrapolation == "richardson" and len(eps) < 2:
            raise ValueError("richardson extrapolation needs at least two eps")
        object.__setattr__(self, "eps_list", eps)


@dataclass(eq=False)
class InversionResult:
    x_grid: np.ndarray
    f_rec: np.ndarray
    residual: float
    slice_diagnostics: dict = field(default_factory=dict)
    probe_k: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self):
        self.x_grid = np.asarray(self.x_grid, dtype=float)
        self.f_rec = np.asarray(self.f_rec, dtype=float)
        self.probe_k = np.asarray(self.probe_k, dtype=float)
        if self.x_grid.shape != self.f_rec.shape or self.x_grid.ndim != 1:
            raise ValueError("x_grid and f_rec must be matching 1-d arrays")
        if math.isnan(self.residual) or self.residual < 0.0:
            raise ValueError("residual must be nonnegative")
        for eps, vals in self.slice_diagnostics.items():
            if len(vals) != self.probe_k.size:
                raise ValueError(
                    f"diagnostics for eps={eps:g} do not match probe_k")


def _require_classical_member(f: FunctionSpec):
    rep = membership_check(f, 1.0)
    if not rep.member:
        raise InversionDomainError(
            "f has no classical Fourier transform: " + rep.detail)


def _eval_slices(f, k_grid, sched, cfg):
    out = []
    for eps in sched.eps_list:
        row = np.empty(k_grid.size, dtype=complex)
        for i, k in enumerate(k_grid):
            row[i], _ = qft_real_line(f, 1.0 + eps, float(k), cfg)
        out.append(row)
    return out


def _check_trend(slices, eps_list):
    # needs two consecutive differences; growth means no eps -> 0 limit
    if len(slices) < 3:
        return
    diffs = [float(np.max(np.abs(s1 - s0)))
             for s0, s1 in zip(slices, slices[1:])]
    for d0, d1 in zip(diffs, diffs[1:]):
        if d1 > 1.05 * d0 + 1e-10:
            raise LimitFailureError(
                f"slice differences grow along the schedule "
                f"({d0:.3e} -> {d1:.3e}); the eps -> 0 trend is not Cauchy")


def _collapse(slices, sched):
    if sched.extrapolation == "none" or len(slices) == 1:
        return slices[-1].copy()
    e0, e1 = sched.eps_list[-2], sched.eps_list[-1]
    return (e0 * slices[-1] - e1 * slices[-2]) / (e0 - e1)


def q1_slice(f: FunctionSpec, k_grid, sched: EpsilonSchedule | None = None,
             cfg: QuadratureConfig | None = None) -> np.ndarray:
    """Transform values extrapolated to q = 1: the classical FT of f.

    The delta-filter in q collapses to point evaluation at q = 1 + eps;
    the schedule's last two slices feed a first-order extrapolation unless
    extrapolation is 'none'.
    """
    sched = sched if sched is not None else EpsilonSchedule()
    kg = np.atleast_1d(np.asarray(k_grid, dtype=float))
    if kg.ndim != 1 or kg.size == 0:
        raise ValueError("k_grid must be a nonempty 1-d real array")
    if not np.all(np.isfinite(kg)):
        raise ValueError("k_grid must be finite")
    _require_classical_member(f)
    slices = _eval_slices(f, kg, sched, cfg)
    _check_trend(slices, sched.eps_list)
    return _collapse(slices, sched)


def inverse_ft(G, k_grid, x_grid) -> np.ndarray:
    """Classical inverse integral (1/2pi) int G(k) e^{-ikx} dk by trapezoid.

    k_grid must be strictly increasing and symmetric about 0, sampled
    finely enough for the x extent (Nyquist); a noticeable imaginary part
    in the result means G was not conjugate-symmetric and draws a warning.
    """
    G = np.asarray(G, dtype=complex)
    k = np.asarray(k_grid, dtype=float)
    x = np.atleast_1d(np.asarray(x_grid, dtype=float))
    if k.ndim != 1 or k.size < 2 or G.shape != k.shape:
        raise ValueError("G and k_grid must be matching 1-d arrays, len >= 2")
    if x.size == 0:
        raise ValueError("x_grid must not be empty")
    if not (np.all(np.isfinite(G)) and np.all(np.isfinite(k))
            and np.all(np.isfinite(x))):
        raise ValueError("inputs must be finite")
    dk = np.diff(k)
    if np.any(dk <= 0.0):
        raise ValueError("k_grid must be strictly increasing")
    if not np.allclose(k, -k[::-1], atol=1e-12 * max(1.0, abs(k[-1]))):
        raise ValueError("k_grid must be symmetric about 0")
    extent = float(np.max(np.abs(x)))
    if extent * float(np.max(dk)) > math.pi * (1.0 + 1e-9):
        raise AliasingError(
            f"x extent {extent:g} exceeds the Nyquist bound "
            f"pi/dk = {math.pi / float(np.max(dk)):g}; refine k_grid")
    vals = np.trapezoid(G[None, :] * np.exp(-1j * np.outer(x, k)),
                        k, axis=1) / (2.0 * math.pi)
    residue = float(np.max(np.abs(vals.imag))) \
        / (1.0 + float(np.max(np.abs(vals.real))))
    if residue > _IMAG_RESIDUE_TOL:
        warnings.warn(
            f"imaginary residue {residue:.2e} after inversion; G was not "
            "conjugate-symmetric", UserWarning, stacklevel=2)
    return vals.real


def _jump_points(f: FunctionSpec):
    if isinstance(f, PowerLaw):
        return (f.a, f.b)
    return ()


def _default_x_grid(f: FunctionSpec) -> np.ndarray:
    if isinstance(f, Gaussian):
        return np.linspace(-6.0 * f.sigma, 6.0 * f.sigma, 241)
    if isinstance(f, QGaussian) and f.q_g == 1.0:
        edge = 6.0 / math.sqrt(2.0 * f.beta_g)
        return np.linspace(-edge, edge, 241)
    lo, hi = f.support()
    if math.isfinite(lo) and math.isfinite(hi):
        return np.linspace(lo - 1.5, hi + 1.5, 401)
    if isinstance(f, QGaussian):
        # down to 1e-5 of the peak on the algebraic tail
        edge = math.sqrt((1e-5 ** (1.0 - f.q_g) - 1.0)
                         / ((f.q_g - 1.0) * f.beta_g))
        return np.linspace(-edge, edge, 801)
    raise ValueError("no default x grid for this function; pass x_grid")


def _default_k_max(f: FunctionSpec, eps_last: float) -> float:
    jumps = _jump_points(f)
    if jumps:
        # the q = 1 + eps slice damps the content of a jump at x_j like
        # exp(-eps k^2 x_j^2 / 2); past sqrt(24/eps)/x_j only noise is left
        x_ref = max(min(abs(xj) for xj in jumps), 0.25)
        return min(4096.0, math.sqrt(24.0 / eps_last) / x_ref)
    if isinstance(f, Gaussian):
        return max(8.0 / f.sigma, 6.0)
    if isinstance(f, QGaussian) and f.q_g == 1.0:
        return max(8.0 * math.sqrt(2.0 * f.beta_g), 6.0)
    return 40.0


def roundtrip(f: FunctionSpec, sched: EpsilonSchedule | None = None,
              cfg: QuadratureConfig | None = None, x_grid=None,
              k_max: float | None = None, dk: float | None = None
              ) -> InversionResult:
    """Forward transform near q = 1, slice, invert, compare against f.

    The residual is the max reconstruction error outside +-0.05 windows
    around f's jump points. Each slice smooths a jump at x_j over a width
    of roughly sqrt(eps)*x_j, so extrapolating across a coarse eps leaks
    that slice's wide mollification into the windows; for the sharpest
    jump recovery pass a single small eps with extrapolation 'none'.
    """
    sched = sched if sched is not None else EpsilonSchedule()
    _require_classical_member(f)
    x = _default_x_grid(f) if x_grid is None \
        else np.atleast_1d(np.asarray(x_grid, dtype=float))
    if x.size == 0 or not np.all(np.isfinite(x)):
        raise ValueError("x_grid must be nonempty and finite")
    extent = max(float(np.max(np.abs(x))), 1e-9)
    km = float(k_max) if k_max is not None \
        else _default_k_max(f, sched.eps_list[-1])
    step = float(dk) if dk is not None else min(0.4, 0.75 * math.pi / extent)
    if not (0.0 < step and km >= step):
        raise ValueError("need 0 < dk <= k_max")
    kn = step * np.arange(int(math.ceil(km / step)) + 1)

    slices = _eval_slices(f, kn, sched, cfg)
    _check_trend(slices, sched.eps_list)
    g_half = _collapse(slices, sched)
    # f is real, so the negative-k half follows by conjugation
    k_full = np.concatenate([-kn[:0:-1], kn])
    g_full = np.concatenate([np.conj(g_half[:0:-1]), g_half])
    f_rec = inverse_ft(g_full, k_full, x)

    truth = f.values(x)
    mask = np.ones(x.size, dtype=bool)
    for xj in _jump_points(f):
        mask &= np.abs(x - xj) > _JUMP_WINDOW
    residual = float(np.max(np.abs(f_rec - truth)[mask])) \
        if mask.any() else math.inf

    probe_idx = sorted({int(np.argmin(np.abs(kn - kp)))
                        for kp in (0.5, 1.0, 2.0) if kp <= kn[-1]})
    diag = {eps: s[probe_idx] for eps, s in zip(sched.eps_list, slices)}
    return InversionResult(x_grid=x, f_rec=f_rec, residual=residual,
                           slice_diagnostics=diag, probe_k=kn[probe_idx])
