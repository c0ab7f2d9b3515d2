"""Forward transform: membership analysis and adaptive evaluation.

The integrand is f(x) {1 + i(1-q) k x f(x)^(q-1)}^(1/(1-q)). Its base has
real part >= 1 whenever x > 0 with Im k >= 0 (and symmetrically x < 0 with
Im k <= 0), so no pole can sit on an integration path; this is asserted.

Half-plane semantics: the upper tag integrates over x > 0, the lower tag
contributes minus the integral over x < 0, and the real_limit tags evaluate
the same one-sided integrals at real k. The full real-axis transform is the
sum of the two real_limit pieces (see qft_real_line).

Infinite tails are handled two ways. Super-algebraic densities are cut at a
point where an explicit bound on the remainder drops below the absolute
tolerance, and the bound is added to the error estimate. Algebraically
decaying integrands are mapped onto (0, 1] by x = X1 v^(-p); p is chosen
from the decay exponent so the transformed integrand vanishes at v = 0, and
no truncation error remains. Past the linear-phase region the kernel's
total remaining phase is bounded by pi/(2(q-1)), so the mapped tail is at
most mildly oscillatory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConvergenceError, MembershipError
from .qcore import QParam, as_qparam
from .quadrature import adaptive_quad


class FunctionSpec:
    """Base for the nonnegative densities the transform accepts."""

    kind = "abstract"

    def values(self, x):
        raise NotImplementedError

    def support(self):
        """(lo, hi), possibly infinite."""
        raise NotImplementedError

    def peak_value(self) -> float:
        raise NotImplementedError

    def tail_exponent(self):
        """None for compact support, math.inf for faster-than-algebraic
        decay, otherwise the exponent g with f ~ |x|^-g at infinity."""
        raise NotImplementedError


def _require(cond, msg):
    if not cond:
        raise ValueError(msg)


def _finite(*vals):
    return all(isinstance(v, (int, float)) and not isinstance(v, bool)
               and math.isfinite(v) for v in vals)


@dataclass(frozen=True)
class PowerLaw(FunctionSpec):
    """f(x) = (lam/x)^beta on [a, b], zero elsewhere; 0 < a < b."""
    lam: float
    beta: float
    a: float
    b: float
    kind = "powerlaw"

    def __post_init__(self):
        _require(_finite(self.lam, self.beta, self.a, self.b),
                 "PowerLaw parameters must be finite numbers")
        _require(self.lam > 0, f"lam must be > 0, got {self.lam}")
        _require(0 < self.a < self.b,
                 f"need 0 < a < b, got a={self.a}, b={self.b}")

    def values(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        m = (x >= self.a) & (x <= self.b)
        out[m] = (self.lam / x[m]) ** self.beta
        return out

    def support(self):
        return (self.a, self.b)

    def peak_value(self):
        return max((self.lam / self.a) ** self.beta,
                   (self.lam / self.b) ** self.beta)

    def tail_exponent(self):
        return None


@dataclass(frozen=True)
class Heaviside(FunctionSpec):
    """Unit step: sign=+1 selects x > 0, sign=-1 selects x < 0."""
    sign: int = 1
    kind = "heaviside"

    def __post_init__(self):
        _require(self.sign in (1, -1), f"sign must be +1 or -1, got {self.sign}")

    def values(self, x):
        x = np.asarray(x, dtype=float)
        return ((self.sign * x) > 0).astype(float)

    def support(self):
        return (0.0, math.inf) if self.sign == 1 else (-math.inf, 0.0)

    def peak_value(self):
        return 1.0

    def tail_exponent(self):
        return 0.0


@dataclass(frozen=True)
class Constant(FunctionSpec):
    """f = c on the whole line, c >= 0."""
    c: float = 1.0
    kind = "constant"

    def __post_init__(self):
        _require(_finite(self.c) and self.c >= 0,
                 f"c must be finite and >= 0, got {self.c}")

    def values(self, x):
        return np.full_like(np.asarray(x, dtype=float), self.c)

    def support(self):
        if self.c == 0:
            return (0.0, 0.0)
        return (-math.inf, math.inf)

    def peak_value(self):
        return self.c

    def tail_exponent(self):
        return 0.0


@dataclass(frozen=True)
class Gaussian(FunctionSpec):
    """f(x) = exp(-x^2 / (2 sigma^2)), unit amplitude."""
    sigma: float = 1.0
    kind = "gaussian"

    def __post_init__(self):
        _require(_finite(self.sigma) and self.sigma > 0,
                 f"sigma must be finite and > 0, got {self.sigma}")

    def values(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(-x * x / (2.0 * self.sigma ** 2))

    def support(self):
        return (-math.inf, math.inf)

    def peak_value(self):
        return 1.0

    def tail_exponent(self):
        return math.inf


@dataclass(frozen=True)
class QGaussian(FunctionSpec):
    """Deformed bell curve [1 - (1-q_g) beta_g x^2]_+^(1/(1-q_g)).

    Compactly supported for q_g < 1; a plain Gaussian at q_g = 1; heavy
    algebraic tails |x|^(-2/(q_g-1)) for 1 < q_g < 3.
    """
    q_g: float
    beta_g: float
    kind = "qgaussian"

    def __post_init__(self):
        _require(_finite(self.q_g, self.beta_g),
                 "QGaussian parameters must be finite numbers")
        _require(self.q_g < 3, f"q_g must be < 3 for integrability, got {self.q_g}")
        _require(self.beta_g > 0, f"beta_g must be > 0, got {self.beta_g}")

    def values(self, x):
        x = np.asarray(x, dtype=float)
        if self.q_g == 1.0:
            return np.exp(-self.beta_g * x * x)
        base = 1.0 - (1.0 - self.q_g) * self.beta_g * x * x
        return np.maximum(base, 0.0) ** (1.0 / (1.0 - self.q_g))

    def support(self):
        if self.q_g < 1.0:
            xc = 1.0 / math.sqrt((1.0 - self.q_g) * self.beta_g)
            return (-xc, xc)
        return (-math.inf, math.inf)

    def peak_value(self):
        return 1.0

    def tail_exponent(self):
        if self.q_g < 1.0:
            return None
        if self.q_g == 1.0:
            return math.inf
        return 2.0 / (self.q_g - 1.0)


@dataclass(frozen=True, eq=False)
class Sampled(FunctionSpec):
    """Piecewise-linear density through (x, y) samples, zero outside."""
    x: object
    y: object
    kind = "sampled"

    def __post_init__(self):
        xs = np.asarray(self.x, dtype=float)
        ys = np.asarray(self.y, dtype=float)
        _require(xs.ndim == 1 and xs.shape == ys.shape and len(xs) >= 2,
                 "Sampled needs matching 1-d x and y with >= 2 points")
        _require(np.all(np.isfinite(xs)) and np.all(np.isfinite(ys)),
                 "Sampled grids must be finite")
        _require(bool(np.all(np.diff(xs) > 0)),
                 "Sampled x grid must be strictly increasing")
        _require(bool(np.all(ys >= 0)),
                 "Sampled values must be nonnegative")
        object.__setattr__(self, "x", xs)
        object.__setattr__(self, "y", ys)

    def values(self, x):
        return np.interp(np.asarray(x, dtype=float), self.x, self.y,
                         left=0.0, right=0.0)

    def support(self):
        return (float(self.x[0]), float(self.x[-1]))

    def peak_value(self):
        return float(self.y.max())

    def tail_exponent(self):
        return None


class PlaneTag(Enum):
    UPPER = "upper"
    LOWER = "lower"
    REAL_LIMIT_UPPER = "real_limit_upper"
    REAL_LIMIT_LOWER = "real_limit_lower"


@dataclass(frozen=True)
class HalfPlanePoint:
    """A transform evaluation point: k plus which half-plane piece."""
    k: complex
    plane: PlaneTag

    def __post_init__(self):
        k = complex(self.k)
        _require(math.isfinite(k.real) and math.isfinite(k.imag),
                 f"k must be finite, got {k!r}")
        object.__setattr__(self, "k", k)
        if self.plane is PlaneTag.UPPER:
            _require(k.imag > 0, f"upper tag needs Im k > 0, got {k!r}")
        elif self.plane is PlaneTag.LOWER:
            _require(k.imag < 0, f"lower tag needs Im k < 0, got {k!r}")
        elif self.plane in (PlaneTag.REAL_LIMIT_UPPER,
                            PlaneTag.REAL_LIMIT_LOWER):
            _require(k.imag == 0,
                     f"real_limit tags need Im k = 0, got {k!r}")
        else:
            raise ValueError(f"unknown plane tag {self.plane!r}")


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    tail_cut: float | None = None

    def __post_init__(self):
        _require(_finite(self.rel_tol, self.abs_tol)
                 and self.rel_tol > 0 and self.abs_tol > 0,
                 "tolerances must be finite and > 0")
        _require(isinstance(self.max_subdivisions, int)
                 and not isinstance(self.max_subdivisions, bool)
                 and self.max_subdivisions >= 4,
                 "max_subdivisions must be an integer >= 4")
        if self.tail_cut is not None:
            _require(_finite(self.tail_cut) and self.tail_cut > 0,
                     "tail_cut must be finite and > 0 when given")


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    integrable_pos: bool
    integrable_neg: bool
    decay_exponent: float | None
    detail: str


@dataclass(eq=False)
class TransformSurface:
    k_grid: tuple
    q_list: tuple
    values: np.ndarray
    err: np.ndarray
    failed: np.ndarray

    def __post_init__(self):
        shape = (len(self.q_list), len(self.k_grid))
        _require(self.values.shape == shape and self.err.shape == shape
                 and self.failed.shape == shape,
                 "surface matrices must be |q_list| x |k_grid|")
        _require(bool(np.all(self.err[~self.failed] >= 0)),
                 "error estimates must be nonnegative")


def _integrand_decay(gamma_f, qv):
    """Decay exponent d of the integrand at infinity: integrand ~ x^-d."""
    if gamma_f is None:
        return None
    if gamma_f == math.inf:
        return math.inf
    if qv == 1.0:
        return gamma_f
    s = 1.0 - gamma_f * (qv - 1.0)
    return 1.0 / (qv - 1.0) if s >= 0 else gamma_f


def membership_check(f: FunctionSpec, q) -> MembershipReport:
    """Integrability of f times the deformed kernel on each half-line.

    Closed-form variants are classified by their decay exponent; a compact
    support is a member outright.
    """
    qp = as_qparam(q)
    lo, hi = f.support()
    if f.peak_value() == 0.0:
        return MembershipReport(True, True, True, None,
                                "density is identically zero")
    d = _integrand_decay(f.tail_exponent(), qp.q)
    notes = []
    if hi == math.inf or lo == -math.inf:
        if d == math.inf:
            ok = True
            notes.append("super-algebraic decay dominates any kernel power")
        else:
            ok = d > 1.0
            notes.append(f"integrand ~ |x|^-{d:g} at infinity")
        integrable_pos = ok if hi == math.inf else True
        integrable_neg = ok if lo == -math.inf else True
        exponent = -d if d != math.inf else -math.inf
    else:
        integrable_pos = integrable_neg = True
        exponent = None
        notes.append("compact support")
    member = integrable_pos and integrable_neg
    if not member:
        notes.append("needs q > 1 for a convergent integral"
                     if qp.classical else "decay too slow for this q")
    return MembershipReport(member, integrable_pos, integrable_neg,
                            exponent, "; ".join(notes))


def _kernel_integrand(f: FunctionSpec, qv: float, k: complex, reflect: bool):
    """Vectorized integrand on a positive half-line variable u.

    reflect=False evaluates at x = u, reflect=True at x = -u.
    """
    def integrand(u):
        u = np.asarray(u, dtype=float)
        x = -u if reflect else u
        y = f.values(x)
        out = np.zeros(u.shape, dtype=complex)
        m = y > 0
        if not m.any():
            return out
        xm = x[m]
        ym = y[m]
        if qv == 1.0:
            out[m] = ym * np.exp(1j * k * xm)
            return out
        with np.errstate(over="ignore", invalid="ignore"):
            base = 1.0 + 1j * (1.0 - qv) * k * xm * ym ** (qv - 1.0)
            assert base.real.min() >= 1.0 - 1e-9, \
                "kernel pole on the integration path"
            out[m] = ym * np.exp(np.log(base) / (1.0 - qv))
        np.nan_to_num(out, copy=False)
        return out

    return integrand


def _osc_breakpoints(A, B, freq, cap=256):
    if not (freq > 0) or not math.isfinite(B - A):
        return ()
    n = int(freq * (B - A) / (2.0 * math.pi * 2.5))
    n = min(n, cap)
    if n < 2:
        return ()
    return np.linspace(A, B, n + 1)[1:-1]


def _half_line(gfun, A, B, cfg: QuadratureConfig, *, freq, decay,
               trunc_scale):
    """Integrate gfun over [A, B] (B possibly infinite); returns (val, err)."""
    cap = min(256, max(cfg.max_subdivisions // 4, 1))
    if B is not None and math.isfinite(B):
        if B <= A:
            return 0j, 0.0
        return adaptive_quad(gfun, A, B, rel_tol=cfg.rel_tol,
                             abs_tol=cfg.abs_tol,
                             max_subdivisions=cfg.max_subdivisions,
                             breakpoints=_osc_breakpoints(A, B, freq, cap))

    if cfg.tail_cut is not None:
        T = cfg.tail_cut
        _require(T > A, f"tail_cut {T} does not exceed the lower limit {A}")
        val, err = adaptive_quad(gfun, A, T, rel_tol=cfg.rel_tol,
                                 abs_tol=cfg.abs_tol,
                                 max_subdivisions=cfg.max_subdivisions,
                                 breakpoints=_osc_breakpoints(A, T, freq, cap))
        gT = abs(complex(gfun(np.array([T]))[0]))
        if decay == math.inf:
            bound = gT * max(trunc_scale, 1.0)
        else:
            # remainder of a ~x^-decay tail; factor 2 covers a cut placed
            # before the prefactor settles onto its asymptote
            bound = 2.0 * gT * T / max(decay - 1.0, 1e-3)
        return val, err + bound

    if decay == math.inf:
        # explicit cut where the remainder bound drops under abs_tol
        width = max(trunc_scale, 1.0)
        T = A + width * (math.sqrt(2.0 * math.log(1.0 / cfg.abs_tol)) + 1.5)
        val, err = adaptive_quad(gfun, A, T, rel_tol=cfg.rel_tol,
                                 abs_tol=cfg.abs_tol,
                                 max_subdivisions=cfg.max_subdivisions,
                                 breakpoints=_osc_breakpoints(A, T, freq, cap))
        gT = abs(complex(gfun(np.array([T]))[0]))
        return val, err + gT * width

    # algebraic tail: finite oscillatory part, then the compactifying map
    amp = max((freq if freq > 0 else 0.0), 0.0)
    X1 = A + (12.0 / amp if amp > 1e-9 else 1.0)
    X1 = min(X1, A + 1e9)
    X1 = max(X1, A + 1.0)
    v1, e1 = adaptive_quad(gfun, A, X1, rel_tol=cfg.rel_tol,
                           abs_tol=cfg.abs_tol,
                           max_subdivisions=cfg.max_subdivisions,
                           breakpoints=_osc_breakpoints(A, X1, freq, cap))
    p = min(60.0, max(1.0, 2.0 / (decay - 1.0)))

    def mapped(v):
        v = np.asarray(v, dtype=float)
        with np.errstate(over="ignore"):
            x = X1 * v ** (-p)
            jac = X1 * p * v ** (-p - 1.0)
            out = gfun(x) * jac
        return np.nan_to_num(out, copy=False, posinf=0.0, neginf=0.0)

    v2, e2 = adaptive_quad(mapped, 0.0, 1.0, rel_tol=cfg.rel_tol,
                           abs_tol=cfg.abs_tol,
                           max_subdivisions=cfg.max_subdivisions)
    return v1 + v2, e1 + e2


def qft_complex(f: FunctionSpec, q, point: HalfPlanePoint,
                cfg: QuadratureConfig | None = None):
    """One half-plane piece of the transform; returns (value, err).

    Raises MembershipError when the integrand is not integrable for this q,
    and ConvergenceError (with the best estimate attached) when the
    subdivision budget runs out.
    """
    qp = as_qparam(q)
    cfg = cfg if cfg is not None else QuadratureConfig()
    report = membership_check(f, qp)
    if not report.member:
        raise MembershipError(
            f"{f.kind} is outside the admissible set at q={qp.q:g}: "
            f"{report.detail}")

    lo, hi = f.support()
    positive_side = point.plane in (PlaneTag.UPPER,
                                    PlaneTag.REAL_LIMIT_UPPER)
    if positive_side:
        A, B = max(lo, 0.0), hi
    else:
        A, B = lo, min(hi, 0.0)
    if B <= A:
        return 0j, 0.0

    k = point.k
    qv = qp.q
    gamma_f = f.tail_exponent()
    unbounded = (B == math.inf) if positive_side else (A == -math.inf)
    if k == 0 and unbounded:
        if gamma_f is not None and gamma_f != math.inf and gamma_f <= 1.0:
            raise ValueError(
                "k=0 reduces the transform to the plain integral of f, "
                f"which diverges for {f.kind}")
        decay = gamma_f
    else:
        decay = _integrand_decay(gamma_f, qv) if unbounded else None

    freq = abs(k) * f.peak_value() ** (qv - 1.0)
    trunc_scale = 1.0
    if isinstance(f, Gaussian):
        trunc_scale = f.sigma
    elif isinstance(f, QGaussian) and f.q_g == 1.0:
        trunc_scale = 1.0 / math.sqrt(2.0 * f.beta_g)

    if positive_side:
        gfun = _kernel_integrand(f, qv, k, reflect=False)
        val, err = _half_line(gfun, A, B if math.isfinite(B) else None,
                              cfg, freq=freq, decay=decay,
                              trunc_scale=trunc_scale)
        return val, err
    gfun = _kernel_integrand(f, qv, k, reflect=True)
    hi_u = -A if math.isfinite(A) else None
    try:
        val, err = _half_line(gfun, -B, hi_u, cfg, freq=freq, decay=decay,
                              trunc_scale=trunc_scale)
    except ConvergenceError as exc:
        if exc.value is not None:
            raise ConvergenceError(str(exc), value=-exc.value,
                                   err=exc.err) from None
        raise
    return -val, err


def qft_real_line(f: FunctionSpec, q, k: float,
                  cfg: QuadratureConfig | None = None):
    """Full real-axis transform at real k.

    The two half-plane pieces are boundary values of one sectionally
    analytic function, and the transform is their jump across the axis:
    upper minus lower, which unfolds to the integral over all of x.
    Returns (value, err).
    """
    kv = float(k)
    up = HalfPlanePoint(complex(kv, 0.0), PlaneTag.REAL_LIMIT_UPPER)
    dn = HalfPlanePoint(complex(kv, 0.0), PlaneTag.REAL_LIMIT_LOWER)
    v1, e1 = qft_complex(f, q, up, cfg)
    v2, e2 = qft_complex(f, q, dn, cfg)
    return v1 - v2, e1 + e2


def qft_surface(f: FunctionSpec, q_list, k_grid,
                cfg: QuadratureConfig | None = None) -> TransformSurface:
    """Tabulate qft_complex over q_list x k_grid.

    Per-point failures (membership, non-convergence, divergent k=0) are
    flagged rather than aborting the surface; non-convergent cells keep
    their best estimate.
    """
    cfg = cfg if cfg is not None else QuadratureConfig()
    q_list = tuple(as_qparam(q) for q in q_list)
    k_grid = tuple(k_grid)
    shape = (len(q_list), len(k_grid))
    values = np.zeros(shape, dtype=complex)
    err = np.zeros(shape, dtype=float)
    failed = np.zeros(shape, dtype=bool)
    for i, qp in enumerate(q_list):
        for j, pt in enumerate(k_grid):
            try:
                values[i, j], err[i, j] = qft_complex(f, qp, pt, cfg)
            except ConvergenceError as exc:
                values[i, j] = exc.value if exc.value is not None else np.nan
                err[i, j] = exc.err if exc.err is not None else np.inf
                failed[i, j] = True
            except (MembershipError, ValueError):
                values[i, j] = complex("nan")
                err[i, j] = np.inf
                failed[i, j] = True
    return TransformSurface(k_grid=k_grid, q_list=q_list, values=values,
                            err=err, failed=failed)
