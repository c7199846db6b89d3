r"""Exact interaction energy of two coaxial perfectly conducting cylinders.

With radii :math:`a = 1` and :math:`b = \alpha`, the interaction energy per
unit length is written on the imaginary frequency axis as

.. math::
    \varepsilon_{12}(\alpha) = -\frac{1}{4\pi}\Big[\mathcal I_0
        + 2\sum_{n\ge1}\mathcal I_n\Big], \qquad
    \mathcal I_n = \int_0^\infty y \ln F_n(y, \alpha)\,dy,

    F_n = \Big[1 - \frac{I_n(y)K_n(\alpha y)}{I_n(\alpha y)K_n(y)}\Big]
          \Big[1 - \frac{I'_n(y)K'_n(\alpha y)}{I'_n(\alpha y)K'_n(y)}\Big].

Both brackets lie in (0, 1), so every :math:`\mathcal I_n` is negative and
:math:`\varepsilon_{12} > 0`. The α-derivative of the integrand is carried
along in the same quadrature so that pressures need no finite differences.
"""
from dataclasses import dataclass
import math

import numpy as np

from . import specfun
from .errors import ConvergenceError, DomainError, RangeError
from .quadrature import integrate_batch
from .results import EnergyBreakdown, MethodTag

# Dimensionless self-energy constant of an isolated perfectly conducting
# cylinder, E_1 = -SINGLE_CYLINDER_CONSTANT * hbar c ell / a^2. Taken as given
# from the single-cylinder literature; never recomputed here.
SINGLE_CYLINDER_CONSTANT = 0.01356

ALPHA_MIN = 1.002


@dataclass(frozen=True)
class ExactParams:
    """Accuracy and truncation controls for the mode sum."""

    rel_tol: float = 1e-8
    n_stop_rule: int = 2
    quad_abs_floor: float = 1e-300
    y_cut_factor: float = 40.0
    n_cap: int = 10_000

    def __post_init__(self):
        if not (0 < self.rel_tol <= 1e-2):
            raise DomainError("rel_tol must lie in (0, 1e-2]")
        if self.y_cut_factor < 10:
            raise DomainError("y_cut_factor must be >= 10")
        if self.n_stop_rule < 1:
            raise DomainError("n_stop_rule must be >= 1")
        if self.quad_abs_floor < 0:
            raise DomainError("quad_abs_floor must be >= 0")


def _check_alpha(alpha, guard=False):
    if not (np.isfinite(alpha) and alpha > 1):
        raise DomainError(f"alpha must be > 1, got {alpha!r}")
    if guard and alpha < ALPHA_MIN:
        raise RangeError(
            f"alpha={alpha} is below {ALPHA_MIN}; the mode sum becomes too costly. "
            "Use the proximity or small-gap forms instead.")


def _log_ratios(n, y, alpha):
    """log r_TE, log r_TM and the pieces needed for their α-derivatives."""
    x = alpha * y
    e1, ri1, rk1, rdi1, rmdk1 = specfun.log_ik_parts(n, y)
    e2, ri2, rk2, rdi2, rmdk2 = specfun.log_ik_parts(n, x)
    common = 2.0 * (e1 - e2) - 2.0 * (alpha - 1.0) * y
    lr_te = common + ri1 - ri2 + rk2 - rk1
    lr_tm = common + rdi1 - rdi2 + rmdk2 - rmdk1
    return lr_te, lr_tm, (x, ri2, rk2, rdi2, rmdk2)


def _log1m_exp(lr):
    """log(1 - e^lr) for lr < 0, accurate at both ends."""
    lr = np.asarray(lr, dtype=float)
    far = lr < -math.log(2.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(far, np.log1p(-np.exp(np.minimum(lr, 0.0))),
                        np.log(-np.expm1(np.where(far, -1.0, lr))))


def _logF_parts(n, y, alpha, with_derivative=True):
    n = np.asarray(n, dtype=float)
    y = np.asarray(y, dtype=float)
    lr_te, lr_tm, (x, ri, rk, rdi, rmdk) = _log_ratios(n, y, alpha)
    # Rounding can push a ratio to 1 only through an engine defect.
    worst = max(np.max(lr_te, initial=-np.inf), np.max(lr_tm, initial=-np.inf))
    if worst >= -1e-15:
        raise DomainError(f"Bessel ratio reached {math.exp(worst):.17g} >= 1")
    logF = _log1m_exp(lr_te) + _log1m_exp(lr_tm)
    if not with_derivative:
        return logF, None
    # d log r_TE / dα = -y [(-K'/K) + I'/I] at αy
    g_te = y * (np.exp(rmdk - rk) + np.exp(rdi - ri))
    # d log r_TM / dα = -y (1 + n²/x²) [K/(-K') + I/I'] at αy, via the Bessel ODE.
    g_tm = y * (1.0 + (n / x) ** 2) * (np.exp(rk - rmdk) + np.exp(ri - rdi))
    # d/dα log(1 - r) = r/(1 - r) * g
    odds_te = np.exp(lr_te) / (-np.expm1(lr_te))
    odds_tm = np.exp(lr_tm) / (-np.expm1(lr_tm))
    dlogF = odds_te * g_te + odds_tm * g_tm
    return logF, dlogF


def log_F12(n, y, alpha):
    r"""Natural log of :math:`F_n(iy; 1, \alpha)`, always :math:`\le 0`.

    Ratios are assembled from log-scaled Bessel values, each carrying an
    explicit factor :math:`e^{-2(\alpha-1)y}`, so nothing overflows.
    ``n`` and ``y`` broadcast.
    """
    _check_alpha(alpha)
    logF, _ = _logF_parts(n, y, alpha, with_derivative=False)
    return float(logF) if np.ndim(logF) == 0 else logF


def dlog_F12_dalpha(n, y, alpha):
    """α-derivative of :func:`log_F12` (non-negative)."""
    _check_alpha(alpha)
    _, d = _logF_parts(n, y, alpha)
    return float(d) if np.ndim(d) == 0 else d


def h_uniform(z):
    r""":math:`h(z) = 1 + z^2/(1 + \sqrt{1+z^2})`, the small-gap exponent rate."""
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise DomainError("h_uniform needs z >= 0")
    out = 1.0 + z * z / (1.0 + np.sqrt(1.0 + z * z))
    return float(out) if out.ndim == 0 else out


def smallgap_logF_approx(n, y, alpha):
    r"""Leading small-gap form :math:`2\ln[1 - e^{-2n h(y/n)(\alpha-1)}]`.

    Only meaningful for ``n >= 1`` and α close to 1; used as a cross-check
    of :func:`log_F12`.
    """
    if np.any(np.asarray(n) < 1):
        raise DomainError("small-gap form needs n >= 1")
    _check_alpha(alpha)
    n = np.asarray(n, dtype=float)
    y = np.asarray(y, dtype=float)
    out = 2.0 * np.log(-np.expm1(-2.0 * n * h_uniform(y / n) * (alpha - 1.0)))
    return float(out) if out.ndim == 0 else out


def _y_max(alpha, params):
    return params.y_cut_factor / (alpha - 1.0)


def _y_tail_bound(alpha, y_max):
    """Bound on |∫_{y_max}^∞ y ln F dy| using |ln F| <= 4 e^{-2(α-1)y}."""
    d = alpha - 1.0
    return 4.0 * math.exp(-2.0 * d * y_max) * (2.0 * d * y_max + 1.0) / (4.0 * d * d)


def _breakpoints(n, alpha, y_max):
    d = alpha - 1.0
    pts = [0.25 * n, n, 2.0 * n, 0.25 / d, 1.0 / d, 4.0 / d, 10.0 / d,
           min(1.0, 0.1 / d)]
    inner = sorted({p for p in pts if 0 < p < y_max})
    return np.array([0.0, *inner, y_max])


def _integrate_orders(orders, alpha, params, abs_floor):
    """Integrals of y ln F_n and y ∂_α ln F_n for a batch of orders."""
    orders = np.asarray(orders)
    y_max = _y_max(alpha, params)
    edges = [_breakpoints(int(n), alpha, y_max) for n in orders]

    def f(y, task):
        n = orders[task]
        y = np.maximum(y, specfun.Y_MIN)
        logF, dlogF = _logF_parts(n, y, alpha)
        return np.stack([y * logF, y * dlogF])

    res = integrate_batch(f, edges, ncomp=2, rel_tol=0.1 * params.rel_tol,
                          abs_tol=abs_floor, max_panels=200_000)
    tail = _y_tail_bound(alpha, y_max)
    return res.value, res.error + np.array([tail, tail * y_max])


def integral_n(n, alpha, params=None, derivative=False):
    r"""Compute :math:`\int_0^\infty y \ln F_n(iy; 1, \alpha)\,dy`.

    Returns
    -------
    tuple
        ``(value, error_estimate)``; with ``derivative=True`` also the
        α-derivative and its error: ``(value, error, dvalue, derror)``.
    """
    params = params or ExactParams()
    _check_alpha(alpha)
    if n < 0:
        raise DomainError("n must be >= 0")
    val, err = _integrate_orders([n], alpha, params, np.array([params.quad_abs_floor] * 2))
    out = (float(val[0, 0]), float(err[0, 0]))
    if derivative:
        out += (float(val[0, 1]), float(err[0, 1]))
    return out


def _batch_size(alpha):
    return int(min(128, max(8, 1.5 / (alpha - 1.0))))


def energy_exact_12(alpha, params=None):
    r"""Interaction energy :math:`\varepsilon_{12}` by the mode sum.

    The sum over angular numbers runs in ascending batches; it stops after
    ``n_stop_rule`` consecutive orders each contribute less than
    ``rel_tol`` of the running total (for both ε and dε/dα). A geometric
    extrapolation of the neglected tail enters ``error_estimate``.

    Raises
    ------
    RangeError
        For α below :data:`ALPHA_MIN`.
    ConvergenceError
        If ``n_cap`` orders do not reach the tolerance.
    """
    params = params or ExactParams()
    _check_alpha(alpha, guard=True)
    pref = -1.0 / (4.0 * math.pi)
    batch = _batch_size(alpha)
    terms = []
    dterms = []
    err_e = 0.0
    err_d = 0.0
    acc = 0.0
    dacc = 0.0
    quiet = 0
    n0 = 0
    done = False
    abs_floor = np.array([params.quad_abs_floor] * 2)
    while not done:
        if n0 > params.n_cap:
            raise ConvergenceError(
                f"n-sum not converged after {params.n_cap} orders at alpha={alpha}")
        orders = np.arange(n0, min(n0 + batch, params.n_cap + 1))
        val, err = _integrate_orders(orders, alpha, params, abs_floor)
        for i, n in enumerate(orders):
            w = 1.0 if n == 0 else 2.0
            c = pref * w * val[i, 0]
            dc = pref * w * val[i, 1]
            terms.append((int(n), c))
            dterms.append(dc)
            acc += c
            dacc += dc
            err_e += w * err[i, 0] / (4.0 * math.pi)
            err_d += w * err[i, 1] / (4.0 * math.pi)
            small = (abs(c) < params.rel_tol * abs(acc)
                     and abs(dc) < params.rel_tol * abs(dacc))
            quiet = quiet + 1 if small else 0
            if quiet >= params.n_stop_rule:
                done = True
                break
        n0 = int(orders[-1]) + 1
        # Later orders only need absolute accuracy relative to the running sums.
        abs_floor = np.maximum(params.quad_abs_floor,
                               0.01 * params.rel_tol * 4.0 * math.pi * np.abs([acc, dacc]))
    # Neglected orders decay geometrically; bound their sum.
    tail_e = _geometric_tail([c for _, c in terms])
    tail_d = _geometric_tail(dterms)
    return EnergyBreakdown(
        epsilon=acc,
        per_n_terms=tuple(terms),
        n_used=len(terms),
        error_estimate=err_e + tail_e,
        method_tag=MethodTag.EXACT,
        alpha=float(alpha),
        depsilon=dacc,
        depsilon_error=err_d + tail_d,
    )


def _geometric_tail(seq):
    if len(seq) < 2:
        return abs(seq[-1]) if seq else 0.0
    last, prev = abs(seq[-1]), abs(seq[-2])
    if prev == 0.0:
        return last
    q = last / prev
    if q >= 1.0:
        # Not yet in the geometric regime; fall back to a generous bound.
        return 10.0 * last
    return last * q / (1.0 - q)


def energy_exact_full(alpha, params=None):
    r"""Full exact energy :math:`\varepsilon_{ex} = \varepsilon_{12} + c\,(1 + \alpha^{-2})`.

    ``c`` is :data:`SINGLE_CYLINDER_CONSTANT`, the self-energy of each
    isolated cylinder in these units.
    """
    inter = energy_exact_12(alpha, params)
    c = SINGLE_CYLINDER_CONSTANT
    return EnergyBreakdown(
        epsilon=inter.epsilon + c * (1.0 + alpha ** -2),
        per_n_terms=inter.per_n_terms,
        n_used=inter.n_used,
        error_estimate=inter.error_estimate,
        method_tag=MethodTag.EXACT,
        alpha=float(alpha),
        depsilon=inter.depsilon - 2.0 * c * alpha ** -3,
        depsilon_error=inter.depsilon_error,
        subtotals={"interaction": inter.epsilon, "self": c * (1.0 + alpha ** -2)},
    )
