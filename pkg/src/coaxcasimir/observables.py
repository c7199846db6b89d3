r"""Pressures, the full-pressure sign change and method comparisons.

With :math:`E = -\hbar c\ell\,\varepsilon(b/a)/a^2` at fixed outer radius,
the dimensionless pressure on the inner cylinder is

.. math::
    \rho(\alpha) = \frac{2\pi a^4}{\hbar c}\Big(-\frac{1}{2\pi a\ell}
        \frac{\partial E}{\partial a}\Big)
        = -\big(2\varepsilon(\alpha) + \alpha\,\varepsilon'(\alpha)\big).
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import enum
import math

from scipy import optimize

from . import exact, proximity, semiclassical
from .errors import CasimirError, DomainError, NoSignChangeError
from .results import EnergyBreakdown, MethodTag

# Self-pressure of the isolated inner cylinder in units of hbar c/(2 pi a^4).
SELF_PRESSURE = 2.0 * exact.SINGLE_CYLINDER_CONSTANT

CROSSOVER_BRACKET = (2.0, 5.0)


class DerivativeMode(str, enum.Enum):
    ANALYTIC = "Analytic"
    CENTRAL_DIFFERENCE = "CentralDifference"


class Method(str, enum.Enum):
    """Energy routes selectable by name (also the CLI spelling)."""

    EXACT = "exact"
    SEM = "sem"
    PFA_INNER = "pfa-inner"
    PFA_OUTER = "pfa-outer"
    PFA_GEOM = "pfa-geom"

    @property
    def tag(self):
        return {Method.EXACT: MethodTag.EXACT,
                Method.SEM: MethodTag.SEMICLASSICAL,
                Method.PFA_INNER: MethodTag.PFA_INNER,
                Method.PFA_OUTER: MethodTag.PFA_OUTER,
                Method.PFA_GEOM: MethodTag.PFA_GEOM}[self]

    @property
    def pfa_variant(self):
        return {Method.PFA_INNER: proximity.PfaVariant.INNER_AREA,
                Method.PFA_OUTER: proximity.PfaVariant.OUTER_AREA,
                Method.PFA_GEOM: proximity.PfaVariant.GEOMETRIC_MEAN}.get(self)


@dataclass(frozen=True)
class PressureResult:
    rho: float
    method_tag: MethodTag
    derivative_mode: DerivativeMode
    error_estimate: float
    alpha: float = math.nan


@dataclass(frozen=True)
class EnergyPoint:
    """ε, dε/dα and their error estimates at one α."""

    epsilon: float
    depsilon: float
    error: float = 0.0
    derror: float = 0.0


def _point(value):
    if isinstance(value, EnergyPoint):
        return value
    if isinstance(value, EnergyBreakdown):
        return EnergyPoint(value.epsilon, value.depsilon, value.error_estimate,
                           value.depsilon_error or 0.0)
    return EnergyPoint(float(value), math.nan)


def method_energy(method, alpha, exact_params=None, semi_params=None):
    """Evaluate ε and dε/dα for a named method at one α."""
    method = Method(method)
    if method is Method.EXACT:
        return _point(exact.energy_exact_12(alpha, exact_params))
    if method is Method.SEM:
        return _point(semiclassical.energy_sem(semiclassical.Geometry(alpha), semi_params))
    v = method.pfa_variant
    return EnergyPoint(proximity.energy_pfa(alpha, v), proximity.energy_pfa_derivative(alpha, v))


def fd_step(alpha):
    """Finite-difference step, scaled with the gap to follow the (α-1)^-3 stiffness."""
    return max(1e-4, 1e-3 * (alpha - 1.0))


def pressure_from_epsilon(epsilon_fn, alpha, mode=DerivativeMode.ANALYTIC,
                          method_tag=None):
    """Dimensionless pressure ``-(2 eps + alpha eps')`` from an energy function.

    Parameters
    ----------
    epsilon_fn : callable
        ``alpha -> eps``. May return a float, an :class:`EnergyPoint` or an
        :class:`~coaxcasimir.results.EnergyBreakdown`. Analytic mode needs the
        derivative, so the latter two are required there.
    mode : DerivativeMode
        ``Analytic`` uses the derivative supplied with ε; ``CentralDifference``
        uses the 5-point stencil with step :func:`fd_step`.

    Raises
    ------
    DomainError
        If analytic mode is requested but ``epsilon_fn`` supplies no derivative.
    CasimirError
        Any failure of the underlying energy evaluations is propagated.
    """
    mode = DerivativeMode(mode)
    centre = _point(epsilon_fn(alpha))
    if isinstance(method_tag, Method):
        method_tag = method_tag.tag
    if mode is DerivativeMode.ANALYTIC:
        if not math.isfinite(centre.depsilon):
            raise DomainError("analytic mode needs an energy function that returns dε/dα")
        d, derr = centre.depsilon, centre.derror
    else:
        h = fd_step(alpha)
        if alpha - 2 * h <= 1.0:
            raise DomainError(f"stencil leaves the domain at alpha={alpha}")
        f = {k: (_point(epsilon_fn(alpha + k * h)) if k else centre) for k in (-2, -1, 1, 2)}
        d = (f[-2].epsilon - 8 * f[-1].epsilon + 8 * f[1].epsilon - f[2].epsilon) / (12 * h)
        d3 = (f[1].epsilon - f[-1].epsilon) / (2 * h)
        noise = max(p.error for p in f.values()) * 18.0 / (12 * h)
        # The 3-point estimate is O(h^2) and bounds the 5-point truncation error.
        derr = abs(d - d3) / 4.0 + noise
    rho = -(2.0 * centre.epsilon + alpha * d)
    return PressureResult(rho=rho, method_tag=method_tag, derivative_mode=mode,
                          error_estimate=2.0 * centre.error + alpha * derr, alpha=float(alpha))


def pressure(method, alpha, mode=DerivativeMode.ANALYTIC, exact_params=None, semi_params=None):
    """Pressure ρ for a named method."""
    method = Method(method)
    return pressure_from_epsilon(
        lambda a: method_energy(method, a, exact_params, semi_params), alpha, mode, method.tag)


def pressure_full_exact(alpha, params=None, mode=DerivativeMode.ANALYTIC):
    """Full pressure on the inner cylinder, ``rho_12 - 0.02712``.

    Only the inner cylinder's own self-energy depends on the inner radius,
    so the self term is the constant ``2 * 0.01356``.
    """
    r = pressure(Method.EXACT, alpha, mode, exact_params=params)
    return PressureResult(rho=r.rho - SELF_PRESSURE, method_tag=MethodTag.EXACT,
                          derivative_mode=r.derivative_mode, error_estimate=r.error_estimate,
                          alpha=r.alpha)


def find_crossover(params=None, method=Method.EXACT, bracket=CROSSOVER_BRACKET, xtol=1e-3,
                   semi_params=None):
    """Ratio α* where the full pressure on the inner cylinder changes sign.

    Bisection on ``bracket`` until the bracket is narrower than ``xtol``.
    With ``method="sem"`` the semiclassical interaction pressure replaces
    the exact one.

    Raises
    ------
    NoSignChangeError
        If the full pressure has the same sign at both ends of ``bracket``.
    """
    method = Method(method)

    def f(a):
        return pressure(method, a, exact_params=params, semi_params=semi_params).rho - SELF_PRESSURE

    lo, hi = bracket
    flo, fhi = f(lo), f(hi)
    if flo * fhi > 0:
        raise NoSignChangeError(
            f"full pressure has the same sign at alpha={lo} ({flo:.3g}) and {hi} ({fhi:.3g})")
    return optimize.bisect(f, lo, hi, xtol=xtol / 2.0)


@dataclass(frozen=True)
class ComparisonRow:
    """All methods evaluated at one α.

    ``deviation_eps`` and ``deviation_rho`` are ``sem/exact - 1``; they are
    ``nan`` when the exact route is unavailable, with the reason in ``error``.
    """

    alpha: float
    epsilon: dict
    rho: dict
    rho_full_exact: float
    deviation_eps: float
    deviation_rho: float
    err_est: float
    wge1_share: float = math.nan
    error: str = None
    extras: dict = field(default_factory=dict)


def compare_row(alpha, exact_params=None, semi_params=None):
    eps, rho = {}, {}
    errors = []
    err_est = 0.0
    for m in Method:
        if m is Method.EXACT and alpha < exact.ALPHA_MIN:
            errors.append(f"exact: alpha below {exact.ALPHA_MIN}")
            continue
        try:
            p = method_energy(m, alpha, exact_params, semi_params)
        except CasimirError as exc:
            errors.append(f"{m.value}: {exc}")
            continue
        eps[m.value] = p.epsilon
        rho[m.value] = -(2.0 * p.epsilon + alpha * p.depsilon)
        if m is Method.EXACT:
            err_est = 2.0 * p.error + alpha * p.derror
    share = math.nan
    if Method.SEM.value in eps:
        sb = semiclassical.energy_sem(alpha, semi_params)
        share = sb.subtotals["wge1"] / sb.epsilon
    ex, sm = Method.EXACT.value, Method.SEM.value
    dev_e = eps[sm] / eps[ex] - 1.0 if ex in eps and sm in eps else math.nan
    dev_r = rho[sm] / rho[ex] - 1.0 if ex in rho and sm in rho else math.nan
    full = rho[ex] - SELF_PRESSURE if ex in rho else math.nan
    return ComparisonRow(alpha=float(alpha), epsilon=eps, rho=rho, rho_full_exact=full,
                         deviation_eps=dev_e, deviation_rho=dev_r, err_est=err_est,
                         wge1_share=share, error="; ".join(errors) or None)


def _row_task(args):
    return compare_row(*args)


def compare_methods(alpha_grid, exact_params=None, semi_params=None, jobs=1):
    """One :class:`ComparisonRow` per α, in ascending α order.

    Rows are independent; ``jobs > 1`` evaluates them in worker processes.
    Failures are recorded per row instead of aborting the sweep.
    """
    alphas = sorted(float(a) for a in alpha_grid)
    if any(a <= 1.0 for a in alphas):
        raise DomainError("every alpha must be > 1")
    tasks = [(a, exact_params, semi_params) for a in alphas]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_row_task, tasks))
    return [_row_task(t) for t in tasks]
