r"""Periodic-orbit sums for the region between two coaxial cylinders.

Lengths are in units of the inner radius (``a = 1``, ``b = alpha``) and
:math:`\hbar = c = \ell = 1` throughout. Orbits live in the annulus cross
section and are labelled by ``(v, w)``: ``v`` reflections on the outer
circle and winding number ``w``.

* Type I: polygons that miss the inner disk, only present for ``w >= 1``.
* Type II: orbits that bounce off the inner disk; ``w = 0`` is the radial
  bouncing ball and its repetitions.
* Inner polygons: the Type I orbits of the inner disk on its own.

The electromagnetic energy only receives Type II contributions,

.. math::
    \varepsilon^{sem} = \frac{\sqrt\alpha}{4\pi}\sum_{w\ge0}\sum_{v\ge\hat v(w)}
        f_{vw}\,\frac{N(\alpha, v, w)}{v^4},

because the Dirichlet and Neumann Type I terms cancel pairwise.
"""
from dataclasses import dataclass
import enum
import math
import warnings

import numpy as np
from scipy import integrate, special

from .errors import ConvergenceError, DomainError
from .quadrature import integrate_batch
from .results import EnergyBreakdown, MethodTag

ZETA3 = float(special.zeta(3.0, 1.0))
SMALLGAP_WINDOW = 1.2

# Explicitly summed repetitions per winding family before the integral tail.
_V_EXPLICIT = 256
# Families averaged to estimate the error of the continuum w-tail.
_TAIL_PROBE = 10

_GL_X, _GL_W = np.polynomial.legendre.leggauss(64)


class OrbitKind(str, enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    INNER_POLYGON = "InnerPolygon"


class BoundaryCondition(str, enum.Enum):
    DIRICHLET = "D"
    NEUMANN = "N"

    @property
    def sign(self):
        return 1 if self is BoundaryCondition.DIRICHLET else -1


@dataclass(frozen=True)
class Geometry:
    """Ratio ``alpha = b/a`` of outer to inner radius."""

    alpha: float

    def __post_init__(self):
        if not (isinstance(self.alpha, (int, float, np.floating)) and math.isfinite(self.alpha)
                and self.alpha > 1):
            raise DomainError(f"alpha must be a finite real > 1, got {self.alpha!r}")


@dataclass(frozen=True)
class SemiParams:
    w_max: int = 200
    tail_rel_tol: float = 1e-10
    v_hard_cap: int = 10 ** 7

    def __post_init__(self):
        if self.w_max < 1:
            raise DomainError("w_max must be a positive integer")
        if not (0 < self.tail_rel_tol < 1):
            raise DomainError("tail_rel_tol must lie in (0, 1)")
        if self.v_hard_cap < 1:
            raise DomainError("v_hard_cap must be a positive integer")


@dataclass(frozen=True)
class OrbitFamily:
    kind: OrbitKind
    v: int
    w: int
    length: float
    amplitude: float
    weight: float


def _alpha(geometry_or_alpha):
    if isinstance(geometry_or_alpha, Geometry):
        return geometry_or_alpha.alpha
    return Geometry(geometry_or_alpha).alpha


def _as_kind(kind):
    return kind if isinstance(kind, OrbitKind) else OrbitKind(kind)


def _as_bc(bc):
    return bc if isinstance(bc, BoundaryCondition) else BoundaryCondition(bc)


def grazing_ratio(w, alpha):
    """Threshold ``w*pi/arccos(1/alpha)``; families need ``v`` at or above it."""
    return w * math.pi / math.acos(1.0 / alpha)


def v_hat(w, alpha, kind=OrbitKind.TYPE_I):
    """Smallest admitted number of outer reflections for winding number ``w``.

    Admission is ``cos(pi w / v) >= 1/alpha``. When the threshold is an exact
    integer the grazing family is returned for Type I and skipped (``+1``)
    for Type II, whose amplitude vanishes there. ``w = 0`` starts at 1 and
    inner polygons at ``2 w``.
    """
    kind = _as_kind(kind)
    if w < 0 or int(w) != w:
        raise DomainError("w must be a non-negative integer")
    if kind is OrbitKind.INNER_POLYGON:
        if w < 1:
            raise DomainError("inner polygons need w >= 1")
        return 2 * w
    alpha = _alpha(alpha)
    if w == 0:
        if kind is OrbitKind.TYPE_I:
            raise DomainError("type I orbits need w >= 1")
        return 1
    x = grazing_ratio(w, alpha)
    k = round(x)
    if abs(x - k) <= 1e-12 * x:
        return k + 1 if kind is OrbitKind.TYPE_II else k
    return math.ceil(x)


def _check_family(kind, v, w, alpha):
    if v < 1 or w < 0:
        raise DomainError(f"inadmissible family (v={v}, w={w})")
    if kind is OrbitKind.INNER_POLYGON:
        if w < 1 or v < 2 * w:
            raise DomainError(f"inner polygon needs w >= 1 and v >= 2w, got (v={v}, w={w})")
        return
    if kind is OrbitKind.TYPE_I and w == 0:
        raise DomainError("type I orbits need w >= 1")
    if w >= 1 and v < v_hat(w, alpha, OrbitKind.TYPE_I):
        raise DomainError(f"(v={v}, w={w}) violates cos(pi w/v) >= 1/alpha at alpha={alpha}")


def orbit_length(kind, v, w, alpha):
    """Length of the ``(v, w)`` orbit in units of the inner radius."""
    kind = _as_kind(kind)
    alpha = _alpha(alpha) if kind is not OrbitKind.INNER_POLYGON else alpha
    _check_family(kind, v, w, alpha)
    t = math.pi * w / v
    if kind is OrbitKind.TYPE_I:
        return 2.0 * v * alpha * math.sin(t)
    if kind is OrbitKind.INNER_POLYGON:
        return 2.0 * v * math.sin(t)
    if w == 0:
        return 2.0 * v * (alpha - 1.0)
    return 2.0 * v * math.sqrt(alpha * alpha + 1.0 - 2.0 * alpha * math.cos(t))


_GRAZE_TOL = 16 * np.finfo(float).eps


def _graze_gap(alpha, c):
    """alpha*c - 1, set to exactly 0 within rounding of grazing incidence."""
    g = alpha * np.asarray(c, dtype=float) - 1.0
    if np.any(g < -1e-12):
        raise DomainError("family lies beyond grazing incidence")
    return np.where(g <= _GRAZE_TOL * alpha, 0.0, g)


def amplitude_A(alpha, v, w):
    r"""Type II amplitude :math:`\sqrt{(1 - c/\alpha)(c/\alpha - \alpha^{-2})}`, :math:`c = \cos(\pi w/v)`."""
    c = np.cos(np.pi * np.asarray(w) / np.asarray(v))
    r = 1.0 / alpha
    out = np.sqrt((1.0 - c * r) * _graze_gap(alpha, c) * r * r)
    return float(out) if out.ndim == 0 else out


def _N_of_c(alpha, c):
    num = (alpha - c) * _graze_gap(alpha, c)
    return np.sqrt(num) / (1.0 + alpha * alpha - 2.0 * alpha * c) ** 2


def _dlogN_dalpha(alpha, c):
    """∂/∂α log(√α N) at fixed c; infinite exactly at grazing."""
    with np.errstate(divide="ignore"):
        return (0.5 / alpha + 0.5 / (alpha - c) + 0.5 * c / (alpha * c - 1.0)
                - 4.0 * (alpha - c) / (1.0 + alpha * alpha - 2.0 * alpha * c))


def amplitude_N(alpha, v, w):
    """Reduced amplitude ``N(alpha, v, w)`` entering the energy sum.

    Exactly ``(alpha - 1)**-3`` for ``w = 0`` and 0 at grazing incidence.
    """
    alpha = _alpha(alpha)
    if np.ndim(v) == 0 and np.ndim(w) == 0:
        if v < 1 or w < 0:
            raise DomainError(f"inadmissible family (v={v}, w={w})")
        if w == 0:
            return 1.0 / (alpha - 1.0) ** 3
    c = np.cos(np.pi * np.asarray(w, dtype=float) / np.asarray(v, dtype=float))
    out = _N_of_c(alpha, c)
    return float(out) if out.ndim == 0 else out


def orbit_family(kind, v, w, alpha):
    """Build the :class:`OrbitFamily` record with its energy-sum weight."""
    kind = _as_kind(kind)
    length = orbit_length(kind, v, w, alpha)
    if kind is OrbitKind.TYPE_II:
        return OrbitFamily(kind, v, w, length, amplitude_A(alpha, v, w), 1.0 if w == 0 else 2.0)
    weight = 1.0 if (kind is OrbitKind.INNER_POLYGON and 2 * w == v) else 2.0
    return OrbitFamily(kind, v, w, length, length / v ** 2, weight)


# --------------------------------------------------------------------------
# Casimir sum
# --------------------------------------------------------------------------

def energy_sem_w0_closed(alpha):
    r"""Bouncing-ball subtotal :math:`(\pi^3/360)\sqrt\alpha/(\alpha-1)^3`."""
    alpha = _alpha(alpha)
    return math.pi ** 3 / 360.0 * math.sqrt(alpha) / (alpha - 1.0) ** 3


def energy_sem_w0_closed_derivative(alpha):
    alpha = _alpha(alpha)
    return energy_sem_w0_closed(alpha) * (0.5 / alpha - 3.0 / (alpha - 1.0))


def energy_sem_wge1_smallgap(alpha):
    r"""Small-gap limit :math:`\zeta(3)/(4\pi^3\alpha)` of the ``w >= 1`` subtotal.

    Evaluated for any α > 1 but only meaningful for α ≤ 1.2; a warning is
    issued outside that window. Note that the continuum limit of the
    ``w >= 1`` part of :func:`energy_sem` is ``zeta(3) sqrt(alpha)/(8 pi^3)``,
    half of this value, approached with an ``O(sqrt(alpha - 1))`` correction.
    """
    alpha = _alpha(alpha)
    if alpha > SMALLGAP_WINDOW:
        warnings.warn(f"small-gap form used at alpha={alpha} > {SMALLGAP_WINDOW}; "
                      "value is only approximate", stacklevel=2)
    return ZETA3 / (4.0 * math.pi ** 3 * alpha)


def _w0_family(alpha):
    """Sum over v of N(alpha, v, 0)/v^4 and its α-derivative (weight 1 each)."""
    v = np.arange(1, _V_EXPLICIT + 1, dtype=float)
    head = np.sum(v ** -4.0)
    s = (head + float(special.zeta(4.0, _V_EXPLICIT + 1))) / (alpha - 1.0) ** 3
    return s, -3.0 * s / (alpha - 1.0)


def _tail_integral(alpha, w, t1):
    """∫_0^{t1} N(cos t) t^2 dt and its α-derivative by Gauss-Legendre."""
    t = 0.5 * t1 * (_GL_X + 1.0)
    wt = 0.5 * t1 * _GL_W
    c = np.cos(t)
    n = _N_of_c(alpha, c)
    g = n * t * t
    dg = g * (_dlogN_dalpha(alpha, c) - 0.5 / alpha)
    return float(wt @ g), float(wt @ dg)


def _continuum_J(alpha):
    """J(α) = ∫_0^θ N(cos t) t² dt, θ = arccos(1/α), with the √ endpoint removed."""
    def J(a):
        th = math.acos(1.0 / a)
        u = 0.5 * (_GL_X + 1.0)
        t = th * (1.0 - u * u)
        jac = 2.0 * th * u * 0.5 * _GL_W
        return float(jac @ (_N_of_c(a, np.cos(t)) * t * t))
    h = 1e-6 * (alpha - 1.0)
    return J(alpha), (J(alpha + h) - J(alpha - h)) / (2.0 * h)


def _family_sum(alpha, w, v_cap):
    """Σ_{v ≥ v̂} N/v⁴ for one winding family, with integral tail; plus α-derivative."""
    v0 = v_hat(w, alpha, OrbitKind.TYPE_II)
    count = min(_V_EXPLICIT, v_cap)
    v = np.arange(v0, v0 + count, dtype=float)
    c = np.cos(np.pi * w / v)
    n = _N_of_c(alpha, c)
    terms = n / v ** 4
    with np.errstate(invalid="ignore"):
        dterms = np.where(n > 0, terms * (_dlogN_dalpha(alpha, c) - 0.5 / alpha), 0.0)
    head = float(np.sum(terms))
    dhead = float(np.sum(dterms))
    # Σ_{v > V} f(v) ≈ ∫_{V+1/2}^∞ f dv = (πw)^{-3} ∫_0^{πw/(V+1/2)} N(cos t) t² dt
    t1 = math.pi * w / (v[-1] + 0.5)
    ti, dti = _tail_integral(alpha, w, t1)
    scale = (math.pi * w) ** -3
    tail = scale * ti
    # Midpoint-rule error of the tail: about f'(V)/24 with f ~ N v^-4.
    vt = v[-1] + 0.5
    tail_err = abs(_N_of_c(alpha, math.cos(math.pi * w / vt))) / (6.0 * vt ** 5)
    return head + tail, dhead + scale * dti, tail_err


def energy_sem(geometry, params=None):
    """Semiclassical interaction energy ε^sem with its breakdown.

    The ``w = 0`` family carries unit weight for every repetition (which is
    what reproduces the closed form), families with ``w >= 1`` weight 2.
    Families up to the first ``W <= w_max`` are summed explicitly; the
    remaining winding numbers are added through their large-``w`` continuum
    form ``J(α)/(π w)^3``. ``per_n_terms`` lists ``(w, subtotal)`` for the
    explicit families followed by ``(W + 1, tail)`` for all ``w > W``.

    Raises
    ------
    ConvergenceError
        If the estimated truncation error stays above
        ``tail_rel_tol * epsilon`` up to ``w_max``.
    """
    params = params or SemiParams()
    alpha = _alpha(geometry)
    pref = math.sqrt(alpha) / (4.0 * math.pi)
    dpref = pref * 0.5 / alpha

    s0, ds0 = _w0_family(alpha)
    eps0 = pref * s0
    deps0 = dpref * s0 + pref * ds0
    terms = [(0, eps0)]
    dsum = deps0
    err = 0.0
    J, dJ = _continuum_J(alpha)
    ratios = []
    acc = eps0
    wsum = 0.0
    w_used = 0
    converged = False
    for w in range(1, params.w_max + 1):
        s, ds, terr = _family_sum(alpha, w, params.v_hard_cap)
        e = 2.0 * pref * s
        terms.append((w, e))
        acc += e
        wsum += e
        dsum += 2.0 * (dpref * s + pref * ds)
        err += 2.0 * pref * terr
        cont = J / (math.pi * w) ** 3
        ratios.append(abs(s / cont - 1.0) if cont > 0 else 0.0)
        w_used = w
        if w >= 2 * _TAIL_PROBE:
            tail = 2.0 * pref * J / math.pi ** 3 * float(special.zeta(3.0, w + 1))
            tail_err = tail * max(ratios[-_TAIL_PROBE:])
            if tail_err + err <= params.tail_rel_tol * acc:
                converged = True
                break
    tail = 2.0 * pref * J / math.pi ** 3 * float(special.zeta(3.0, w_used + 1))
    tail_err = tail * max(ratios[-_TAIL_PROBE:])
    if not converged and tail_err + err > params.tail_rel_tol * acc:
        raise ConvergenceError(
            f"semiclassical sum: truncation error {tail_err + err:.3g} exceeds "
            f"{params.tail_rel_tol:g} * eps after w_max={params.w_max}")
    z3 = float(special.zeta(3.0, w_used + 1))
    dtail = 2.0 * (dpref * J + pref * dJ) / math.pi ** 3 * z3
    terms.append((w_used + 1, tail))
    eps = acc + tail
    wge1 = wsum + tail
    return EnergyBreakdown(
        epsilon=eps,
        per_n_terms=tuple(terms),
        n_used=w_used,
        error_estimate=err + tail_err,
        method_tag=MethodTag.SEMICLASSICAL,
        alpha=float(alpha),
        depsilon=dsum + dtail,
        depsilon_error=abs(dtail) * max(ratios[-_TAIL_PROBE:]) + 1e-12 * abs(dsum),
        subtotals={"w0": eps0, "wge1": wge1, "w_tail": tail},
    )


# --------------------------------------------------------------------------
# Oscillating densities
# --------------------------------------------------------------------------

def _families(kind, alpha, w_max, v_max):
    """(v, w) arrays of admitted families with w <= w_max and v <= v_max."""
    kind = _as_kind(kind)
    vs, ws = [], []
    w_start = 0 if kind is OrbitKind.TYPE_II else 1
    for w in range(w_start, w_max + 1):
        v0 = v_hat(w, alpha, kind)
        if v0 > v_max:
            break
        v = np.arange(v0, v_max + 1)
        vs.append(v)
        ws.append(np.full_like(v, w))
    if not vs:
        return np.array([], dtype=int), np.array([], dtype=int)
    return np.concatenate(vs), np.concatenate(ws)


def _lengths(kind, v, w, alpha):
    t = np.pi * w / v
    if kind is OrbitKind.TYPE_I:
        return 2.0 * v * alpha * np.sin(t)
    if kind is OrbitKind.INNER_POLYGON:
        return 2.0 * v * np.sin(t)
    return 2.0 * v * np.sqrt(alpha * alpha + 1.0 - 2.0 * alpha * np.cos(t))


def _density_2d_terms(kind, q, alpha, v, w, bc):
    """Per-family 2D densities at wavenumbers ``q`` (shape (families, len(q)))."""
    q = np.atleast_1d(np.asarray(q, dtype=float))[None, :]
    L = _lengths(kind, v, w, alpha)[:, None]
    if kind is OrbitKind.TYPE_II:
        f = np.where(w == 0, 1.0, 2.0)[:, None]
        A = np.atleast_1d(amplitude_A(alpha, v, w))[:, None]
        return f * 2.0 * math.sqrt(2.0 / math.pi) * alpha ** 2 * np.sqrt(q / L) * A \
            * np.sin(q * L + math.pi / 4.0)
    s = bc.sign
    vv = v[:, None]
    return math.sqrt(2.0 / math.pi) * np.sqrt(q) * L ** 1.5 / vv ** 2 \
        * np.cos(q * L + s * vv * math.pi / 2.0 + math.pi / 4.0)


def _density_3d_terms(kind, k, alpha, v, w, bc):
    L = _lengths(kind, v, w, alpha)
    if kind is OrbitKind.TYPE_II:
        f = np.where(w == 0, 1.0, 2.0)
        A = np.atleast_1d(amplitude_A(alpha, v, w))
        return f * 2.0 / math.pi * alpha ** 2 * A / L * k * np.sin(k * L)
    return L / v ** 2 / math.pi * k * np.cos(k * L + bc.sign * v * math.pi / 2.0)


def _density_3d_envelope(kind, k, alpha, v, w):
    L = _lengths(kind, v, w, alpha)
    if kind is OrbitKind.TYPE_II:
        f = np.where(w == 0, 1.0, 2.0)
        return f * 2.0 / math.pi * alpha ** 2 * np.atleast_1d(amplitude_A(alpha, v, w)) / L * k
    return L / v ** 2 / math.pi * k


def rho_osc_annulus_2d(kind, k, geometry, params=None, bc=BoundaryCondition.DIRICHLET,
                       v_max=64):
    r"""Oscillating photon density of the annulus cross section (per unit wavenumber).

    Obtained from the massive-particle trace formula by the photon
    substitution. Type I terms carry the boundary-condition phase
    :math:`\pm v\pi/2`; Type II terms do not depend on ``bc``. The sum is
    truncated at ``params.w_max`` and ``v_max``; no smoothing is applied.
    """
    params = params or SemiParams()
    kind = _as_kind(kind)
    if kind is OrbitKind.INNER_POLYGON:
        raise DomainError("use TypeI/TypeII for the annulus")
    if k <= 0:
        raise DomainError("k must be > 0")
    alpha = _alpha(geometry)
    v, w = _families(kind, alpha, params.w_max, v_max)
    if v.size == 0:
        return 0.0
    return float(np.sum(_density_2d_terms(kind, k, alpha, v, w, _as_bc(bc))))


@dataclass(frozen=True)
class TransformCheck:
    """Closed-form 3D density against the numerical 2D→3D transform."""

    closed_form: float
    transformed: float
    envelope: float
    max_family_deviation: float

    @property
    def relative_deviation(self):
        return abs(self.closed_form - self.transformed) / self.envelope


def rho_osc_12_3d(kind, k, geometry, params=None, bc=BoundaryCondition.DIRICHLET,
                  v_max=64, validate=False, families=None):
    r"""Oscillating photon density between the cylinders per unit length.

    With ``validate=True`` each family's 2D density is also pushed through

    .. math::
        \rho_{12}(k) = \frac{1}{\pi}\int_0^{\pi/2} k\,\rho_{\odot}(k\cos\theta)\,d\theta

    (the axial-momentum integral after ``k_z = k sin θ``) by adaptive
    quadrature, and a :class:`TransformCheck` is returned. Deviations are
    measured against the envelope ``Σ |amplitude|`` of the oscillating sum;
    the closed forms are leading-order stationary-phase results, so the
    deviation shrinks like ``1/(k L)``.

    ``families`` optionally restricts the sum to explicit ``(v, w)`` pairs.
    """
    params = params or SemiParams()
    kind = _as_kind(kind)
    if kind is OrbitKind.INNER_POLYGON:
        raise DomainError("use TypeI/TypeII for the annulus")
    if k <= 0:
        raise DomainError("k must be > 0")
    alpha = _alpha(geometry)
    bc = _as_bc(bc)
    if families is None:
        v, w = _families(kind, alpha, params.w_max, v_max)
    else:
        for fv, fw in families:
            _check_family(kind, fv, fw, alpha)
        v = np.array([f[0] for f in families])
        w = np.array([f[1] for f in families])
    if v.size == 0:
        closed = 0.0
    else:
        closed = float(np.sum(_density_3d_terms(kind, k, alpha, v, w, bc)))
    if not validate:
        return closed

    def f(theta, task):
        q = k * np.cos(theta)
        out = np.empty_like(theta)
        for i in np.unique(task):
            m = task == i
            out[m] = k * _density_2d_terms(kind, q[m], alpha, v[i:i + 1], w[i:i + 1], bc)[0]
        return out[None, :] / math.pi

    edges = [np.linspace(0.0, math.pi / 2, 9) for _ in range(v.size)]
    env = _density_3d_envelope(kind, k, alpha, v, w)
    res = integrate_batch(f, edges, ncomp=1, rel_tol=1e-9,
                          abs_tol=1e-10 * float(np.max(env)), max_panels=500_000)
    per = res.value[:, 0]
    closed_terms = _density_3d_terms(kind, k, alpha, v, w, bc)
    return TransformCheck(
        closed_form=closed,
        transformed=float(np.sum(per)),
        envelope=float(np.sum(env)),
        max_family_deviation=float(np.max(np.abs(closed_terms - per) / env)),
    )


def density_3d_family_terms(kind, k, geometry, params=None, bc=BoundaryCondition.DIRICHLET,
                            v_max=64):
    """Per-family closed-form 3D terms as ``(v, w, length, term, envelope)`` arrays."""
    params = params or SemiParams()
    kind = _as_kind(kind)
    alpha = _alpha(geometry)
    v, w = _families(kind, alpha, params.w_max, v_max)
    bc = _as_bc(bc)
    return (v, w, _lengths(kind, v, w, alpha), _density_3d_terms(kind, k, alpha, v, w, bc),
            _density_3d_envelope(kind, k, alpha, v, w))


# --------------------------------------------------------------------------
# Isolated inner cylinder and Weyl terms
# --------------------------------------------------------------------------

_SIN_HALF_PI = (0, 1, 0, -1)


def regulated_moment(L, v, sign):
    r""":math:`\lim_{\lambda\to0}\int_0^\infty e^{-\lambda E}E^2\sin(EL \pm v\pi/2 + \pi/2)\,dE`.

    Equals :math:`\pm 2\sin(\pi v/2)/L^3`; exactly zero for even ``v``.
    """
    if L <= 0:
        raise DomainError("L must be > 0")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    return sign * 2.0 * _SIN_HALF_PI[int(v) % 4] / L ** 3


def regulated_moment_numeric(L, v, sign, lam):
    """The cut-off integral at finite ``lam`` by Fourier-weighted quadrature."""
    phi = sign * v * math.pi / 2.0 + math.pi / 2.0

    def f(E):
        return E * E * math.exp(-lam * E)
    s, _ = integrate.quad(f, 0.0, np.inf, weight="sin", wvar=L, limlst=200)
    c, _ = integrate.quad(f, 0.0, np.inf, weight="cos", wvar=L, limlst=200)
    return s * math.cos(phi) + c * math.sin(phi)


def regulated_moment_extrapolated(L, v, sign, lam=None):
    """Numerical λ → 0 limit: three cut-offs and Richardson extrapolation."""
    lam = 1e-3 * L if lam is None else lam
    r1, r2, r3 = (regulated_moment_numeric(L, v, sign, lam / s) for s in (1, 2, 4))
    # Remove the O(λ) and O(λ²) terms.
    a = 2 * r2 - r1
    b = 2 * r3 - r2
    return (4 * b - a) / 3


def inner_cylinder_terms(v_max=50, w_max=10):
    """Dirichlet and Neumann energies of every inner-polygon family.

    Returns a list of ``(v, w, eps_D, eps_N)`` in the dimensionless sign
    convention ``eps = -E``. Each pair is an exact negative of the other.
    """
    out = []
    for w in range(1, w_max + 1):
        for v in range(2 * w, v_max + 1):
            L = 2.0 * v * math.sin(math.pi * w / v)
            g = 1.0 if v == 2 * w and w == 1 else 2.0
            # E_bc = 1/2 ∫ E ρ_bc dE with ρ_bc = g/(2π) L/v² E sin(...)
            coef = -0.5 * g / (2.0 * math.pi) * L / v ** 2
            out.append((v, w, coef * regulated_moment(L, v, +1), coef * regulated_moment(L, v, -1)))
    return out


def inner_cylinder_energy_sem(v_max=50, w_max=10):
    """Semiclassical energy of the isolated inner cylinder: exactly zero.

    Summed family by family as Dirichlet plus Neumann, which cancel exactly.
    """
    total = 0.0
    for _, _, d, n in inner_cylinder_terms(v_max, w_max):
        total += d + n
    return total


def weyl_smooth_density(volume, surface, E, bc):
    r"""Leading Weyl density :math:`E^2 V/(2\pi^2) \mp E S/(8\pi)` (``-`` Dirichlet)."""
    if volume < 0 or surface < 0:
        raise DomainError("volume and surface must be >= 0")
    if E <= 0:
        raise DomainError("E must be > 0")
    bc = _as_bc(bc)
    return E * E * volume / (2.0 * math.pi ** 2) - bc.sign * E * surface / (8.0 * math.pi)
