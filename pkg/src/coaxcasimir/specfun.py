r"""Exponentially scaled modified Bessel functions of integer order.

All values are returned scaled,

.. math::
    \tilde I_n(y) = e^{-y} I_n(y), \qquad \tilde K_n(y) = e^{y} K_n(y),

together with the equally scaled derivatives. Internally the engine works
with the natural logarithms of the scaled quantities so that ratios such as
:math:`I_n(y)/I_n(\alpha y)` can be formed for any order without overflow.

Two evaluation paths are used:

* the AMOS routines behind :func:`scipy.special.ive` / :func:`scipy.special.kve`
  for moderate orders, with derivatives taken from the stable forms
  :math:`I'_n = I_{n+1} + (n/y) I_n` and :math:`K'_n = -K_{n-1} - (n/y) K_n`;
* the uniform (Debye) large-order expansion, DLMF 10.41(ii), for
  ``n > N_SWITCH`` and wherever the first path under- or overflows.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math

import numpy as np
from scipy import special

from .errors import DomainError, RangeError

N_MAX = 100_000
Y_MIN = 1e-12
Y_MAX = 1e6

# Orders above this use the uniform expansion unconditionally.
N_SWITCH = 300
# Below this order the uniform expansion loses accuracy beyond 1e-13.
N_DEBYE_MIN = 15
# Direct values outside [_TINY, _HUGE] are treated as under/overflowed.
_TINY = 1e-290
_HUGE = 1e290

_DEBYE_KMAX = 24
_DEBYE_TARGET = 1e-17


# --------------------------------------------------------------------------
# Debye polynomials
# --------------------------------------------------------------------------

def _poly_deriv(c):
    return [i * c[i] for i in range(1, len(c))] or [Fraction(0)]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def _poly_integrate(c):
    return [Fraction(0)] + [x / (i + 1) for i, x in enumerate(c)]


@lru_cache(maxsize=None)
def debye_polynomials(kmax=_DEBYE_KMAX):
    r"""Exact coefficients of the Debye polynomials :math:`U_k(p)`, :math:`V_k(p)`.

    Generated from the recursion

    .. math::
        U_{k+1}(p) = \tfrac12 p^2 (1-p^2) U_k'(p)
                     + \tfrac18 \int_0^p (1 - 5t^2) U_k(t)\,dt,

        V_k(p) = U_k(p) + p(p^2-1)\left[\tfrac12 U_{k-1}(p) + p U_{k-1}'(p)\right].

    Returns
    -------
    tuple of (list, list)
        Ascending-power coefficient lists (as :class:`fractions.Fraction`)
        for ``U_0..U_kmax`` and ``V_0..V_kmax``.
    """
    half_p2_1mp2 = [Fraction(0), Fraction(0), Fraction(1, 2), Fraction(0), Fraction(-1, 2)]
    one_m5t2 = [Fraction(1, 8), Fraction(0), Fraction(-5, 8)]
    U = [[Fraction(1)]]
    for _ in range(kmax):
        u = U[-1]
        U.append(_poly_add(_poly_mul(half_p2_1mp2, _poly_deriv(u)),
                           _poly_integrate(_poly_mul(one_m5t2, u))))
    V = [[Fraction(1)]]
    p_p2m1 = [Fraction(0), Fraction(-1), Fraction(0), Fraction(1)]
    for k in range(1, kmax + 1):
        prev = U[k - 1]
        inner = _poly_add([x / 2 for x in prev], [Fraction(0)] + _poly_deriv(prev))
        V.append(_poly_add(U[k], _poly_mul(p_p2m1, inner)))
    return tuple(U), tuple(V)


@lru_cache(maxsize=None)
def _debye_float_tables():
    U, V = debye_polynomials()
    # U_k and V_k are p**k times a polynomial in p**2; store those even parts.
    def even_part(c, k):
        c = c + [Fraction(0)] * (3 * k + 1 - len(c))
        return np.array([float(c[k + 2 * j]) for j in range(k + 1)])
    u_even = [even_part(list(U[k]), k) for k in range(len(U))]
    v_even = [even_part(list(V[k]), k) for k in range(len(V))]
    grid = np.linspace(0.0, 1.0, 2001)
    bound = []
    for k in range(len(U)):
        q = grid ** 2
        bu = np.abs(np.polyval(u_even[k][::-1], q) * grid ** k).max()
        bv = np.abs(np.polyval(v_even[k][::-1], q) * grid ** k).max()
        bound.append(max(bu, bv))
    return u_even, v_even, np.array(bound)


def debye_terms_needed(n_min):
    """Number of Debye terms so the first omitted one is below ~1e-17 at ``n_min``."""
    _, _, bound = _debye_float_tables()
    for k in range(1, len(bound)):
        if bound[k] / float(n_min) ** k < _DEBYE_TARGET:
            return k
    return len(bound)


def _debye_series(n, p, kterms):
    """Return the four Debye sums (I, K, I', -K') for arrays ``n`` and ``p``."""
    u_even, v_even, _ = _debye_float_tables()
    q = p * p
    inv_n = 1.0 / n
    su = np.ones_like(p)
    sk = np.ones_like(p)
    sv = np.ones_like(p)
    sw = np.ones_like(p)
    scale = np.ones_like(p)
    for k in range(1, kterms):
        scale = scale * p * inv_n
        uk = np.polyval(u_even[k][::-1], q) * scale
        vk = np.polyval(v_even[k][::-1], q) * scale
        sign = -1.0 if k % 2 else 1.0
        su += uk
        sk += sign * uk
        sv += vk
        sw += sign * vk
    return su, sk, sv, sw


def _log_scaled_debye(n, y):
    """Debye path split as ``(E, ri, rk, rdi, rmdk)``; log Ĩ = E + ri, log K̃ = -E + rk."""
    n = np.asarray(n, dtype=float)
    y = np.asarray(y, dtype=float)
    z = y / n
    s = np.sqrt(1.0 + z * z)
    p = 1.0 / s
    # n*eta - y with eta = s - asinh(1/z); written without cancellation.
    expo = n / (s + z) - n * np.arcsinh(1.0 / z)
    kterms = debye_terms_needed(max(float(np.min(n)), 1.0)) if n.size else 1
    su, sk, sv, sw = _debye_series(n, p, kterms)
    half_log_s = 0.5 * np.log(s)
    log_z = np.log(z)
    ri = -0.5 * np.log(2 * np.pi * n) - half_log_s + np.log(su)
    rk = 0.5 * np.log(np.pi / (2 * n)) - half_log_s + np.log(sk)
    rdi = -0.5 * np.log(2 * np.pi * n) + half_log_s - log_z + np.log(sv)
    rmdk = 0.5 * np.log(np.pi / (2 * n)) + half_log_s - log_z + np.log(sw)
    return expo, ri, rk, rdi, rmdk


def _log_scaled_direct(n, y):
    n = np.asarray(n, dtype=float)
    y = np.asarray(y, dtype=float)
    i0 = special.ive(n, y)
    i1 = special.ive(n + 1, y)
    km = special.kve(np.abs(n - 1), y)
    k0 = special.kve(n, y)
    ratio = n / y
    with np.errstate(over="ignore", invalid="ignore"):
        di = i1 + ratio * i0
        mdk = km + ratio * k0
    ok = ((i0 > _TINY) & (i1 > _TINY) & (k0 < _HUGE) & (km < _HUGE)
          & np.isfinite(di) & np.isfinite(mdk))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (np.log(i0), np.log(k0), np.log(di), np.log(mdk))
    return out, ok


def check_envelope(n, y):
    """Validate orders and arguments against the documented envelope."""
    n = np.asarray(n)
    y = np.asarray(y, dtype=float)
    if np.any(~np.isfinite(y)) or np.any(y <= 0):
        raise DomainError("modified Bessel functions require y > 0")
    if np.any(n < 0) or np.any(n != np.floor(n)):
        raise DomainError("order must be a non-negative integer")
    if np.any(n > N_MAX) or np.any(y < Y_MIN) or np.any(y > Y_MAX):
        raise RangeError(
            f"(n, y) outside supported envelope n <= {N_MAX}, {Y_MIN} <= y <= {Y_MAX}")


def log_ik_parts(n, y, check=True):
    r"""Vectorised logs of the four scaled quantities, split off a common exponent.

    Parameters
    ----------
    n : array_like of int
        Non-negative integer orders.
    y : array_like of float
        Positive arguments; broadcast against ``n``.
    check : bool
        Validate the (n, y) envelope first.

    Returns
    -------
    tuple of ndarray
        ``(E, ri, rk, rdi, rmdk)`` with

        .. math::
            \log\tilde I_n = E + r_i,\quad \log\tilde K_n = -E + r_k,\quad
            \log\tilde I'_n = E + r_{di},\quad \log(-\tilde K'_n) = -E + r_{mdk}.

        ``E`` is zero on the library path and the Debye exponent
        :math:`n\eta(y/n) - y` otherwise. Keeping it apart makes products
        such as :math:`\tilde I_n \tilde K_n` exact in the exponent even when
        :math:`|E|` is of order :math:`10^6`.
    """
    n, y = np.broadcast_arrays(np.asarray(n), np.asarray(y, dtype=float))
    if check:
        check_envelope(n, y)
    shape = n.shape
    n = n.ravel().astype(float)
    y = y.ravel()
    out = [np.zeros_like(y) for _ in range(5)]

    direct = n <= N_SWITCH
    if np.any(direct):
        vals, ok = _log_scaled_direct(n[direct], y[direct])
        idx = np.flatnonzero(direct)
        good = idx[ok]
        for o, v in zip(out[1:], vals):
            o[good] = v[ok]
        direct[idx[~ok]] = False
    rest = ~direct
    if np.any(rest):
        if np.any(n[rest] < N_DEBYE_MIN):
            raise RangeError("direct evaluation over/underflowed at small order")
        vals = _log_scaled_debye(n[rest], y[rest])
        for o, v in zip(out, vals):
            o[rest] = v
    return tuple(o.reshape(shape) for o in out)


def log_ik_scaled(n, y, check=True):
    """Logs ``(log Ĩ_n, log K̃_n, log Ĩ'_n, log(-K̃'_n))``, broadcast over ``n`` and ``y``."""
    e, ri, rk, rdi, rmdk = log_ik_parts(n, y, check)
    return e + ri, rk - e, e + rdi, rmdk - e


def log_ik_scaled_debye(n, y):
    """Uniform-expansion path only (exposed for overlap validation)."""
    n, y = np.broadcast_arrays(np.asarray(n, dtype=float), np.asarray(y, dtype=float))
    if np.any(n < N_DEBYE_MIN):
        raise RangeError(f"uniform expansion needs n >= {N_DEBYE_MIN}")
    e, ri, rk, rdi, rmdk = _log_scaled_debye(n, y)
    return e + ri, rk - e, e + rdi, rmdk - e


def log_ik_scaled_direct(n, y):
    """Library path only; entries that under/overflow come back as NaN."""
    n, y = np.broadcast_arrays(np.asarray(n, dtype=float), np.asarray(y, dtype=float))
    vals, ok = _log_scaled_direct(n, y)
    return tuple(np.where(ok, v, np.nan) for v in vals)


@dataclass(frozen=True)
class ScaledBesselSet:
    """Scaled :math:`I_n, K_n` and derivatives at one (order, argument).

    Values are held as logarithms split off a common exponent (see
    :func:`log_ik_parts`) so that sets far outside floating-point range
    (large order, tiny argument) stay usable. The scaled values are exposed
    as properties and underflow to 0 or overflow to inf in that regime.
    """

    order: int
    argument: float
    exponent: float
    rest_i: float
    rest_k: float
    rest_di: float
    rest_mdk: float

    @property
    def log_i(self):
        return self.exponent + self.rest_i

    @property
    def log_k(self):
        return self.rest_k - self.exponent

    @property
    def log_di(self):
        return self.exponent + self.rest_di

    @property
    def log_mdk(self):
        return self.rest_mdk - self.exponent

    @property
    def i_scaled(self):
        return _safe_exp(self.log_i)

    @property
    def k_scaled(self):
        return _safe_exp(self.log_k)

    @property
    def di_scaled(self):
        return _safe_exp(self.log_di)

    @property
    def dk_scaled(self):
        return -_safe_exp(self.log_mdk)

    def wronskian_residual(self):
        r"""Return :math:`|y(\tilde I\tilde K' - \tilde I'\tilde K) + 1|`.

        The common exponent cancels identically and is never added in.
        """
        ly = math.log(self.argument)
        a = ly + self.rest_i + self.rest_mdk
        b = ly + self.rest_di + self.rest_k
        return abs(math.expm1(np.logaddexp(a, b)))


def _safe_exp(x):
    return math.exp(x) if x < 709.0 else math.inf


def bessel_ik_scaled(n, y):
    """Scaled modified Bessel functions and derivatives at integer order ``n``.

    Raises
    ------
    DomainError
        If ``y <= 0`` or ``n`` is not a non-negative integer.
    RangeError
        If (n, y) is outside ``n <= 1e5``, ``1e-12 <= y <= 1e6``.
    """
    if isinstance(n, bool) or not (isinstance(n, (int, np.integer)) and n >= 0):
        raise DomainError("order must be a non-negative integer")
    parts = log_ik_parts(n, float(y))
    return ScaledBesselSet(int(n), float(y), *(float(p) for p in parts))


def bessel_log_ik(n, y):
    """Return ``(log I_n(y), log K_n(y))`` of the unscaled functions."""
    li, lk, _, _ = log_ik_scaled(n, y)
    y = np.asarray(y, dtype=float)
    out = (li + y, lk - y)
    if np.ndim(out[0]) == 0:
        return float(out[0]), float(out[1])
    return out
