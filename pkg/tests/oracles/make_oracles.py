"""Regenerate the frozen reference values in ``data.json``.

Every value here comes from a construction that shares no code with the
package: mpmath power series and integral representations for the Bessel
functions, the same constructions in mpmath arithmetic for ln F, plain trapezoid sums over scipy's
scaled Bessel functions for the mode integrals, and a brute-force double sum
for the periodic-orbit energy. Run with ``python3 tests/oracles/make_oracles.py``.
"""
import json
import math
from pathlib import Path

import mpmath as mp
import numpy as np
from scipy import special as sp

mp.mp.dps = 40

BESSEL_POINTS = [
    (0, 1e-6), (0, 0.5), (0, 1.0), (1, 2.5), (2, 30.0), (3, 1e-3), (5, 0.2), (7, 12.0),
    (10, 1.0), (12, 150.0), (20, 45.0), (25, 2.0), (40, 400.0), (60, 0.5), (80, 80.0),
    (120, 30.0), (200, 1000.0), (350, 50.0), (500, 300.0), (800, 5000.0),
]


def _k_integral(n, y, deriv=False):
    # K_n(y) = ∫_0^∞ exp(-y cosh t) cosh(n t) dt; the derivative brings down -cosh t.
    y = mp.mpf(y)
    # Peak of the integrand sits where y sinh t = n.
    t0 = mp.asinh(mp.mpf(n) / y) if n else mp.mpf(0)
    s = mp.mpf(1) / mp.sqrt(y * mp.cosh(t0) + 1)

    def f(t):
        v = mp.exp(-y * mp.cosh(t) + y) * mp.cosh(n * t)
        return -mp.cosh(t) * v if deriv else v
    # Cut where the log-integrand has dropped 150 below its peak (beyond 40 digits);
    # an infinite endpoint makes mpmath build exponents too large for gmpy2.
    peak = -y * (mp.cosh(t0) - 1) + n * t0

    def drop(t):
        return peak - (-y * (mp.cosh(t) - 1) + n * t) - 150
    t_end = t0 + s
    while drop(t_end) < 0:
        t_end = t0 + 2 * (t_end - t0)
    t_end = mp.findroot(drop, (t0, t_end), solver="bisect")
    pts = [0, t0] + [t0 + k * s for k in (2, 5, 10, 20, 40, 80, 160)]
    pts = sorted(set(p for p in pts if p < t_end)) + [t_end]
    return mp.quad(f, pts)  # scaled by e^{y}


def _i_series(n, y, deriv=False):
    # I_n(y) = Σ (y/2)^{2k+n}/(k!(n+k)!), summed until terms stop mattering.
    y = mp.mpf(y)
    h = y / 2
    tot = mp.mpf(0)
    k = 0
    while True:
        if deriv:
            t = (2 * k + n) / y * h ** (2 * k + n) / (mp.factorial(k) * mp.factorial(n + k))
        else:
            t = h ** (2 * k + n) / (mp.factorial(k) * mp.factorial(n + k))
        tot += t
        if k > y and abs(t) < abs(tot) * mp.mpf(10) ** (-35):
            break
        k += 1
    return tot * mp.exp(-y)


def bessel_oracle():
    out = []
    for n, y in BESSEL_POINTS:
        i, di = _i_series(n, y), _i_series(n, y, True)
        k = _k_integral(n, y)
        dk = _k_integral(n, y, True)
        out.append({"n": n, "y": y,
                    "log_i": float(mp.log(i)), "log_k": float(mp.log(k)),
                    "log_di": float(mp.log(di)), "log_mdk": float(mp.log(-dk))})
    return out


def _scaled_ik(n, x):
    # e^{-x} I, e^{-x} I', e^{x} K, e^{x} K' from the series and the integral above.
    return (_i_series(n, x), _k_integral(n, x), _i_series(n, x, True), _k_integral(n, x, True))


def logF_oracle():
    out = []
    for n, y, a in [(0, 0.01, 1.5), (0, 2.0, 2.0), (1, 0.3, 1.1), (3, 5.0, 1.01), (10, 40.0, 1.05),
                    (25, 10.0, 3.0), (50, 120.0, 1.02), (200, 150.0, 1.2), (400, 2000.0, 1.003),
                    (5, 0.001, 10.0)]:
        i1, k1, di1, dk1 = _scaled_ik(n, y)
        i2, k2, di2, dk2 = _scaled_ik(n, a * mp.mpf(y))
        # The scaling exponentials of each ratio combine to exp(-2(a-1)y).
        lead = mp.exp(-2 * (mp.mpf(a) - 1) * y)
        lf = mp.log1p(-i1 * k2 / (i2 * k1) * lead) + mp.log1p(-di1 * dk2 / (di2 * dk1) * lead)
        out.append({"n": n, "y": y, "alpha": a, "logF": float(lf)})
    return out


def _ratios(n, y, a):
    d = a - 1.0
    x = a * y
    lead = np.exp(-2.0 * d * y)
    r_te = sp.ive(n, y) * sp.kve(n, x) / (sp.ive(n, x) * sp.kve(n, y)) * lead
    di_y = sp.ive(n + 1, y) + n / y * sp.ive(n, y)
    di_x = sp.ive(n + 1, x) + n / x * sp.ive(n, x)
    dk_y = sp.kve(abs(n - 1), y) + n / y * sp.kve(n, y)
    dk_x = sp.kve(abs(n - 1), x) + n / x * sp.kve(n, x)
    r_tm = di_y * dk_x / (di_x * dk_y) * lead
    return r_te, r_tm


def trapezoid_integral(n, a, npts=1_000_001):
    """Plain trapezoid sum of y ln F on [y0, 25/(a-1) + 2n].

    For n >= 1 the scaled functions underflow at tiny y; there both ratios
    tend to a^(-2n), so the piece below y0 is y0^2 ln(1 - a^(-2n)).
    """
    y0 = 1e-12
    head = 0.0
    if n >= 1:
        with np.errstate(all="ignore"):
            for y0 in np.geomspace(1e-12, 1.0, 2000):
                if all(np.isfinite(r[0]) and 0 < r[0] < 1 for r in _ratios(n, np.array([y0]), a)):
                    break
        head = y0 * y0 * math.log1p(-a ** (-2.0 * n))
    y = np.linspace(y0, 25.0 / (a - 1.0) + 2.0 * n, npts)
    r_te, r_tm = _ratios(n, y, a)
    g = y * (np.log1p(-r_te) + np.log1p(-r_tm))
    if not np.all(np.isfinite(g)):
        raise RuntimeError(f"oracle overflow at n={n}, alpha={a}")
    return head + float(np.trapezoid(g, y))


def integral_oracle():
    return [{"n": n, "alpha": a, "value": trapezoid_integral(n, a)}
            for n in (0, 1, 3, 10, 30) for a in (1.2, 1.5, 3.0)]


def sem_brute(a, w_max=3000, v_count=200_000):
    """Σ_{w=1}^{w_max} 2 Σ_v N/v^4 by brute force, plus a continuum w-tail.

    The continuum tail uses J = ∫_0^θ N(cos t) t^2 dt from scipy.integrate.quad.
    """
    from scipy import integrate
    th = math.acos(1.0 / a)
    tot = 0.0
    for w in range(1, w_max + 1):
        v0 = math.ceil(w * math.pi / th - 1e-9)
        v = np.arange(v0, v0 + v_count, dtype=float)
        c = np.cos(np.pi * w / v)
        num = np.maximum((a - c) * (a * c - 1.0), 0.0)
        tot += 2.0 * np.sum(np.sqrt(num) / (1.0 + a * a - 2.0 * a * c) ** 2 / v ** 4)

    def nf(t):
        c = math.cos(t)
        return math.sqrt(max((a - c) * (a * c - 1.0), 0.0)) / (1 + a * a - 2 * a * c) ** 2 * t * t
    J, _ = integrate.quad(nf, 0.0, th, epsabs=0, epsrel=1e-12, limit=200)
    tot += 2.0 * J / math.pi ** 3 * float(sp.zeta(3.0, w_max + 1))
    return math.sqrt(a) / (4.0 * math.pi) * tot


def sem_oracle():
    return [{"alpha": a, "wge1": sem_brute(a)} for a in (1.05, 1.5, 2.0, 3.0, 7.3, 10.0)]


if __name__ == "__main__":
    data = {"bessel": bessel_oracle(), "logF": logF_oracle(),
            "integral_n": integral_oracle(), "sem_wge1": sem_oracle()}
    path = Path(__file__).with_name("data.json")
    path.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {path}")
