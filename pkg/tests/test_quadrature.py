import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coaxcasimir.errors import QuadratureError
from coaxcasimir.quadrature import integrate, integrate_batch


def test_polynomial_exact():
    v, e = integrate(lambda x: x ** 10, [0.0, 1.0])
    assert v == pytest.approx(1 / 11, rel=1e-15)


def test_peaked_integrand_with_error_estimate():
    v, e = integrate(lambda x: 1.0 / (1e-4 + x * x), [-1.0, 1.0], rel_tol=1e-12)
    ref = 2.0 * math.atan(1.0 / 1e-2) / 1e-2
    assert abs(v - ref) <= max(e, 1e-12 * ref)


def test_endpoint_singularity_not_sampled():
    # log singularity at 0; nodes never touch panel ends
    v, _ = integrate(lambda x: np.log(x), [0.0, 1.0], rel_tol=1e-10, max_panels=100000)
    assert v == pytest.approx(-1.0, rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(k=st.floats(0.5, 40.0), b=st.floats(0.1, 5.0))
def test_batch_matches_closed_forms(k, b):
    def f(x, task):
        kk = np.where(task == 0, k, 2 * k)
        return np.stack([np.cos(kk * x), x * np.exp(-x)])
    res = integrate_batch(f, [np.array([0.0, b]), np.array([0.0, b / 2, b])], ncomp=2,
                          rel_tol=1e-11, abs_tol=1e-14)
    assert res.value[0, 0] == pytest.approx(math.sin(k * b) / k, abs=1e-11)
    assert res.value[1, 0] == pytest.approx(math.sin(2 * k * b) / (2 * k), abs=1e-11)
    ref = 1 - (1 + b) * math.exp(-b)
    assert res.value[0, 1] == pytest.approx(ref, rel=1e-10)
    assert res.value[1, 1] == pytest.approx(ref, rel=1e-10)


def test_deterministic_results():
    f = lambda x, t: np.sin(50 * x)[None, :] * (1 + t)
    a = integrate_batch(f, [np.linspace(0, 3, 4)] * 3, rel_tol=1e-12)
    b = integrate_batch(f, [np.linspace(0, 3, 4)] * 3, rel_tol=1e-12)
    assert np.array_equal(a.value, b.value)


def test_budget_exhaustion_reports_worst_panel():
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: np.sin(1.0 / x) / x, [0.0, 1.0], rel_tol=1e-14, max_panels=50)
    task, a, b = info.value.worst
    assert task == 0 and 0.0 <= a < b <= 1.0
