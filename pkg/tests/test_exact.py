import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coaxcasimir import exact
from coaxcasimir.errors import DomainError, RangeError

PFA = math.pi ** 3 / 360


def test_logF_against_mpmath_oracle(oracle):
    for rec in oracle["logF"]:
        got = exact.log_F12(rec["n"], rec["y"], rec["alpha"])
        assert got == pytest.approx(rec["logF"], rel=1e-12, abs=1e-300), rec


def test_integral_n_against_trapezoid_oracle(oracle):
    for rec in oracle["integral_n"]:
        val, err = exact.integral_n(rec["n"], rec["alpha"])
        assert val == pytest.approx(rec["value"], rel=1e-7), rec
        assert val < 0


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 400), z=st.floats(1e-3, 20.0), alpha=st.floats(1.003, 12.0))
def test_logF_negative_and_derivative_nonnegative(n, z, alpha):
    y = max(n, 1) * z
    lf = exact.log_F12(n, y, alpha)
    assert lf < 0 or lf == 0.0
    assert exact.dlog_F12_dalpha(n, y, alpha) >= 0


@settings(max_examples=40, deadline=None)
@given(n=st.integers(0, 60), y=st.floats(0.01, 50.0), alpha=st.floats(1.05, 6.0))
def test_logF_derivative_matches_difference(n, y, alpha):
    h = 1e-6 * (alpha - 1)
    fd = (exact.log_F12(n, y, alpha + h) - exact.log_F12(n, y, alpha - h)) / (2 * h)
    an = exact.dlog_F12_dalpha(n, y, alpha)
    assert an == pytest.approx(fd, rel=1e-5, abs=1e-12)


def test_logF_vectorised():
    y = np.array([0.1, 1.0, 10.0])
    v = exact.log_F12(3, y, 1.5)
    assert v.shape == (3,)
    assert v[1] == exact.log_F12(3, 1.0, 1.5)


def test_h_uniform_values():
    assert exact.h_uniform(0.0) == 1.0
    assert exact.h_uniform(1.0) == pytest.approx(math.sqrt(2.0), rel=1e-15)
    with pytest.raises(DomainError):
        exact.h_uniform(-1.0)


def test_energy_positive_and_decreasing():
    vals = [exact.energy_exact_12(a).epsilon for a in (1.1, 1.5, 2.0, 3.0, 5.0, 10.0)]
    assert all(v > 0 for v in vals)
    assert all(x > y for x, y in zip(vals, vals[1:]))


def test_frozen_value_alpha_two():
    # Independent check: scipy.quad over unscaled scipy iv/kv, summed over n
    r = exact.energy_exact_12(2.0)
    assert r.epsilon == pytest.approx(0.1124315, rel=1e-6)


def test_breakdown_consistency():
    r = exact.energy_exact_12(1.3)
    assert r.method_tag.value == "Exact"
    assert sum(c for _, c in r.per_n_terms) == pytest.approx(r.epsilon, rel=1e-14)
    assert [n for n, _ in r.per_n_terms] == list(range(r.n_used))
    assert all(c > 0 for _, c in r.per_n_terms)
    assert r.error_estimate < 1e-8 * r.epsilon * 10


def test_error_estimate_brackets_tighter_run():
    loose = exact.energy_exact_12(1.7, exact.ExactParams(rel_tol=1e-6))
    tight = exact.energy_exact_12(1.7, exact.ExactParams(rel_tol=1e-11))
    assert abs(loose.epsilon - tight.epsilon) <= loose.error_estimate + tight.error_estimate
    assert abs(loose.epsilon - tight.epsilon) < 1e-6 * tight.epsilon


def test_pfa_limit():
    for a, tol in ((1.02, 0.03), (1.01, 0.02)):
        v = (a - 1) ** 3 * exact.energy_exact_12(a).epsilon
        assert abs(v / PFA - 1) < tol


def test_analytic_derivative_matches_finite_difference():
    p = exact.ExactParams(rel_tol=1e-11)
    for a in (1.2, 2.5):
        h = 1e-3 * (a - 1)
        f = [exact.energy_exact_12(a + k * h, p).epsilon for k in (-2, -1, 1, 2)]
        fd = (f[0] - 8 * f[1] + 8 * f[2] - f[3]) / (12 * h)
        assert exact.energy_exact_12(a, p).depsilon == pytest.approx(fd, rel=1e-8)


def test_full_energy_adds_self_energies():
    a = 2.5
    inter = exact.energy_exact_12(a)
    full = exact.energy_exact_full(a)
    c = exact.SINGLE_CYLINDER_CONSTANT
    assert full.epsilon == pytest.approx(inter.epsilon + c * (1 + a ** -2), rel=1e-15)
    assert full.depsilon == pytest.approx(inter.depsilon - 2 * c * a ** -3, rel=1e-15)


def test_guard_and_domain():
    with pytest.raises(RangeError):
        exact.energy_exact_12(1.001)
    with pytest.raises(DomainError):
        exact.energy_exact_12(0.9)
    with pytest.raises(DomainError):
        exact.ExactParams(rel_tol=0.5)


def test_smallgap_form_close_to_exact_integrand():
    a = 1.01
    for n in (5, 20, 50):
        for z in (0.1, 1.0, 5.0):
            y = n * z
            assert exact.log_F12(n, y, a) == pytest.approx(exact.smallgap_logF_approx(n, y, a),
                                                           rel=0.05)
