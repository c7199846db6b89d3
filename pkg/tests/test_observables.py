import math

import pytest
import sympy as sp

from coaxcasimir import observables as ob
from coaxcasimir import proximity as px
from coaxcasimir.errors import DomainError, NoSignChangeError
from coaxcasimir.observables import DerivativeMode as DM, Method


def test_pressure_identity_from_dimensional_energy():
    # Re-derive rho = -(2 eps + alpha eps') from E = -eps(b/a)/a^2 symbolically.
    a, b = sp.symbols("a b", positive=True)
    eps = sp.Function("eps")
    E = -eps(b / a) / a ** 2
    p = -sp.diff(E, a) / (2 * sp.pi * a)
    rho = sp.simplify(2 * sp.pi * a ** 4 * p)
    x = sp.Symbol("x", positive=True)
    lhs = rho.subs(b, x * a).doit()
    rhs = -(2 * eps(x) + x * sp.Subs(sp.diff(eps(x), x), x, x).doit())
    assert sp.simplify(lhs.rewrite(sp.Derivative) - rhs) == 0


def test_pressure_identity_against_dimensional_difference():
    # brute-force differentiate the dimensional energy of the inner-area estimate
    def E(a, b):
        return -px.energy_pfa(b / a, "InnerArea") / a ** 2
    a, b, h = 1.0, 1.6, 1e-6
    p = -(E(a + h, b) - E(a - h, b)) / (2 * h) / (2 * math.pi * a)
    rho_bf = 2 * math.pi * a ** 4 * p
    r = ob.pressure(Method.PFA_INNER, b / a)
    # hand-derived: rho = -(2 eps + alpha eps'), eps = c/(x-1)^3
    c, x = math.pi ** 3 / 360, b / a
    hand = -(2 * c / (x - 1) ** 3 - 3 * x * c / (x - 1) ** 4)
    assert r.rho == pytest.approx(hand, rel=1e-12)
    assert rho_bf == pytest.approx(hand, rel=1e-9)


def test_constant_energy():
    r = ob.pressure_from_epsilon(lambda a: 0.7, 2.0, DM.CENTRAL_DIFFERENCE)
    assert r.rho == pytest.approx(-1.4, rel=1e-12)
    r = ob.pressure_from_epsilon(lambda a: ob.EnergyPoint(0.7, 0.0), 2.0, DM.ANALYTIC)
    assert r.rho == -1.4
    with pytest.raises(DomainError):
        ob.pressure_from_epsilon(lambda a: 0.7, 2.0, DM.ANALYTIC)


def test_geom_pfa_pressure_positive_near_contact():
    for a in (1.01, 1.1, 1.5):
        assert ob.pressure(Method.PFA_GEOM, a).rho > 0


@pytest.mark.parametrize("method", [Method.EXACT, Method.PFA_INNER, Method.PFA_OUTER, Method.PFA_GEOM])
@pytest.mark.parametrize("alpha", [1.5, 2.0, 3.0])
def test_modes_agree_within_error(method, alpha):
    a = ob.pressure(method, alpha, DM.ANALYTIC)
    f = ob.pressure(method, alpha, DM.CENTRAL_DIFFERENCE)
    assert abs(a.rho - f.rho) <= max(a.error_estimate + f.error_estimate, 1e-9 * abs(a.rho))


@pytest.mark.parametrize("alpha", [1.5, 3.0])
def test_sem_modes_agree_off_grazing(alpha):
    a = ob.pressure(Method.SEM, alpha, DM.ANALYTIC)
    f = ob.pressure(Method.SEM, alpha, DM.CENTRAL_DIFFERENCE)
    assert abs(a.rho - f.rho) <= a.error_estimate + f.error_estimate + 1e-7 * abs(a.rho)


def test_sem_modes_disagree_at_grazing_ratio():
    # at alpha = 2 the (3, 1) family switches on like sqrt(alpha - 2)
    a = ob.pressure(Method.SEM, 2.0, DM.ANALYTIC)
    f = ob.pressure(Method.SEM, 2.0, DM.CENTRAL_DIFFERENCE)
    assert abs(a.rho / f.rho - 1) > 1e-3


def test_interaction_pressure_positive():
    for a in (1.02, 1.3, 2.0, 4.0, 7.0, 10.0):
        assert ob.pressure(Method.EXACT, a).rho > 0


def test_full_pressure_signs_and_limit():
    assert ob.pressure_full_exact(1.5).rho > 0
    assert ob.pressure_full_exact(10.0).rho < 0
    big = ob.pressure_full_exact(60.0).rho
    assert big == pytest.approx(-0.02712, rel=0.01)


def test_crossover_exact_and_sem():
    a = ob.find_crossover()
    assert 3.05 <= a <= 3.25
    assert ob.pressure_full_exact(a - 0.2).rho > 0 > ob.pressure_full_exact(a + 0.2).rho
    s = ob.find_crossover(method=Method.SEM)
    assert 3.0 <= s <= 3.3


def test_crossover_bad_bracket():
    with pytest.raises(NoSignChangeError):
        ob.find_crossover(bracket=(5.0, 8.0))


def test_compare_methods_rows():
    rows = ob.compare_methods([2.0, 1.2, 1.001])
    assert [r.alpha for r in rows] == [1.001, 1.2, 2.0]
    assert rows[0].error and "exact" in rows[0].error
    assert math.isnan(rows[0].deviation_rho)
    assert rows[0].epsilon["sem"] > 0
    r = rows[2]
    assert r.error is None
    assert set(r.epsilon) == {m.value for m in Method}
    assert r.deviation_eps == pytest.approx(r.epsilon["sem"] / r.epsilon["exact"] - 1)
    assert math.isfinite(r.deviation_rho)


def test_compare_methods_parallel_same_as_serial():
    grid = [1.3, 2.2, 3.1]
    a = ob.compare_methods(grid, jobs=1)
    b = ob.compare_methods(grid, jobs=2)
    assert a == b


def test_deviation_grows_beyond_two():
    rows = ob.compare_methods([2.2, 2.6, 3.0, 3.5, 4.5, 6.0, 8.0])
    devs = [r.deviation_rho for r in rows]
    assert all(x < y for x, y in zip(devs, devs[1:]))
