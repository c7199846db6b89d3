import math

import pytest
from hypothesis import given, settings, strategies as st

from coaxcasimir import proximity as px
from coaxcasimir import semiclassical as sc
from coaxcasimir.errors import DomainError


def test_parallel_plates():
    assert px.parallel_plate_energy(720 / math.pi ** 2, 1.0) == pytest.approx(-1.0, rel=1e-15)
    assert px.parallel_plate_energy(1.0, 2.0) * 8 == pytest.approx(px.parallel_plate_energy(1.0, 1.0))
    e = px.parallel_plate_energy(2 * math.pi, 0.1)
    assert e == pytest.approx(-(math.pi ** 3 / 360) * 1e3, rel=1e-12)
    # same number as the inner-area estimate at alpha = 1.1 (sign convention eps = -E)
    assert -e == pytest.approx(px.energy_pfa(1.1, "InnerArea"), rel=1e-12)
    with pytest.raises(DomainError):
        px.parallel_plate_energy(0.0, 1.0)


def test_area_ambiguity_at_1_12():
    a = 1.12
    outer = px.energy_pfa(a, px.PfaVariant.OUTER_AREA)
    inner = px.energy_pfa(a, px.PfaVariant.INNER_AREA)
    assert (outer - inner) / inner == pytest.approx(0.12, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(a=st.floats(1.0 + 1e-9, 1e4))
def test_ordering_and_geometric_identity(a):
    i = px.energy_pfa(a, "InnerArea")
    g = px.energy_pfa(a, "GeometricMean")
    o = px.energy_pfa(a, "OuterArea")
    assert i < g < o or (i == g == o)
    assert g == sc.energy_sem_w0_closed(a)


def test_variants_coincide_near_contact():
    a = 1 + 1e-8
    vals = [px.energy_pfa(a, v) for v in px.PfaVariant]
    assert max(vals) / min(vals) - 1 < 2e-8


@pytest.mark.parametrize("variant", list(px.PfaVariant))
def test_derivative(variant):
    a, h = 1.7, 1e-5
    fd = (px.energy_pfa(a + h, variant) - px.energy_pfa(a - h, variant)) / (2 * h)
    assert px.energy_pfa_derivative(a, variant) == pytest.approx(fd, rel=1e-8)


def test_method_tags():
    assert px.PfaVariant.INNER_AREA.method_tag.value == "PFA_inner"
    assert px.PfaVariant.GEOMETRIC_MEAN.method_tag.value == "PFA_geom"
