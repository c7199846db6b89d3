r"""Proximity (parallel-plate) estimates of the coaxial-cylinder energy.

The plate energy :math:`-\pi^2 A/(720\,\delta^3)` with gap
:math:`\delta = \alpha - 1` is applied with one of three choices for the area
per unit length, giving

.. math::
    \varepsilon_{PFA} = \frac{\pi^3}{360}\,\frac{w(\alpha)}{(\alpha-1)^3},
    \qquad w \in \{1,\ \alpha,\ \sqrt\alpha\}.
"""
import enum
import math

from .errors import DomainError
from .results import MethodTag

PLATE_CONSTANT = math.pi ** 2 / 720.0
PFA_CONSTANT = math.pi ** 3 / 360.0


class PfaVariant(str, enum.Enum):
    INNER_AREA = "InnerArea"
    OUTER_AREA = "OuterArea"
    GEOMETRIC_MEAN = "GeometricMean"

    @property
    def method_tag(self):
        return {PfaVariant.INNER_AREA: MethodTag.PFA_INNER,
                PfaVariant.OUTER_AREA: MethodTag.PFA_OUTER,
                PfaVariant.GEOMETRIC_MEAN: MethodTag.PFA_GEOM}[self]


def _variant(variant):
    return variant if isinstance(variant, PfaVariant) else PfaVariant(variant)


def _check_alpha(alpha):
    if not (math.isfinite(alpha) and alpha > 1):
        raise DomainError(f"alpha must be a finite real > 1, got {alpha!r}")


def parallel_plate_energy(area, gap):
    """Energy of two perfectly conducting plates, ``-(pi^2/720) area/gap^3``."""
    if not (area > 0 and gap > 0):
        raise DomainError("area and gap must be > 0")
    return -PLATE_CONSTANT * area / gap ** 3


def area_weight(alpha, variant):
    """Area factor ``w(alpha)`` relative to the inner surface."""
    variant = _variant(variant)
    if variant is PfaVariant.INNER_AREA:
        return 1.0
    if variant is PfaVariant.OUTER_AREA:
        return float(alpha)
    return math.sqrt(alpha)


def energy_pfa(alpha, variant):
    """Dimensionless proximity energy for the chosen area convention."""
    _check_alpha(alpha)
    variant = _variant(variant)
    if variant is PfaVariant.GEOMETRIC_MEAN:
        # Same expression, evaluated in the same order, as the bouncing-ball sum.
        return math.pi ** 3 / 360.0 * math.sqrt(alpha) / (alpha - 1.0) ** 3
    return PFA_CONSTANT * area_weight(alpha, variant) / (alpha - 1.0) ** 3


def energy_pfa_derivative(alpha, variant):
    r""":math:`d\varepsilon_{PFA}/d\alpha = \varepsilon_{PFA}\,(w'/w - 3/(\alpha-1))`."""
    _check_alpha(alpha)
    variant = _variant(variant)
    eps = energy_pfa(alpha, variant)
    dlogw = {PfaVariant.INNER_AREA: 0.0,
             PfaVariant.OUTER_AREA: 1.0 / alpha,
             PfaVariant.GEOMETRIC_MEAN: 0.5 / alpha}[variant]
    return eps * (dlogw - 3.0 / (alpha - 1.0))
