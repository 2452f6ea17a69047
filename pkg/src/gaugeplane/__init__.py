"""Differential geometry of planar curves in gauge (generalized Minkowski) planes."""

__version__ = "0.1.0"
FORMAT_VERSION = 1

from .arclength import ArcLengthTable, arc_length  # noqa: E402
from .associated import (  # noqa: E402
    AssociatedGauge,
    associated,
    associated_eval,
    birkhoff_orthogonal,
    det_form,
    double_associated_residual,
    polygon_polar,
)
from .curvature import (  # noqa: E402
    CurvatureProfile,
    arc_length_curvature,
    circular_curvature,
    left_normal,
    minkowski_curvature,
    normal_curvature,
    profile,
    right_normal,
    unit_tangent,
)
from .curves import ParamCurve, circle, ellipse, lissajous, segment, trig_polynomial  # noqa: E402
from .errors import (  # noqa: E402
    CapabilityError,
    EvoluteUndefinedError,
    GaugeDomainError,
    GaugeError,
    NotApplicableError,
    NumericalError,
)
from .evolute import (  # noqa: E402
    RoundTripReport,
    SampledCurve,
    check_evolute_of_involute,
    check_involute_of_evolute,
    evolute,
    involute,
    reverse,
)
from .gauges import CustomGauge, EuclideanGauge, Gauge, PolygonGauge, RandersGauge, ValidationReport, validate  # noqa: E402
