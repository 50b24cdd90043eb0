"""Inner and outer bounds for the two-user Gaussian interference channel."""

from .channel import ChannelClass, ChannelError, ChannelParams, DispatchError, classify, gamma, validate
from .extremal import fh, weighted_fh_array
from .geometry import BoundCurve, Direction, PolyRegion, direction_grid, dual_from_support, support
from .hk import PowerSplit, g0_region, g0_support, g0_support_closed_form, g1_support, g2_support, unique_minimizer_check
from .optimizer import InfeasibleError, OptConfig, OptResult, minimize
from .outer import etw_region, kramer_region, mixed_outer_region, sato_region, strong_region, weak_outer_support
from .sumcap import SumCapacityResult, sum_capacity

__version__ = "0.1.0"

__all__ = [
    "BoundCurve",
    "ChannelClass",
    "ChannelError",
    "ChannelParams",
    "Direction",
    "DispatchError",
    "InfeasibleError",
    "OptConfig",
    "OptResult",
    "PolyRegion",
    "PowerSplit",
    "SumCapacityResult",
    "classify",
    "direction_grid",
    "dual_from_support",
    "etw_region",
    "fh",
    "g0_region",
    "g0_support",
    "g0_support_closed_form",
    "g1_support",
    "g2_support",
    "gamma",
    "kramer_region",
    "minimize",
    "mixed_outer_region",
    "sato_region",
    "strong_region",
    "sum_capacity",
    "support",
    "unique_minimizer_check",
    "validate",
    "weak_outer_support",
    "weighted_fh_array",
]
