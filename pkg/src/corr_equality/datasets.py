"""
Embedded data: the brain blood-flow laterality correlations and the
published reference grids used for side-by-side comparison.

Only summaries (n, r) are published for the real data, so they are
stored as such.
"""
from dataclasses import dataclass
from typing import Dict, Tuple

from .estimators import GroupSummary

Pair = Tuple[int, int]


@dataclass(frozen=True)
class RegionComparison:
    """One male-vs-female correlation comparison."""
    region: str
    n_male: int
    r_male: float
    n_female: int
    r_female: float

    def summaries(self) -> Tuple[GroupSummary, GroupSummary]:
        return (GroupSummary.from_correlation(self.n_male, self.r_male),
                GroupSummary.from_correlation(self.n_female, self.r_female))


# Correlation of verbal memory score with blood-flow laterality, 14 men and 14 women.
BLOOD_FLOW_LATERALITY: Tuple[RegionComparison, ...] = (
    RegionComparison('temporal', 14, -0.340, 14, 0.812),
    RegionComparison('subcortical', 14, 0.641, 14, 0.491),
    RegionComparison('frontal', 14, -0.032, 14, -0.212),
)

# Published p-values for the comparisons above.
BLOOD_FLOW_P_VALUES: Dict[str, Dict[str, float]] = {
    'mslr': {'temporal': 0.0008, 'subcortical': 0.5978, 'frontal': 0.6677},
    'gv': {'temporal': 0.0008, 'subcortical': 0.5948, 'frontal': 0.6682},
    'fisher_z': {'temporal': 0.0004, 'subcortical': 0.6018, 'frontal': 0.6673},
}

SIZE_RHO_GRID: Tuple[float, ...] = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
SIZE_PAIRS: Tuple[Pair, ...] = ((5, 5), (5, 10), (10, 10), (5, 15), (5, 25))

POWER_RHO1 = 0.05
POWER_RHO2_POSITIVE: Tuple[float, ...] = (0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95)
POWER_RHO2_NEGATIVE: Tuple[float, ...] = tuple(-v for v in POWER_RHO2_POSITIVE)
POWER_PAIRS: Tuple[Pair, ...] = ((5, 5), (5, 10), (10, 10), (15, 10), (5, 15), (5, 25), (20, 20), (25, 25))

# Actual sizes at alpha = 0.05, indexed by SIZE_RHO_GRID.
PUBLISHED_SIZES: Dict[Pair, Dict[str, Tuple[float, ...]]] = {
    (5, 5): {
        'mslr': (0.052, 0.053, 0.052, 0.051, 0.053, 0.051, 0.054, 0.049, 0.054, 0.053),
        'fisher_z': (0.046, 0.043, 0.045, 0.043, 0.041, 0.047, 0.045, 0.040, 0.038, 0.041),
        'gv': (0.052, 0.051, 0.052, 0.051, 0.050, 0.051, 0.051, 0.053, 0.051, 0.051),
    },
    (5, 10): {
        'mslr': (0.050, 0.050, 0.051, 0.048, 0.049, 0.049, 0.050, 0.052, 0.049, 0.055),
        'fisher_z': (0.049, 0.047, 0.045, 0.045, 0.043, 0.045, 0.046, 0.046, 0.045, 0.044),
        'gv': (0.049, 0.048, 0.050, 0.051, 0.051, 0.049, 0.049, 0.050, 0.051, 0.048),
    },
    (10, 10): {
        'mslr': (0.051, 0.055, 0.049, 0.050, 0.048, 0.049, 0.048, 0.051, 0.049, 0.051),
        'fisher_z': (0.048, 0.050, 0.050, 0.048, 0.049, 0.049, 0.049, 0.052, 0.049, 0.045),
        'gv': (0.053, 0.054, 0.051, 0.051, 0.052, 0.051, 0.051, 0.051, 0.051, 0.053),
    },
    (5, 15): {
        'mslr': (0.056, 0.050, 0.051, 0.050, 0.050, 0.050, 0.048, 0.050, 0.050, 0.052),
        'fisher_z': (0.045, 0.046, 0.051, 0.046, 0.047, 0.044, 0.042, 0.044, 0.046, 0.044),
        'gv': (0.047, 0.044, 0.047, 0.045, 0.044, 0.047, 0.048, 0.045, 0.047, 0.045),
    },
    (5, 25): {
        'mslr': (0.049, 0.053, 0.048, 0.048, 0.051, 0.048, 0.049, 0.050, 0.052, 0.049),
        'fisher_z': (0.052, 0.047, 0.046, 0.050, 0.045, 0.045, 0.045, 0.045, 0.044, 0.046),
        'gv': (0.040, 0.036, 0.038, 0.033, 0.036, 0.037, 0.035, 0.036, 0.037, 0.039),
    },
}

# Empirical powers with rho1 = 0.05, indexed by POWER_RHO2_POSITIVE.
PUBLISHED_POWER_POSITIVE: Dict[Pair, Dict[str, Tuple[float, ...]]] = {
    (5, 5): {
        'mslr': (0.052, 0.059, 0.069, 0.076, 0.087, 0.102, 0.113, 0.131, 0.143),
        'fisher_z': (0.049, 0.051, 0.056, 0.066, 0.071, 0.092, 0.098, 0.119, 0.129),
        'gv': (0.058, 0.061, 0.070, 0.080, 0.091, 0.121, 0.125, 0.134, 0.155),
    },
    (5, 10): {
        'mslr': (0.055, 0.064, 0.071, 0.085, 0.105, 0.131, 0.151, 0.175, 0.208),
        'fisher_z': (0.046, 0.056, 0.064, 0.067, 0.082, 0.101, 0.124, 0.142, 0.168),
        'gv': (0.056, 0.057, 0.063, 0.074, 0.085, 0.108, 0.121, 0.139, 0.171),
    },
    (10, 10): {
        'mslr': (0.057, 0.067, 0.088, 0.097, 0.151, 0.201, 0.245, 0.290, 0.356),
        'fisher_z': (0.051, 0.068, 0.091, 0.117, 0.153, 0.208, 0.240, 0.297, 0.349),
        'gv': (0.057, 0.066, 0.094, 0.122, 0.153, 0.204, 0.252, 0.294, 0.355),
    },
    (15, 10): {
        'mslr': (0.063, 0.082, 0.111, 0.164, 0.226, 0.290, 0.372, 0.448, 0.523),
        'fisher_z': (0.048, 0.072, 0.094, 0.133, 0.181, 0.235, 0.291, 0.348, 0.414),
        'gv': (0.055, 0.070, 0.095, 0.135, 0.185, 0.236, 0.291, 0.363, 0.410),
    },
    (5, 15): {
        'mslr': (0.061, 0.063, 0.088, 0.099, 0.115, 0.136, 0.192, 0.214, 0.253),
        'fisher_z': (0.046, 0.052, 0.067, 0.080, 0.100, 0.119, 0.139, 0.167, 0.193),
        'gv': (0.044, 0.048, 0.057, 0.070, 0.079, 0.099, 0.123, 0.152, 0.173),
    },
    (5, 25): {
        'mslr': (0.069, 0.076, 0.089, 0.108, 0.123, 0.171, 0.189, 0.235, 0.264),
        'fisher_z': (0.052, 0.059, 0.067, 0.084, 0.102, 0.122, 0.140, 0.162, 0.196),
        'gv': (0.043, 0.042, 0.054, 0.064, 0.073, 0.091, 0.114, 0.133, 0.158),
    },
    (20, 20): {
        'mslr': (0.073, 0.111, 0.172, 0.251, 0.377, 0.456, 0.528, 0.652, 0.709),
        'fisher_z': (0.074, 0.105, 0.178, 0.252, 0.351, 0.448, 0.540, 0.638, 0.717),
        'gv': (0.077, 0.112, 0.177, 0.255, 0.355, 0.435, 0.546, 0.643, 0.710),
    },
    (25, 25): {
        'mslr': (0.078, 0.123, 0.201, 0.324, 0.442, 0.549, 0.638, 0.776, 0.823),
        'fisher_z': (0.080, 0.135, 0.214, 0.313, 0.422, 0.541, 0.650, 0.741, 0.814),
        'gv': (0.079, 0.133, 0.212, 0.317, 0.425, 0.538, 0.651, 0.739, 0.813),
    },
}

# Empirical powers with rho1 = 0.05, indexed by POWER_RHO2_NEGATIVE.
# The (5, 15) and (5, 25) Fisher z rows match as published except at rho2 = -0.25.
PUBLISHED_POWER_NEGATIVE: Dict[Pair, Dict[str, Tuple[float, ...]]] = {
    (5, 5): {
        'mslr': (0.054, 0.066, 0.074, 0.085, 0.106, 0.121, 0.144, 0.161, 0.179),
        'fisher_z': (0.049, 0.058, 0.060, 0.075, 0.090, 0.105, 0.120, 0.142, 0.158),
        'gv': (0.063, 0.071, 0.080, 0.090, 0.109, 0.119, 0.143, 0.166, 0.192),
    },
    (5, 10): {
        'mslr': (0.058, 0.072, 0.089, 0.114, 0.133, 0.166, 0.194, 0.216, 0.253),
        'fisher_z': (0.051, 0.068, 0.074, 0.092, 0.108, 0.130, 0.154, 0.174, 0.202),
        'gv': (0.056, 0.061, 0.074, 0.092, 0.107, 0.126, 0.150, 0.181, 0.199),
    },
    (10, 10): {
        'mslr': (0.066, 0.084, 0.116, 0.164, 0.205, 0.252, 0.308, 0.368, 0.430),
        'fisher_z': (0.068, 0.090, 0.117, 0.162, 0.206, 0.248, 0.304, 0.364, 0.425),
        'gv': (0.071, 0.089, 0.120, 0.164, 0.208, 0.257, 0.312, 0.368, 0.424),
    },
    (15, 10): {
        'mslr': (0.072, 0.113, 0.121, 0.192, 0.247, 0.278, 0.385, 0.445, 0.505),
        'fisher_z': (0.069, 0.099, 0.121, 0.188, 0.247, 0.304, 0.372, 0.440, 0.511),
        'gv': (0.071, 0.100, 0.141, 0.186, 0.252, 0.299, 0.368, 0.442, 0.512),
    },
    (5, 15): {
        'mslr': (0.058, 0.064, 0.080, 0.101, 0.116, 0.136, 0.179, 0.188, 0.254),
        'fisher_z': (0.053, 0.058, 0.068, 0.078, 0.101, 0.122, 0.143, 0.166, 0.193),
        'gv': (0.048, 0.055, 0.061, 0.077, 0.086, 0.100, 0.127, 0.147, 0.176),
    },
    (5, 25): {
        'mslr': (0.061, 0.071, 0.083, 0.092, 0.118, 0.158, 0.196, 0.240, 0.268),
        'fisher_z': (0.053, 0.057, 0.068, 0.078, 0.101, 0.122, 0.143, 0.166, 0.193),
        'gv': (0.038, 0.044, 0.055, 0.065, 0.081, 0.098, 0.113, 0.135, 0.164),
    },
    (20, 20): {
        'mslr': (0.063, 0.103, 0.183, 0.246, 0.366, 0.417, 0.565, 0.660, 0.709),
        'fisher_z': (0.075, 0.119, 0.179, 0.249, 0.349, 0.439, 0.546, 0.630, 0.716),
        'gv': (0.071, 0.114, 0.176, 0.257, 0.346, 0.448, 0.552, 0.638, 0.717),
    },
    (25, 25): {
        'mslr': (0.064, 0.145, 0.207, 0.319, 0.418, 0.569, 0.620, 0.734, 0.819),
        'fisher_z': (0.077, 0.137, 0.211, 0.319, 0.426, 0.541, 0.651, 0.750, 0.813),
        'gv': (0.079, 0.133, 0.212, 0.314, 0.432, 0.542, 0.651, 0.735, 0.821),
    },
}
