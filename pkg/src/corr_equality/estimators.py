"""
Point estimation for two independent bivariate normal groups.

Per-group sufficient statistics, the Fisher z-transform, the two
estimators of a common correlation (Pearson's constrained MLE and the
Donner-Rosner pooled z estimator), the constrained variance MLEs and a
log-likelihood used to cross-check the closed-form SLR statistic.

Variances use divisor n throughout (maximum likelihood). The sample
correlation is computed from centred cross-products; whichever divisor is
used for the cross-product cancels in r, so only r and the variances are
exposed.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np
from scipy import optimize, stats

from .errors import (
    DegenerateDataError, DomainError, NonPositiveVarianceError, TooFewObservationsError,
)
from .rngdist import BivariateData

logger = logging.getLogger('corr_equality.estimators')

MIN_GROUP_SIZE = 4
PEARSON_RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class BivariateParams:
    """Full parameter vector of one bivariate normal group (standard deviations, not variances)."""
    mu_x: float
    mu_y: float
    sigma_x: float
    sigma_y: float
    rho: float


@dataclass(frozen=True)
class GroupSummary:
    """
    Sufficient statistics of one group.

    Attributes:
        n: Number of pairs
        mean_x, mean_y: Sample means
        var_x, var_y: Sample variances with divisor n
        r: Sample correlation
    """
    n: int
    mean_x: float
    mean_y: float
    var_x: float
    var_y: float
    r: float

    def __post_init__(self):
        if self.n < MIN_GROUP_SIZE:
            raise TooFewObservationsError(
                f"each group needs at least {MIN_GROUP_SIZE} observations, got n={self.n}"
            )
        if not (self.var_x > 0 and self.var_y > 0):
            raise DegenerateDataError(
                f"sample variances must be positive, got var_x={self.var_x}, var_y={self.var_y}"
            )
        if not abs(self.r) < 1.0:
            raise DegenerateDataError(f"sample correlation must satisfy |r| < 1, got r={self.r}")

    @classmethod
    def from_correlation(cls, n: int, r: float) -> 'GroupSummary':
        """Summary known only through (n, r); location and scale are set to 0 and 1."""
        return cls(n=int(n), mean_x=0.0, mean_y=0.0, var_x=1.0, var_y=1.0, r=float(r))

    def mle_params(self) -> BivariateParams:
        """Unconstrained MLE of this group's parameters."""
        return BivariateParams(self.mean_x, self.mean_y, math.sqrt(self.var_x), math.sqrt(self.var_y), self.r)


class Provenance(str, Enum):
    PEARSON_MLE = 'pearson_mle'
    DONNER_ROSNER = 'donner_rosner'


@dataclass(frozen=True)
class ConstrainedFit:
    """Parameter estimates under the null hypothesis of a common correlation."""
    rho_common: float
    provenance: Provenance
    sigma2_x: Tuple[float, float]
    sigma2_y: Tuple[float, float]
    mu_x: Tuple[float, float]
    mu_y: Tuple[float, float]

    def params(self, group: int) -> BivariateParams:
        """Constrained parameter vector of group 0 or 1."""
        return BivariateParams(
            self.mu_x[group], self.mu_y[group],
            math.sqrt(self.sigma2_x[group]), math.sqrt(self.sigma2_y[group]),
            self.rho_common,
        )


def summarize(data: BivariateData) -> GroupSummary:
    """
    Compute the sufficient statistics of one group.

    Args:
        data: Paired observations

    Returns:
        GroupSummary with divisor-n variances and the sample correlation
    """
    n = data.n
    if n < MIN_GROUP_SIZE:
        raise TooFewObservationsError(f"each group needs at least {MIN_GROUP_SIZE} observations, got n={n}")

    mean_x = float(np.mean(data.xs))
    mean_y = float(np.mean(data.ys))
    dx = data.xs - mean_x
    dy = data.ys - mean_y
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx <= 0.0 or syy <= 0.0:
        raise DegenerateDataError("a coordinate is constant; the sample correlation is undefined")
    r = float(np.dot(dx, dy)) / math.sqrt(sxx * syy)
    if not abs(r) < 1.0:
        raise DegenerateDataError(f"observations are perfectly collinear (r={r})")
    return GroupSummary(n=n, mean_x=mean_x, mean_y=mean_y, var_x=sxx / n, var_y=syy / n, r=r)


def fisher_z(r: float) -> float:
    """Fisher z-transform, atanh(r)."""
    if not abs(r) < 1.0:
        raise DomainError(f"fisher_z requires |r| < 1, got {r}")
    return math.atanh(r)


def inv_fisher_z(z: float) -> float:
    """Inverse Fisher z-transform, tanh(z)."""
    if not math.isfinite(z):
        raise DomainError(f"inv_fisher_z requires a finite argument, got {z}")
    return math.tanh(z)


def pooled_fisher_z_rho(n1, r1, n2, r2):
    """
    Donner-Rosner estimate tanh of the (n-3)-weighted mean of atanh(r).

    Works elementwise on arrays; used by both the observed statistic and
    the bootstrap replicates.
    """
    w1 = np.asarray(n1, dtype=float) - 3.0
    w2 = np.asarray(n2, dtype=float) - 3.0
    zbar = (w1 * np.arctanh(r1) + w2 * np.arctanh(r2)) / (w1 + w2)
    return np.tanh(zbar)


def donner_rosner_rf(g1: GroupSummary, g2: GroupSummary) -> float:
    """
    Pooled Fisher-z estimate R_F of the common correlation.

    Args:
        g1, g2: Group summaries

    Returns:
        R_F, strictly inside (-1, 1)
    """
    for g in (g1, g2):
        if g.n < MIN_GROUP_SIZE:
            raise TooFewObservationsError(f"R_F weights need n >= {MIN_GROUP_SIZE}, got n={g.n}")
    return float(pooled_fisher_z_rho(g1.n, g1.r, g2.n, g2.r))


def pearson_equation_residual(n1, r1, n2, r2, rho):
    """Left-hand side of Pearson's estimating equation for the common correlation."""
    return n1 * (r1 - rho) / (1.0 - rho * r1) + n2 * (r2 - rho) / (1.0 - rho * r2)


def _bisect_pearson(n1: float, r1: float, n2: float, r2: float) -> float:
    lo, hi = min(r1, r2), max(r1, r2)
    if lo == hi:
        return lo
    return optimize.brentq(
        lambda rho: pearson_equation_residual(n1, r1, n2, r2, rho),
        lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps,
    )


def solve_pearson_equation(n1, r1, n2, r2):
    """
    Root of Pearson's equation lying between r1 and r2.

    The equation is rewritten as the quadratic
    (n1*r2 + n2*r1) rho^2 - (n1 + n2)(1 + r1*r2) rho + (n1*r1 + n2*r2) = 0.
    The linear coefficient is always negative, so the small root c/q with
    q = (|b| + sqrt(b^2 - 4ac)) / 2 is the one inside the bracket; it also
    reduces to the linear solution when the leading coefficient vanishes.
    Entries whose residual is not below 1e-12 are re-solved by bracketed
    root finding on the original equation.

    Args:
        n1, r1, n2, r2: Scalars or broadcastable arrays

    Returns:
        The common-correlation MLE, same shape as the broadcast inputs
    """
    n1, r1, n2, r2 = np.broadcast_arrays(
        np.asarray(n1, dtype=float), np.asarray(r1, dtype=float),
        np.asarray(n2, dtype=float), np.asarray(r2, dtype=float),
    )
    a = n1 * r2 + n2 * r1
    b = -(n1 + n2) * (1.0 + r1 * r2)
    c = n1 * r1 + n2 * r2
    disc = np.maximum(b * b - 4.0 * a * c, 0.0)
    q = 0.5 * (-b + np.sqrt(disc))
    lo = np.minimum(r1, r2)
    hi = np.maximum(r1, r2)
    rho = np.clip(c / q, lo, hi)

    residual = np.abs(pearson_equation_residual(n1, r1, n2, r2, rho))
    bad = ~(residual < PEARSON_RESIDUAL_TOL)
    if np.any(bad):
        rho = np.array(rho, dtype=float, copy=True)
        idx = np.flatnonzero(bad)
        flat = rho.reshape(-1)
        for i in idx:
            flat[i] = _bisect_pearson(n1.flat[i], r1.flat[i], n2.flat[i], r2.flat[i])
        logger.debug(f"Pearson equation: {len(idx)} root(s) refined by bracketing")
    return rho


def pearson_common_rho(g1: GroupSummary, g2: GroupSummary) -> float:
    """
    Constrained MLE of the common correlation (Pearson's estimating equation).

    Args:
        g1, g2: Group summaries

    Returns:
        rho_tilde in [min(r1, r2), max(r1, r2)]
    """
    return float(solve_pearson_equation(g1.n, g1.r, g2.n, g2.r))


def constrained_mles(g1: GroupSummary, g2: GroupSummary, rho_common: float,
                     provenance: Provenance = Provenance.PEARSON_MLE) -> ConstrainedFit:
    """
    Constrained MLEs of means and variances given a common correlation.

    sigma~^2 = s^2 (1 - rho*r) / (1 - rho^2) per coordinate and group;
    means stay at the sample means.

    Args:
        g1, g2: Group summaries
        rho_common: Common correlation estimate
        provenance: Which estimator produced rho_common

    Returns:
        ConstrainedFit
    """
    if not abs(rho_common) < 1.0:
        raise DomainError(f"common correlation must satisfy |rho| < 1, got {rho_common}")
    sx, sy = [], []
    for g in (g1, g2):
        shrink = 1.0 - rho_common * g.r
        if shrink <= 0.0:
            raise NonPositiveVarianceError(
                f"rho_common * r = {rho_common * g.r} >= 1 gives a non-positive constrained variance"
            )
        factor = shrink / (1.0 - rho_common * rho_common)
        sx.append(g.var_x * factor)
        sy.append(g.var_y * factor)
    return ConstrainedFit(
        rho_common=float(rho_common),
        provenance=Provenance(provenance),
        sigma2_x=(sx[0], sx[1]),
        sigma2_y=(sy[0], sy[1]),
        mu_x=(g1.mean_x, g2.mean_x),
        mu_y=(g1.mean_y, g2.mean_y),
    )


def bivariate_loglik(source: Union[GroupSummary, BivariateData], params: BivariateParams) -> float:
    """
    Standard bivariate normal log-likelihood of one group.

    A GroupSummary is evaluated through its sufficient statistics; raw data
    is evaluated observation by observation. Both include the same
    -n*log(2*pi) constant.

    Args:
        source: Group summary or raw paired data
        params: Parameter vector at which to evaluate

    Returns:
        Log-likelihood value
    """
    if not (params.sigma_x > 0 and params.sigma_y > 0):
        raise DomainError(f"standard deviations must be positive, got {params.sigma_x}, {params.sigma_y}")
    if not abs(params.rho) < 1.0:
        raise DomainError(f"correlation must satisfy |rho| < 1, got {params.rho}")

    if isinstance(source, BivariateData):
        cov_xy = params.rho * params.sigma_x * params.sigma_y
        cov = [[params.sigma_x ** 2, cov_xy], [cov_xy, params.sigma_y ** 2]]
        points = np.column_stack([source.xs, source.ys])
        return float(np.sum(stats.multivariate_normal(mean=[params.mu_x, params.mu_y], cov=cov).logpdf(points)))

    n = source.n
    dx = source.mean_x - params.mu_x
    dy = source.mean_y - params.mu_y
    sxx = n * (source.var_x + dx * dx)
    syy = n * (source.var_y + dy * dy)
    sxy = n * (source.r * math.sqrt(source.var_x * source.var_y) + dx * dy)
    one_minus = 1.0 - params.rho * params.rho
    quad = (sxx / params.sigma_x ** 2 + syy / params.sigma_y ** 2
            - 2.0 * params.rho * sxy / (params.sigma_x * params.sigma_y))
    return (-n * math.log(2.0 * math.pi) - n * math.log(params.sigma_x * params.sigma_y)
            - 0.5 * n * math.log(one_minus) - quad / (2.0 * one_minus))


def log_likelihood_ratio(g1: GroupSummary, g2: GroupSummary, fit: ConstrainedFit) -> float:
    """2 * (loglik at the unconstrained MLE - loglik at the constrained fit), summed over groups."""
    full = bivariate_loglik(g1, g1.mle_params()) + bivariate_loglik(g2, g2.mle_params())
    constrained = bivariate_loglik(g1, fit.params(0)) + bivariate_loglik(g2, fit.params(1))
    return 2.0 * (full - constrained)
