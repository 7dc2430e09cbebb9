"""
Seeded random-variate generation with reproducible substreams.

A stream is identified by ``(master_seed, stream_index)`` plus an optional
path of child keys. The generator behind it is a numpy ``Generator``
seeded from ``SeedSequence(master_seed, spawn_key=(stream_index, *path))``,
so any stream can be rebuilt from its identity alone, independently of
the order in which other streams were created or consumed. This is what
makes parallel work reproducible regardless of scheduling.
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np

from .errors import InvalidParameterError

UINT64_MAX = 2 ** 64 - 1

Size = Optional[Union[int, Tuple[int, ...]]]


@dataclass(frozen=True)
class RngStream:
    """
    Identity of a deterministic random stream.

    The numpy generator is created lazily on first use and then advances
    with every draw. A stream must not be shared between concurrent
    tasks; derive one substream per unit of work instead.
    """
    master_seed: int
    stream_index: int = 0
    path: Tuple[int, ...] = ()
    _generator: Optional[np.random.Generator] = field(
        default=None, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        for name, value in (('master_seed', self.master_seed), ('stream_index', self.stream_index)):
            if not 0 <= int(value) <= UINT64_MAX:
                raise InvalidParameterError(f"{name} must be a 64-bit unsigned integer, got {value}")
        if any(k < 0 for k in self.path):
            raise InvalidParameterError(f"substream keys must be non-negative, got {self.path}")

    @property
    def generator(self) -> np.random.Generator:
        """The underlying numpy generator, created on first access."""
        if self._generator is None:
            seq = np.random.SeedSequence(
                int(self.master_seed), spawn_key=(int(self.stream_index),) + tuple(self.path)
            )
            object.__setattr__(self, '_generator', np.random.default_rng(seq))
        return self._generator

    def substream(self, key: int) -> 'RngStream':
        """Derive the child stream with the given key; the parent is not advanced."""
        return RngStream(self.master_seed, self.stream_index, self.path + (int(key),))

    def fresh(self) -> 'RngStream':
        """Same identity, generator reset to its initial state."""
        return RngStream(self.master_seed, self.stream_index, self.path)


@dataclass(frozen=True)
class BivariateData:
    """Paired observations of one group."""
    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float).ravel()
        ys = np.asarray(self.ys, dtype=float).ravel()
        if xs.shape != ys.shape:
            raise InvalidParameterError(f"xs and ys must have the same length, got {len(xs)} and {len(ys)}")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @property
    def n(self) -> int:
        return int(len(self.xs))


def draw_standard_normal(stream: RngStream, size: Size = None):
    """
    Draw N(0, 1) variates.

    Args:
        stream: Stream to draw from (advanced in place)
        size: None for a single float, otherwise the output shape

    Returns:
        A float or an ndarray of the requested shape
    """
    value = stream.generator.standard_normal(size)
    return float(value) if size is None else value


def draw_chi_square(df: int, stream: RngStream, size: Size = None):
    """
    Draw chi-square variates with `df` degrees of freedom.

    Args:
        df: Degrees of freedom, at least 1
        stream: Stream to draw from (advanced in place)
        size: None for a single float, otherwise the output shape

    Returns:
        Strictly positive float or ndarray
    """
    if int(df) != df or df < 1:
        raise InvalidParameterError(f"chi-square degrees of freedom must be a positive integer, got {df}")
    gen = stream.generator
    # chisquare can return exactly 0.0 for df=1 through gamma underflow
    values = np.atleast_1d(np.asarray(gen.chisquare(df, size), dtype=float))
    zero = values <= 0.0
    while np.any(zero):
        values[zero] = gen.chisquare(df, int(zero.sum()))
        zero = values <= 0.0
    return float(values[0]) if size is None else values


def draw_bivariate_normal_sample(n: int, mu1: float, mu2: float, sigma1: float, sigma2: float,
                                 rho: float, stream: RngStream) -> BivariateData:
    """
    Draw n pairs from a bivariate normal distribution.

    Uses the lower-triangular factor of the covariance matrix:
    x = mu1 + sigma1*z1, y = mu2 + sigma2*(rho*z1 + sqrt(1 - rho^2)*z2).

    Args:
        n: Number of pairs, at least 2
        mu1, mu2: Means
        sigma1, sigma2: Standard deviations, positive
        rho: Correlation, strictly inside (-1, 1)
        stream: Stream to draw from

    Returns:
        BivariateData with n pairs
    """
    if n < 2:
        raise InvalidParameterError(f"sample size must be at least 2, got {n}")
    if not (sigma1 > 0 and sigma2 > 0):
        raise InvalidParameterError(f"standard deviations must be positive, got {sigma1}, {sigma2}")
    if not -1.0 < rho < 1.0:
        raise InvalidParameterError(f"rho must lie strictly inside (-1, 1), got {rho}")

    z = stream.generator.standard_normal((2, n))
    xs = mu1 + sigma1 * z[0]
    ys = mu2 + sigma2 * (rho * z[0] + np.sqrt(1.0 - rho * rho) * z[1])
    return BivariateData(xs=xs, ys=ys)
