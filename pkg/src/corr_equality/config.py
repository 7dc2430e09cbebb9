"""
Run configuration: defaults, study scale presets and JSON overrides.
"""
import json
import logging
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Mapping, Tuple

from .errors import ConfigError

logger = logging.getLogger('corr_equality.config')

METHODS: Tuple[str, ...] = ('mslr', 'slr', 'fisher_z', 'gv')
COMMON_ESTIMATORS: Tuple[str, ...] = ('donner_rosner', 'pearson_mle')


@dataclass(frozen=True)
class StudyScale:
    """Replication and inner Monte Carlo sizes for a simulation study."""
    name: str
    replications: int
    boot_m: int
    gv_draws: int


STUDY_SCALES: Dict[str, StudyScale] = {
    'desk': StudyScale('desk', replications=2000, boot_m=2000, gv_draws=2000),
    'full': StudyScale('full', replications=10000, boot_m=10000, gv_draws=10000),
}


@dataclass(frozen=True)
class CorrTestConfig:
    """
    Defaults shared by the library entry points and the command line.

    Values can be replaced from a JSON object (see `from_json`); command-line
    flags are applied on top of that.
    """
    alpha: float = 0.05
    boot_m: int = 10000
    gv_draws: int = 10000
    seed: int = 20150101
    methods: Tuple[str, ...] = ('mslr', 'gv', 'fisher_z')
    common_estimator: str = 'donner_rosner'
    workers: int = 1
    chunk_size: int = 8192
    scale: str = 'desk'

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ConfigError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.boot_m < 100:
            raise ConfigError(f"boot_m must be at least 100, got {self.boot_m}")
        if self.gv_draws < 1000:
            raise ConfigError(f"gv_draws must be at least 1000, got {self.gv_draws}")
        if self.seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed}")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ConfigError(f"Unknown method(s) {unknown}; choose from {list(METHODS)}")
        if self.common_estimator not in COMMON_ESTIMATORS:
            raise ConfigError(
                f"common_estimator must be one of {list(COMMON_ESTIMATORS)}, got {self.common_estimator!r}"
            )
        if self.workers < 1:
            raise ConfigError(f"workers must be positive, got {self.workers}")
        if self.chunk_size < 1:
            raise ConfigError(f"chunk_size must be positive, got {self.chunk_size}")
        if self.scale not in STUDY_SCALES:
            raise ConfigError(f"scale must be one of {list(STUDY_SCALES)}, got {self.scale!r}")

    @property
    def study_scale(self) -> StudyScale:
        return STUDY_SCALES[self.scale]

    def with_overrides(self, overrides: Mapping[str, Any]) -> 'CorrTestConfig':
        """
        Return a copy with the given fields replaced.

        Args:
            overrides: Mapping of field name to new value; None values are ignored

        Returns:
            A new CorrTestConfig
        """
        known = {f.name for f in fields(self)}
        changes = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in known:
                raise ConfigError(f"Unknown configuration key: {key!r}")
            if key == 'methods':
                value = tuple(value)
            changes[key] = value
        try:
            return replace(self, **changes)
        except TypeError as e:
            raise ConfigError(str(e)) from e

    @classmethod
    def from_json(cls, path: str) -> 'CorrTestConfig':
        """
        Load defaults overridden by a JSON object stored at `path`.

        Args:
            path: Path to a JSON file holding a single object

        Returns:
            The resulting configuration
        """
        try:
            with open(path, 'r', encoding='utf-8') as f:
                overrides = json.load(f)
        except FileNotFoundError as e:
            raise ConfigError(f"Config file not found: {path}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"Config file {path} is not valid JSON: {e}") from e
        if not isinstance(overrides, dict):
            raise ConfigError(f"Config file {path} must contain a JSON object")
        config = cls().with_overrides(overrides)
        logger.info(f"Loaded configuration overrides from {path}")
        return config
