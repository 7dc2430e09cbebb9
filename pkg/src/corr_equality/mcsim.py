"""
Monte Carlo size and power studies for the correlation equality tests.

A study is a grid of cells (n1, n2, rho1, rho2). Every replication of a
cell draws two independent bivariate normal samples (means 0, unit
variances; the tests only see n and r), summarizes them and runs each
requested method, recording whether p < alpha.

Streams: cell k uses stream index k under the master seed, replication j
of that cell uses substream j, and within it substream 0 feeds the data,
2 the MSLR bootstrap and 3 the GV draws. Replications are processed in
fixed-size blocks; blocks may run on any number of workers and are
reassembled in index order, so results do not depend on the worker count.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from . import datasets
from .config import STUDY_SCALES
from .errors import DegenerateDataError, InvalidParameterError
from .estimators import summarize
from .rngdist import RngStream, draw_bivariate_normal_sample
from .significance_tests import (
    BootstrapSettings, TestMethod, fisher_z_test, gv_test, mslr_test, slr_test,
)

logger = logging.getLogger('corr_equality.mcsim')

MIN_REPLICATIONS = 100
DEFAULT_BLOCK_SIZE = 250
MAX_DATA_REDRAWS = 1000

DATA_KEY = 0
MSLR_KEY = 2
GV_KEY = 3


@dataclass(frozen=True)
class StudySpec:
    """
    Definition of a size or power study.

    Attributes:
        pairs: Sample size pairs (n1, n2)
        grid: Correlation pairs (rho1, rho2); rho1 == rho2 for size studies
        replications: Replications per cell
        alpha: Nominal level; p < alpha counts as a rejection
        methods: Methods to run in every replication
        boot: Bootstrap settings for MSLR (its seed fields are unused here)
        gv_draws: Monte Carlo draws for each GV p-value
        master_seed: Seed from which every stream of the study derives
        workers: Parallel workers for replication blocks
        block_size: Replications per work unit
    """
    pairs: Tuple[Tuple[int, int], ...]
    grid: Tuple[Tuple[float, float], ...]
    replications: int = 2000
    alpha: float = 0.05
    methods: Tuple[TestMethod, ...] = (TestMethod.MSLR, TestMethod.FISHER_Z, TestMethod.GV)
    boot: BootstrapSettings = field(default_factory=lambda: BootstrapSettings(m=2000))
    gv_draws: int = 2000
    master_seed: int = 0
    workers: int = 1
    block_size: int = DEFAULT_BLOCK_SIZE

    def __post_init__(self):
        if self.replications < MIN_REPLICATIONS:
            raise InvalidParameterError(
                f"replications must be at least {MIN_REPLICATIONS}, got {self.replications}"
            )
        if not 0.0 < self.alpha <= 1.0:
            raise InvalidParameterError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not self.methods:
            raise InvalidParameterError("a study needs at least one method")
        for rho1, rho2 in self.grid:
            if not (-1.0 < rho1 < 1.0 and -1.0 < rho2 < 1.0):
                raise InvalidParameterError(f"grid correlations must lie in (-1, 1), got ({rho1}, {rho2})")
        if self.workers < 1 or self.block_size < 1:
            raise InvalidParameterError("workers and block_size must be positive")
        object.__setattr__(self, 'pairs', tuple((int(a), int(b)) for a, b in self.pairs))
        object.__setattr__(self, 'grid', tuple((float(a), float(b)) for a, b in self.grid))
        object.__setattr__(self, 'methods', tuple(TestMethod(m) for m in self.methods))

    def cells(self) -> List[Tuple[int, int, float, float]]:
        """All (n1, n2, rho1, rho2) cells in stream-index order."""
        return [(n1, n2, rho1, rho2) for n1, n2 in self.pairs for rho1, rho2 in self.grid]


@dataclass(frozen=True)
class CellRecord:
    n1: int
    n2: int
    rho1: float
    rho2: float
    method: str
    rejection_rate: float
    replications: int
    standard_error: float
    data_redraws: int = 0


@dataclass
class StudyResult:
    """Rejection-rate estimates for every (cell, method) of a study."""
    records: List[CellRecord]
    meta: Dict[str, object] = field(default_factory=dict)

    def rate(self, n1: int, n2: int, rho1: float, rho2: float, method: str) -> CellRecord:
        """Find the record of one cell and method."""
        method = TestMethod(method).value
        for rec in self.records:
            if (rec.n1, rec.n2, rec.method) == (n1, n2, method) and \
                    math.isclose(rec.rho1, rho1) and math.isclose(rec.rho2, rho2):
                return rec
        raise KeyError(f"No record for cell ({n1}, {n2}, {rho1}, {rho2}) and method {method}")


def _draw_group_pair(n1: int, n2: int, rho1: float, rho2: float, stream: RngStream):
    """Draw and summarize both groups, redrawing degenerate samples; returns (g1, g2, redraws)."""
    redraws = 0
    while True:
        try:
            g1 = summarize(draw_bivariate_normal_sample(n1, 0.0, 0.0, 1.0, 1.0, rho1, stream))
            g2 = summarize(draw_bivariate_normal_sample(n2, 0.0, 0.0, 1.0, 1.0, rho2, stream))
            return g1, g2, redraws
        except DegenerateDataError:
            redraws += 1
            if redraws >= MAX_DATA_REDRAWS:
                raise
            logger.warning(f"Redrawing degenerate sample in cell ({n1}, {n2}, {rho1}, {rho2})")


def _run_block(spec: StudySpec, cell_index: int, start: int, stop: int) -> Tuple[np.ndarray, int]:
    """
    Run replications [start, stop) of one cell.

    Returns:
        (boolean rejection matrix of shape (stop - start, len(methods)), data redraws)
    """
    n1, n2, rho1, rho2 = spec.cells()[cell_index]
    cell_stream = RngStream(spec.master_seed, cell_index)
    rejected = np.zeros((stop - start, len(spec.methods)), dtype=bool)
    redraws = 0

    for row, rep in enumerate(range(start, stop)):
        rep_stream = cell_stream.substream(rep)
        g1, g2, k = _draw_group_pair(n1, n2, rho1, rho2, rep_stream.substream(DATA_KEY))
        redraws += k
        for col, method in enumerate(spec.methods):
            if method is TestMethod.MSLR:
                boot_stream = rep_stream.substream(MSLR_KEY)
                outcome = mslr_test(g1, g2, spec.boot,
                                    group_streams=(boot_stream.substream(0), boot_stream.substream(1)))
            elif method is TestMethod.GV:
                outcome = gv_test(g1, g2, spec.gv_draws, rep_stream.substream(GV_KEY),
                                  chunk_size=spec.boot.chunk_size)
            elif method is TestMethod.SLR:
                outcome = slr_test(g1, g2, spec.boot.common_estimator)
            else:
                outcome = fisher_z_test(g1, g2)
            rejected[row, col] = outcome.p_value < spec.alpha
    return rejected, redraws


def _run_study(spec: StudySpec, label: str, show_progress: bool) -> StudyResult:
    cells = spec.cells()
    tasks = [
        (k, start, min(start + spec.block_size, spec.replications))
        for k in range(len(cells))
        for start in range(0, spec.replications, spec.block_size)
    ]
    logger.info(
        f"Starting {label} study: {len(cells)} cell(s) x {spec.replications} replications, "
        f"methods={[m.value for m in spec.methods]}, workers={spec.workers}"
    )

    progress = tqdm(tasks, desc=label, unit='block', disable=not show_progress)
    if spec.workers == 1:
        outputs = [_run_block(spec, k, a, b) for k, a, b in progress]
    else:
        outputs = Parallel(n_jobs=spec.workers)(delayed(_run_block)(spec, k, a, b) for k, a, b in progress)

    records: List[CellRecord] = []
    for k, (n1, n2, rho1, rho2) in enumerate(cells):
        blocks = [out for (cell, _, _), out in zip(tasks, outputs) if cell == k]
        rejected = np.concatenate([b[0] for b in blocks], axis=0)
        redraws = sum(b[1] for b in blocks)
        for col, method in enumerate(spec.methods):
            rate = float(np.mean(rejected[:, col]))
            records.append(CellRecord(
                n1=n1, n2=n2, rho1=rho1, rho2=rho2, method=method.value,
                rejection_rate=rate,
                replications=spec.replications,
                standard_error=math.sqrt(rate * (1.0 - rate) / spec.replications),
                data_redraws=redraws,
            ))
    logger.info(f"Finished {label} study ({len(records)} records)")
    return StudyResult(records=records, meta={
        'kind': label,
        'master_seed': spec.master_seed,
        'replications': spec.replications,
        'alpha': spec.alpha,
        'boot_m': spec.boot.m,
        'gv_draws': spec.gv_draws,
        'common_estimator': spec.boot.common_estimator.value,
    })


def run_size_study(spec: StudySpec, show_progress: bool = False) -> StudyResult:
    """
    Estimate actual sizes: every grid point must have rho1 == rho2.

    Args:
        spec: Study definition
        show_progress: Display a progress bar

    Returns:
        StudyResult with one record per (cell, method)
    """
    for rho1, rho2 in spec.grid:
        if rho1 != rho2:
            raise InvalidParameterError(f"size studies need rho1 == rho2, got ({rho1}, {rho2})")
    return _run_study(spec, 'size', show_progress)


def run_power_study(spec: StudySpec, show_progress: bool = False) -> StudyResult:
    """Estimate empirical powers over (rho1, rho2) cells."""
    return _run_study(spec, 'power', show_progress)


@dataclass(frozen=True)
class TableLayout:
    """How a published table maps onto a study grid."""
    name: str
    kind: str
    pairs: Tuple[Tuple[int, int], ...]
    columns: Tuple[float, ...]
    published: Dict[Tuple[int, int], Dict[str, Tuple[float, ...]]]

    def grid(self, columns: Optional[Sequence[float]] = None) -> Tuple[Tuple[float, float], ...]:
        values = self.columns if columns is None else tuple(columns)
        if self.kind == 'size':
            return tuple((v, v) for v in values)
        return tuple((datasets.POWER_RHO1, v) for v in values)

    def published_value(self, pair: Tuple[int, int], method: str, column: float) -> Optional[float]:
        row = self.published.get(pair, {}).get(method)
        if row is None:
            return None
        for value, ref in zip(self.columns, row):
            if math.isclose(value, column, abs_tol=1e-9):
                return ref
        return None


TABLES: Dict[str, TableLayout] = {
    'table1': TableLayout('table1', 'size', datasets.SIZE_PAIRS, datasets.SIZE_RHO_GRID,
                          datasets.PUBLISHED_SIZES),
    'table2_1': TableLayout('table2_1', 'power', datasets.POWER_PAIRS, datasets.POWER_RHO2_POSITIVE,
                            datasets.PUBLISHED_POWER_POSITIVE),
    'table2_2': TableLayout('table2_2', 'power', datasets.POWER_PAIRS, datasets.POWER_RHO2_NEGATIVE,
                            datasets.PUBLISHED_POWER_NEGATIVE),
}


def build_table_spec(target: str, scale: str = 'desk', master_seed: int = 0,
                     pairs: Optional[Sequence[Tuple[int, int]]] = None,
                     columns: Optional[Sequence[float]] = None,
                     methods: Sequence[str] = ('mslr', 'fisher_z', 'gv'),
                     replications: Optional[int] = None, boot_m: Optional[int] = None,
                     gv_draws: Optional[int] = None, alpha: float = 0.05,
                     common_estimator: str = 'donner_rosner', workers: int = 1) -> StudySpec:
    """
    StudySpec reproducing (a subset of) a published size or power table.

    Scale presets fill replications, boot_m and gv_draws unless given.
    """
    if target not in TABLES:
        raise InvalidParameterError(f"Unknown table {target!r}; choose from {sorted(TABLES)}")
    layout = TABLES[target]
    preset = STUDY_SCALES[scale]
    return StudySpec(
        pairs=tuple(pairs) if pairs else layout.pairs,
        grid=layout.grid(columns),
        replications=replications or preset.replications,
        alpha=alpha,
        methods=tuple(methods),
        boot=BootstrapSettings(m=boot_m or preset.boot_m, common_estimator=common_estimator),
        gv_draws=gv_draws or preset.gv_draws,
        master_seed=master_seed,
        workers=workers,
    )


def run_table(target: str, spec: StudySpec, show_progress: bool = False) -> StudyResult:
    """Run the study for a published table with the matching size/power entry point."""
    if TABLES[target].kind == 'size':
        return run_size_study(spec, show_progress)
    return run_power_study(spec, show_progress)
