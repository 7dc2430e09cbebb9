"""
Report emission: JSON and aligned-text forms of test results, and CSV
tables for reproduced studies.
"""
import csv
import io
import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, TextIO

import numpy as np

from ..corr_equality import __version__
from ..corr_equality.mcsim import StudyResult, TableLayout
from ..corr_equality.significance_tests import TestOutcome

logger = logging.getLogger('corr_equality.report')

TEXT_DECIMALS = 4


def _plain(value: Any) -> Any:
    """Convert numpy scalars and enums to JSON-native values."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


@dataclass
class Report:
    """
    Outcome of one command-line test run.

    `meta` holds everything needed to rerun it, including the argument
    vector under 'argv'.
    """
    outcomes: List[TestOutcome]
    alpha: float
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.meta.setdefault('version', __version__)

    def entry(self, outcome: TestOutcome) -> Dict[str, Any]:
        return {
            'method': outcome.method.value,
            'statistic': outcome.statistic,
            'p_value': outcome.p_value,
            'reject': outcome.rejects(self.alpha),
            'detail': _plain(outcome.detail),
            'meta': {
                'seed': self.meta.get('seed'),
                'm': self.meta.get('m'),
                'draws': self.meta.get('draws'),
                'version': self.meta['version'],
            },
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            'alpha': self.alpha,
            'results': [self.entry(o) for o in self.outcomes],
            'meta': _plain(self.meta),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        """Aligned table with four decimals, one row per method."""
        headers = ['Method', 'Statistic', 'p-value', f'Decision (alpha={self.alpha:g})']
        rows = []
        for o in self.outcomes:
            stat = '-' if o.statistic is None else f"{o.statistic:.{TEXT_DECIMALS}f}"
            decision = 'reject H0' if o.rejects(self.alpha) else 'fail to reject H0'
            rows.append([o.method.value, stat, f"{o.p_value:.{TEXT_DECIMALS}f}", decision])
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
                  for i, h in enumerate(headers)]
        lines = ['  '.join(h.ljust(w) for h, w in zip(headers, widths)),
                 '  '.join('-' * w for w in widths)]
        lines += ['  '.join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
        return '\n'.join(lines)

    def save_json(self, filename: str) -> None:
        with open(filename, 'w', encoding='utf-8') as f:
            f.write(self.to_json())
        logger.info(f"Report saved to {filename}")


def load_report_meta(filename: str) -> Dict[str, Any]:
    """Read the `meta` block of a saved JSON report."""
    with open(filename, 'r', encoding='utf-8') as f:
        return json.load(f)['meta']


def _fmt(value: Optional[float]) -> str:
    return '' if value is None else f"{value:.{TEXT_DECIMALS}f}"


def write_study_csv(result: StudyResult, layout: TableLayout, out: TextIO) -> None:
    """
    Write a study in the published table's shape.

    One row per (n1, n2, method); for every grid column the estimated
    rejection rate, its Monte Carlo standard error and the published value.
    """
    columns: List[float] = []
    for rec in result.records:
        if rec.rho2 not in columns:
            columns.append(rec.rho2)
    writer = csv.writer(out)
    header = ['n1', 'n2', 'method']
    for v in columns:
        header += [f"{v:g}", f"se_{v:g}", f"paper_{v:g}"]
    writer.writerow(header)

    keys = []
    for rec in result.records:
        key = (rec.n1, rec.n2, rec.method)
        if key not in keys:
            keys.append(key)
    for n1, n2, method in keys:
        row = [n1, n2, method]
        for v in columns:
            match = [r for r in result.records
                     if (r.n1, r.n2, r.method) == (n1, n2, method) and r.rho2 == v]
            if match:
                rec = match[0]
                row += [_fmt(rec.rejection_rate), _fmt(rec.standard_error),
                        _fmt(layout.published_value((n1, n2), method, v))]
            else:
                row += ['', '', '']
        writer.writerow(row)


def write_real_data_csv(rows: Iterable[Dict[str, Any]], out: TextIO) -> None:
    """Write the real-data p-value grid: one row per method, p-value and published value per region."""
    rows = list(rows)
    regions: List[str] = []
    for row in rows:
        if row['region'] not in regions:
            regions.append(row['region'])
    methods: List[str] = []
    for row in rows:
        if row['method'] not in methods:
            methods.append(row['method'])

    writer = csv.writer(out)
    header = ['method']
    for region in regions:
        header += [region, f"paper_{region}"]
    writer.writerow(header)
    for method in methods:
        line = [method]
        for region in regions:
            cell = next(r for r in rows if r['method'] == method and r['region'] == region)
            line += [_fmt(cell['p_value']), _fmt(cell.get('paper'))]
        writer.writerow(line)


def csv_text(writer_fn, *args) -> str:
    """Render one of the CSV writers to a string."""
    buffer = io.StringIO()
    writer_fn(*args, buffer)
    return buffer.getvalue()
