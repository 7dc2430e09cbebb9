import codecs
import csv
import io
import logging
import os
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from ..corr_equality.errors import (
    DegenerateDataError, InputParseError, TooFewObservationsError, ValidationError,
)
from ..corr_equality.estimators import MIN_GROUP_SIZE, GroupSummary, summarize
from ..corr_equality.rngdist import BivariateData

# Set up logging
logger = logging.getLogger('corr_equality.handlers')

HeaderMode = Union[bool, str]


@dataclass(frozen=True)
class InputSource:
    """
    Where the two groups come from: a pair of CSV files or published (n, r) summaries.

    Exactly one of `csv_paths` and `summary` is set.
    """
    csv_paths: Optional[Tuple[str, str]] = None
    summary: Optional[Tuple[int, float, int, float]] = None
    header: HeaderMode = 'auto'

    def __post_init__(self):
        if (self.csv_paths is None) == (self.summary is None):
            raise ValidationError("provide either two CSV files or a summary (n1, r1, n2, r2), not both")

    def describe(self) -> dict:
        if self.summary is not None:
            n1, r1, n2, r2 = self.summary
            return {'summary': [int(n1), float(r1), int(n2), float(r2)]}
        return {'csv': list(self.csv_paths), 'header': self.header}


def _parse_float(cell: str, path: str, line: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise InputParseError(f"non-numeric value {cell.strip()!r} in row {line}", path=path, line=line)
    if not np.isfinite(value):
        raise InputParseError(f"non-finite value {cell.strip()!r} in row {line}", path=path, line=line)
    return value


def _looks_numeric(row: List[str]) -> bool:
    try:
        [float(cell) for cell in row]
        return True
    except ValueError:
        return False


def _decode(raw: bytes, path: str) -> str:
    if raw.startswith(codecs.BOM_UTF8):
        raw = raw[len(codecs.BOM_UTF8):]
    try:
        return raw.decode('utf-8')
    except UnicodeDecodeError as e:
        line = raw.count(b'\n', 0, e.start) + 1
        raise InputParseError(f"invalid UTF-8 byte 0x{raw[e.start]:02x} in row {line}",
                              path=path, line=line)


def ingest_csv(path: str, header: HeaderMode = 'auto') -> BivariateData:
    """
    Read paired observations from a two-column CSV file.

    Args:
        path: File path (UTF-8, comma-separated, columns x,y)
        header: True if the first row is a header, False if not, 'auto' to
            treat a non-numeric first row as a header

    Returns:
        Validated BivariateData
    """
    if not os.path.isfile(path):
        raise InputParseError("file not found", path=path)

    with open(path, 'rb') as f:
        text = _decode(f.read(), path)

    xs, ys = [], []
    reader = csv.reader(io.StringIO(text, newline=''))
    try:
        for line, row in enumerate(reader, start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if line == 1 and (header is True or (header == 'auto' and not _looks_numeric(row))):
                logger.debug(f"Skipping header row in {path}: {row}")
                continue
            if len(row) != 2:
                raise InputParseError(
                    f"row {line} has {len(row)} column(s), expected 2", path=path, line=line
                )
            xs.append(_parse_float(row[0], path, line))
            ys.append(_parse_float(row[1], path, line))
    except csv.Error as e:
        raise InputParseError(f"malformed CSV near line {reader.line_num}: {e}",
                              path=path, line=reader.line_num)

    if len(xs) < MIN_GROUP_SIZE:
        raise TooFewObservationsError(
            f"{path}: need at least {MIN_GROUP_SIZE} observations, found {len(xs)}"
        )
    data = BivariateData(xs=xs, ys=ys)
    for name, column in (('x', data.xs), ('y', data.ys)):
        if np.ptp(column) == 0.0:
            raise DegenerateDataError(f"{path}: column {name} is constant")
    logger.info(f"Read {data.n} observations from {path}")
    return data


class InputHandler(ABC):
    """
    Abstract base class for input handlers.
    Each kind of InputSource is turned into two GroupSummary objects by one handler.
    """

    @abstractmethod
    def can_handle(self, source: InputSource) -> bool:
        """Check if this handler can load the given source."""
        pass

    @abstractmethod
    def load(self, source: InputSource) -> Tuple[GroupSummary, GroupSummary]:
        """Load both groups' summaries."""
        pass


class CsvPairHandler(InputHandler):
    """Handler for two CSV files of raw paired observations."""

    def can_handle(self, source: InputSource) -> bool:
        return source.csv_paths is not None

    def load(self, source: InputSource) -> Tuple[GroupSummary, GroupSummary]:
        first, second = source.csv_paths
        return (summarize(ingest_csv(first, source.header)),
                summarize(ingest_csv(second, source.header)))


class SummaryHandler(InputHandler):
    """Handler for published summaries (n1, r1, n2, r2)."""

    def can_handle(self, source: InputSource) -> bool:
        return source.summary is not None

    def load(self, source: InputSource) -> Tuple[GroupSummary, GroupSummary]:
        n1, r1, n2, r2 = source.summary
        for n in (n1, n2):
            if int(n) != n:
                raise ValidationError(f"sample sizes must be integers, got {n}")
        return GroupSummary.from_correlation(int(n1), r1), GroupSummary.from_correlation(int(n2), r2)


class InputLoader:
    """
    Dispatches an InputSource to the first registered handler that accepts it.
    """

    def __init__(self):
        self.handlers: List[InputHandler] = []

    def register_handler(self, handler: InputHandler) -> None:
        self.handlers.append(handler)
        logger.debug(f"Registered handler: {handler.__class__.__name__}")

    def load(self, source: InputSource) -> Tuple[GroupSummary, GroupSummary]:
        for handler in self.handlers:
            if handler.can_handle(source):
                logger.debug(f"Using {handler.__class__.__name__} for {source.describe()}")
                return handler.load(source)
        raise ValidationError(f"No handler accepts input {source.describe()}")


def default_loader() -> InputLoader:
    """Loader with the CSV and summary handlers registered."""
    loader = InputLoader()
    loader.register_handler(CsvPairHandler())
    loader.register_handler(SummaryHandler())
    return loader
