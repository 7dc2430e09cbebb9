#!/usr/bin/env python3
"""
Correlation equality - Command-line interface for testing H0: rho1 = rho2
between two independent bivariate normal groups and for reproducing the
published size, power and real-data tables.
"""
import argparse
import io
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.corr_equality import __version__, datasets
from src.corr_equality.config import COMMON_ESTIMATORS, METHODS, STUDY_SCALES, CorrTestConfig
from src.corr_equality.errors import CorrEqualityError, ValidationError
from src.corr_equality.mcsim import TABLES, build_table_spec, run_table
from src.corr_equality.rngdist import RngStream
from src.corr_equality.significance_tests import BootstrapSettings, TestMethod, run_method
from src.handlers.input_handlers import InputSource, default_loader
from src.utils.report_writer import (
    Report, csv_text, load_report_meta, write_real_data_csv, write_study_csv,
)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger('corr_equality.main')

# Stream indices under the run seed
MSLR_STREAM = 0
GV_STREAM = 1

REAL_DATA_METHODS: Tuple[str, ...] = ('mslr', 'gv', 'fisher_z')
STUDY_METHODS: Tuple[str, ...] = ('mslr', 'fisher_z', 'gv')
# Bootstrap and GV draws for the single real-data run; study presets do not apply
REAL_DATA_DRAWS = 100000


def configure_logging(verbose: bool = False, log_file: Optional[str] = None) -> None:
    """Send log records to stderr (stdout carries reports) and optionally to a file."""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(level=logging.INFO, format=LOG_FORMAT, handlers=handlers, force=True)
    logging.getLogger('corr_equality').setLevel(logging.DEBUG if verbose else logging.INFO)


def load_config(path: Optional[str]) -> CorrTestConfig:
    return CorrTestConfig.from_json(path) if path else CorrTestConfig()


def cli_test(source: InputSource, methods: Sequence[str], alpha: float, boot_m: int,
             gv_draws: int, seed: int, common_estimator: str = 'donner_rosner',
             chunk_size: int = 8192, argv: Optional[List[str]] = None) -> Report:
    """
    Run the requested tests on one pair of groups.

    MSLR draws from stream 0 and GV from stream 1 under `seed`, so each
    method's p-value depends only on its own settings.

    Args:
        source: Two CSV files or an (n1, r1, n2, r2) summary
        methods: Method names in output order
        alpha: Level for the reject / fail-to-reject decision
        boot_m: Bootstrap replicates for MSLR
        gv_draws: Monte Carlo draws for GV
        seed: Master seed
        common_estimator: Common-correlation estimate used by MSLR and SLR
        chunk_size: Draws per substream
        argv: Canonical arguments that rerun this call, stored in the report

    Returns:
        Report with one outcome per method
    """
    g1, g2 = default_loader().load(source)
    logger.info(f"Testing n1={g1.n}, r1={g1.r:.6f} against n2={g2.n}, r2={g2.r:.6f}")

    boot = BootstrapSettings(m=boot_m, master_seed=seed, stream_index=MSLR_STREAM,
                             common_estimator=common_estimator, chunk_size=chunk_size)
    gv_stream = RngStream(seed, GV_STREAM)

    outcomes = []
    for method in methods:
        outcome = run_method(TestMethod(method), g1, g2, boot, gv_draws, gv_stream)
        logger.debug(f"{outcome.method.value}: statistic={outcome.statistic}, p={outcome.p_value}")
        outcomes.append(outcome)

    return Report(outcomes=outcomes, alpha=alpha, meta={
        'seed': seed,
        'm': boot_m,
        'draws': gv_draws,
        'alpha': alpha,
        'methods': list(methods),
        'common_estimator': common_estimator,
        'chunk_size': chunk_size,
        'input': source.describe(),
        'argv': list(argv) if argv is not None else None,
    })


def real_data_rows(seed: int, boot_m: int, gv_draws: int, common_estimator: str = 'donner_rosner',
                   methods: Sequence[str] = REAL_DATA_METHODS) -> List[Dict[str, Any]]:
    """
    p-values of every method on every embedded blood-flow comparison.

    Each region is tested exactly as `cli_test` would test its summary.
    """
    rows = []
    for comparison in datasets.BLOOD_FLOW_LATERALITY:
        source = InputSource(summary=(comparison.n_male, comparison.r_male,
                                      comparison.n_female, comparison.r_female))
        report = cli_test(source, methods, 0.05, boot_m, gv_draws, seed, common_estimator)
        for outcome in report.outcomes:
            name = outcome.method.value
            rows.append({
                'region': comparison.region,
                'method': name,
                'p_value': outcome.p_value,
                'paper': datasets.BLOOD_FLOW_P_VALUES.get(name, {}).get(comparison.region),
            })
    return rows


def default_methods(target: str) -> Tuple[str, ...]:
    return REAL_DATA_METHODS if target == 'table4' else STUDY_METHODS


def cli_reproduce(target: str, scale: str = 'desk', seed: int = 0,
                  pairs: Optional[Sequence[Tuple[int, int]]] = None,
                  grid: Optional[Sequence[float]] = None,
                  methods: Optional[Sequence[str]] = None,
                  replications: Optional[int] = None, boot_m: Optional[int] = None,
                  gv_draws: Optional[int] = None, common_estimator: str = 'donner_rosner',
                  workers: int = 1, show_progress: bool = False) -> str:
    """
    Reproduce a published table and return it as CSV text.

    Args:
        target: 'table1', 'table2_1', 'table2_2' or 'table4'
        scale: 'desk' or 'full' preset for replications and inner draws
        seed: Master seed
        pairs: Restrict to these (n1, n2) pairs
        grid: Restrict to these correlation columns
        methods: Methods to run; defaults to every method of the target table
        replications, boot_m, gv_draws: Override the preset; table4 defaults to
            REAL_DATA_DRAWS for both draw counts
        common_estimator: Common-correlation estimate for MSLR and SLR
        workers: Parallel workers for replication blocks
        show_progress: Show a progress bar

    Returns:
        CSV text in the table's layout
    """
    if scale not in STUDY_SCALES:
        raise ValidationError(f"Unknown scale {scale!r}")
    methods = methods or default_methods(target)
    if target == 'table4':
        rows = real_data_rows(seed, boot_m or REAL_DATA_DRAWS, gv_draws or REAL_DATA_DRAWS,
                              common_estimator, methods)
        return csv_text(write_real_data_csv, rows)
    if target not in TABLES:
        raise ValidationError(f"Unknown target {target!r}")

    spec = build_table_spec(target, scale=scale, master_seed=seed, pairs=pairs, columns=grid,
                            methods=methods, replications=replications, boot_m=boot_m,
                            gv_draws=gv_draws, common_estimator=common_estimator, workers=workers)
    result = run_table(target, spec, show_progress=show_progress)
    buffer = io.StringIO()
    write_study_csv(result, TABLES[target], buffer)
    return buffer.getvalue()


def _pair(text: str) -> Tuple[int, int]:
    try:
        a, b = text.split(',')
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n1,n2 but got {text!r}")


def canonical_test_argv(source: InputSource, config: CorrTestConfig) -> List[str]:
    """Arguments that rerun a test with every setting explicit."""
    argv = ['test']
    if source.summary is not None:
        n1, r1, n2, r2 = source.summary
        argv += ['--summary', str(int(n1)), repr(float(r1)), str(int(n2)), repr(float(r2))]
    else:
        argv += ['--csv', *source.csv_paths]
        if source.header is True:
            argv.append('--header')
        elif source.header is False:
            argv.append('--no-header')
    for method in config.methods:
        argv += ['--method', method]
    argv += ['--alpha', repr(config.alpha), '--boot-m', str(config.boot_m),
             '--gv-draws', str(config.gv_draws), '--seed', str(config.seed),
             '--common-estimator', config.common_estimator,
             '--chunk-size', str(config.chunk_size)]
    return argv


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='corr-equality',
        description='Correlation equality: test whether two independent groups share the same correlation.',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Test published summaries with every method
  python src/corr_equality_cli.py test --summary 14 -0.340 14 0.812 --method mslr --method gv --method fisher_z

  # Test two CSV files of paired observations, JSON report
  python src/corr_equality_cli.py test --csv men.csv women.csv --format json > report.json

  # Rerun a saved report
  python src/corr_equality_cli.py test --replay report.json

  # Reproduce part of the size table at desk scale
  python src/corr_equality_cli.py reproduce table1 --pairs 10,10 --grid 0.0 0.5 --output sizes.csv

  # Real-data p-values
  python src/corr_equality_cli.py reproduce table4
"""
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument(
        '--config', '-c',
        help='Path to a JSON file of configuration overrides (see study_defaults.json)'
    )
    parser.add_argument('--log-file', help='Also write log records to this file')
    parser.add_argument('--verbose', '-v', action='store_true', help='Enable verbose logging')

    sub = parser.add_subparsers(dest='command', required=True)

    test = sub.add_parser('test', help='Test H0: rho1 = rho2 for one pair of groups')
    inputs = test.add_mutually_exclusive_group(required=True)
    inputs.add_argument('--summary', nargs=4, type=float, metavar=('N1', 'R1', 'N2', 'R2'),
                        help='Published sample sizes and correlations')
    inputs.add_argument('--csv', nargs=2, metavar=('A_CSV', 'B_CSV'),
                        help='Two CSV files with columns x,y')
    inputs.add_argument('--replay', metavar='REPORT_JSON',
                        help='Rerun the test recorded in a JSON report')
    header = test.add_mutually_exclusive_group()
    header.add_argument('--header', dest='header', action='store_const', const=True, default='auto',
                        help='CSV files start with a header row')
    header.add_argument('--no-header', dest='header', action='store_const', const=False,
                        help='CSV files have no header row')
    test.add_argument('--method', '-m', action='append', choices=METHODS,
                      help='Method to run; repeat for several (default from config)')
    test.add_argument('--alpha', type=float, help='Significance level (default 0.05)')
    test.add_argument('--boot-m', type=int, help='Bootstrap replicates for MSLR (default 10000)')
    test.add_argument('--gv-draws', type=int, help='Monte Carlo draws for GV (default 10000)')
    test.add_argument('--seed', type=int, help='Master seed')
    test.add_argument('--common-estimator', choices=COMMON_ESTIMATORS,
                      help='Common correlation estimate for MSLR and SLR')
    test.add_argument('--chunk-size', type=int, help='Draws per random substream')
    test.add_argument('--format', '-f', choices=('table', 'json'), default='table',
                      help='Report format written to stdout')

    reproduce = sub.add_parser('reproduce', help='Reproduce a published table as CSV')
    reproduce.add_argument('target', choices=sorted(TABLES) + ['table4'])
    reproduce.add_argument('--scale', choices=sorted(STUDY_SCALES), help='Study scale preset')
    reproduce.add_argument('--seed', type=int, help='Master seed')
    reproduce.add_argument('--pairs', nargs='+', type=_pair, metavar='N1,N2',
                           help='Only these sample size pairs')
    reproduce.add_argument('--grid', nargs='+', type=float, metavar='RHO',
                           help='Only these correlation columns')
    reproduce.add_argument('--method', '-m', action='append', choices=METHODS,
                           help='Method to simulate; repeat for several')
    reproduce.add_argument('--replications', type=int, help='Replications per cell')
    reproduce.add_argument('--boot-m', type=int, help='Bootstrap replicates for MSLR (table4 default 100000)')
    reproduce.add_argument('--gv-draws', type=int, help='Monte Carlo draws for GV (table4 default 100000)')
    reproduce.add_argument('--common-estimator', choices=COMMON_ESTIMATORS)
    reproduce.add_argument('--workers', type=int, help='Parallel workers')
    reproduce.add_argument('--output', '-o', help='CSV file to write (default stdout)')
    return parser


def command_test(args: argparse.Namespace, parser: argparse.ArgumentParser) -> Report:
    """Resolve flags, config and replay into a cli_test call."""
    if args.replay:
        meta = load_report_meta(args.replay)
        if not meta.get('argv'):
            raise ValidationError(f"Report {args.replay} does not record its arguments")
        logger.info(f"Replaying {' '.join(meta['argv'])}")
        replayed = parser.parse_args(meta['argv'])
        return command_test(replayed, parser)

    config = load_config(args.config).with_overrides({
        'alpha': args.alpha,
        'boot_m': args.boot_m,
        'gv_draws': args.gv_draws,
        'seed': args.seed,
        'methods': args.method,
        'common_estimator': args.common_estimator,
        'chunk_size': args.chunk_size,
    })
    if args.summary is not None:
        source = InputSource(summary=tuple(args.summary))
    else:
        source = InputSource(csv_paths=tuple(args.csv), header=args.header)

    return cli_test(source, config.methods, config.alpha, config.boot_m, config.gv_draws,
                    config.seed, config.common_estimator, config.chunk_size,
                    argv=canonical_test_argv(source, config))


def command_reproduce(args: argparse.Namespace) -> str:
    config = load_config(args.config).with_overrides({
        'seed': args.seed,
        'scale': args.scale,
        'common_estimator': args.common_estimator,
        'workers': args.workers,
    })
    logger.info(f"Reproducing {args.target} at {config.scale} scale with seed {config.seed}")
    text = cli_reproduce(
        args.target, scale=config.scale, seed=config.seed, pairs=args.pairs, grid=args.grid,
        methods=args.method, replications=args.replications, boot_m=args.boot_m,
        gv_draws=args.gv_draws, common_estimator=config.common_estimator,
        workers=config.workers, show_progress=True,
    )
    if args.output:
        output_dir = os.path.dirname(args.output)
        if output_dir and not os.path.exists(output_dir):
            os.makedirs(output_dir)
        with open(args.output, 'w', newline='', encoding='utf-8') as f:
            f.write(text)
        logger.info(f"Table written to {args.output}")
    return text


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.log_file)

    try:
        if args.command == 'test':
            report = command_test(args, parser)
            print(report.to_json() if args.format == 'json' else report.to_text())
        else:
            text = command_reproduce(args)
            if not args.output:
                sys.stdout.write(text)
    except CorrEqualityError as e:
        logger.error(str(e))
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
