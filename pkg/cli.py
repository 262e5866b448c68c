# cli.py
"""
Command-line front end for the minimum braid toolkit.

Data goes to stdout in the requested format; logs and progress bars go to
stderr and to the dated error log under the home directory.
"""

###################
# Standard Imports
###################
import argparse
import csv
import io
import json
import logging
import sys
import time
from datetime import datetime
from pathlib import Path
from typing import Optional, Sequence

###################
# Local Imports
###################
from analysis import (
    build_column, column_rows, column_type, is_rrp, rrp_search, tree_report, unknotting_number,
)
from braid_core import (
    BraidParseError, ResourceBudgetExceeded, binary_code, components, format_braid,
    is_alternating, parse_braid, writhe,
)
from catalog import assign_tags, attach_unknotting, export, load_fixture, verify
from config import COMMANDS, FORMATS, MinbraidConfig, RunConfig, RunManifest, load_environment
from enumeration import enumerate_catalog, universe_census
from invariants import alexander, homfly

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


###################
# Output Helpers
###################
def _render(rows: list, fmt: str) -> str:
    """Render a list of flat dicts as text lines, a JSON array or CSV."""
    if fmt == 'json':
        return json.dumps(rows, indent=2) + '\n'
    if fmt == 'csv':
        buffer = io.StringIO()
        if rows:
            writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator='\n')
            writer.writeheader()
            writer.writerows(rows)
        return buffer.getvalue()
    lines = []
    for row in rows:
        lines.append(' '.join(f"{key}={value}" for key, value in row.items()))
    return '\n'.join(lines) + ('\n' if lines else '')


###################
# Runner
###################
class MinbraidRunner:
    """
    Runs one CLI command with logging and a run manifest set up under a home directory.

    Args:
        run_config (RunConfig): Validated settings for the command.
        home (Optional[Path]): Base directory for logs, run records and exports.
    """

    def __init__(self, run_config: RunConfig, home: Optional[Path] = None):
        self.run_config = run_config
        self.config = MinbraidConfig(Path(home) if home else Path.cwd())
        self.config.create_directories()
        self.manifest = RunManifest(self.config.runs_dir)
        self._setup_logging()
        self._fixture = None

    def _setup_logging(self):
        """
        Send log records to the dated error log and to stderr.

        The handlers stay attached to the root logger until ``close()``, which
        ``run`` calls on the way out.
        """
        log_file = self.config.errors_dir / f'error_log_{datetime.now().strftime("%Y%m%d")}.log'
        formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')
        self._handlers = [logging.FileHandler(log_file), logging.StreamHandler()]
        root = logging.getLogger()
        root.setLevel(logging.INFO)
        for handler in self._handlers:
            handler.setFormatter(formatter)
            root.addHandler(handler)

    def close(self):
        """Detach and close the log handlers opened by ``_setup_logging``."""
        root = logging.getLogger()
        for handler in self._handlers:
            root.removeHandler(handler)
            handler.close()
        self._handlers = []

    @property
    def fixture(self):
        if self._fixture is None:
            path = Path(self.run_config.fixture) if self.run_config.fixture else None
            self._fixture = load_fixture(path)
        return self._fixture

    def _catalog(self):
        cfg = self.run_config
        catalog = enumerate_catalog(cfg.max_crossings, cfg.max_strands, jobs=cfg.jobs,
                                    fixture=self.fixture, progress=cfg.progress)
        assign_tags(catalog, self.fixture)
        return attach_unknotting(catalog, self.fixture)

    def _word(self):
        return parse_braid(self.run_config.target or '')

    ###################
    # Commands
    ###################
    def run_invariants(self) -> tuple:
        word = self._word()
        record = alexander(word)
        row = {
            'braid': format_braid(word),
            'components': components(word),
            'strands': word.strands,
            'crossings': word.crossings,
            'alternating': is_alternating(word),
            'code': str(binary_code(word)),
            'writhe': writhe(word),
            'ap10': record.ap10,
            'z': record.z,
            'digital': record.digital,
            'alexander': record.poly.serialize(),
            'homfly': homfly(word).serialize(),
        }
        return EXIT_OK, self._single(row), {'braid': row['braid']}

    def _single(self, row: dict) -> str:
        if self.run_config.output_format == 'text':
            return ''.join(f"{key}: {value}\n" for key, value in row.items())
        return _render([row], self.run_config.output_format)

    def run_enumerate(self) -> tuple:
        catalog = self._catalog()
        wanted = self.run_config.components
        rows = [{'tag': e.tag, 'components': e.components, 'strands': e.strands,
                 'crossings': e.crossings, 'braid': e.braid, 'ap10': e.record.ap10,
                 'z': e.record.z, 'digital': e.record.digital,
                 'unknotting': '' if e.unknotting is None else e.unknotting}
                for e in catalog if wanted is None or e.components == wanted]
        summary = {'entries': len(rows), 'collisions': len(catalog.collisions)}
        return EXIT_OK, _render(rows, self.run_config.output_format), summary

    def run_verify(self) -> tuple:
        cfg = self.run_config
        report = verify(self._catalog(), self.fixture, cfg.max_crossings, cfg.components)
        if cfg.output_format == 'text':
            lines = [report.summary()]
            lines += [f"{m.tag} {m.field}: expected {m.expected}, got {m.actual}"
                      for m in report.mismatches]
            lines += [f"{tag} missing" for tag in report.missing]
            output = '\n'.join(lines) + '\n'
        else:
            output = _render([{'tag': m.tag, 'field': m.field, 'expected': m.expected,
                               'actual': m.actual} for m in report.mismatches],
                             cfg.output_format)
        summary = {'matched': len(report.matched), 'mismatches': len(report.mismatches),
                   'missing': len(report.missing)}
        return (EXIT_OK if report.ok else EXIT_MISMATCH), output, summary

    def run_unknot(self) -> tuple:
        cfg = self.run_config
        word = self._word()
        u = unknotting_number(word, cfg.budget, jobs=cfg.jobs, progress=cfg.progress)
        return EXIT_OK, self._single({'braid': format_braid(word), 'unknotting': u}), {'u': u}

    def run_rrp(self) -> tuple:
        word = self._word()
        witness = rrp_search(word, self.run_config.moves_budget)
        row = {'braid': format_braid(word), 'is_rrp': is_rrp(word),
               'witness': format_braid(witness) if witness else 'inconclusive'}
        return EXIT_OK, self._single(row), {'witness': row['witness']}

    def run_trees(self) -> tuple:
        rows = tree_report(self.run_config.max_vertices)
        return EXIT_OK, _render(rows, self.run_config.output_format), {'rows': len(rows)}

    def run_column(self) -> tuple:
        """
        Periodic column under the target braid.

        A catalog is enumerated through the deepest cell (seed crossings plus
        ``--depth``) on the seed's strand count, so every cell, the seed included,
        is checked for being a minimum braid. Tagged cells are also checked for a
        crossing number jump. The cost grows with the depth like ``enumerate`` does.
        """
        cfg = self.run_config
        seed = self._word()
        catalog = enumerate_catalog(seed.crossings + cfg.depth, max(seed.strands, 1), jobs=cfg.jobs,
                                    fixture=self.fixture, progress=cfg.progress)
        column = build_column(seed, cfg.depth, catalog, fixture=self.fixture)
        rows = column_rows(column) if cfg.depth >= 1 else None
        report = {
            'seed': format_braid(column.seed),
            'type': column_type(column),
            'cells': [{'braid': format_braid(cell.word), 'ap10': cell.entry.record.ap10,
                       'y_star': cell.y_star, 'z_star': cell.z_star} for cell in column.cells],
            'stars': [list(star) for star in column.stars],
        }
        if rows is not None:
            report.update({'al': list(rows.al), 'hx': rows.hx, 'hx_period': rows.hx_period,
                           'hr': list(rows.hr), 'o_star': rows.o_star})
        if cfg.output_format == 'json':
            output = json.dumps(report, indent=2) + '\n'
        else:
            output = _render(report['cells'], cfg.output_format)
            if cfg.output_format == 'text':
                output = f"type: {report['type']}\n" + output
        return EXIT_OK, output, {'type': report['type']}

    def run_export(self) -> tuple:
        catalog = self._catalog()
        fmt = 'csv' if self.run_config.output_format == 'csv' else 'jsonl'
        data = export(catalog, fmt)
        out_file = self.config.exports_dir / f"catalog_{self.run_config.max_crossings}.{fmt}"
        out_file.write_bytes(data)
        logging.info(f"Exported {len(catalog)} entries to {out_file}")
        return EXIT_OK, data.decode('utf-8'), {'entries': len(catalog), 'file': str(out_file)}

    def run_census(self) -> tuple:
        cfg = self.run_config
        census = universe_census(cfg.strands or 2, cfg.max_crossings)
        data = census.to_dict()
        data['by_components'] = {str(k): v for k, v in sorted(data['by_components'].items())}
        if cfg.output_format == 'json':
            return EXIT_OK, json.dumps(data, indent=2) + '\n', data
        flat = {k: v for k, v in data.items() if k != 'by_components'}
        flat.update({f"k{k}": v for k, v in data['by_components'].items()})
        return EXIT_OK, self._single(flat), data

    ###################
    # Dispatch
    ###################
    def run(self) -> int:
        """
        Execute the configured command, print its output and record the run.

        Each ``run_<command>`` method returns ``(exit code, stdout text, summary)``.
        Parse errors and exhausted budgets become exit codes 2 and 3; anything else
        is logged and re-raised. The log handlers are closed whatever happens, and
        the summary (with the exit code and elapsed time) goes to the run manifest.

        Returns:
            int: The exit code for ``main``.
        """
        started = time.monotonic()
        handler = getattr(self, f"run_{self.run_config.command}")
        summary = {}
        try:
            code, output, summary = handler()
            sys.stdout.write(output)
        except BraidParseError as e:
            logging.error(f"Invalid braid {self.run_config.target!r}: {str(e)}")
            code = EXIT_USAGE
            summary = {'error': str(e), 'position': e.position}
        except ResourceBudgetExceeded as e:
            logging.error(f"Budget exhausted: {str(e)}")
            code = EXIT_BUDGET
            summary = {'error': str(e), 'lower_bound': e.lower_bound}
            if e.lower_bound is not None:
                sys.stdout.write(f">= {e.lower_bound}\n")
        except Exception as e:
            logging.error(f"Command {self.run_config.command} failed: {str(e)}")
            raise
        finally:
            self.close()
        summary.update({'exit_code': code, 'elapsed_seconds': round(time.monotonic() - started, 3)})
        self.manifest.record_run(self.run_config, summary)
        return code


###################
# Argument Parsing
###################
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='minbraid',
        description='Minimum braids for knots and links: enumeration, invariants and analyses.',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('braid', nargs='?', help='Braid word for invariants, unknot, rrp and column.')
    parser.add_argument('--max-crossings', type=int, default=6)
    parser.add_argument('--max-strands', type=int, default=None)
    parser.add_argument('--components', type=int, default=None)
    parser.add_argument('--format', dest='output_format', choices=FORMATS, default='text')
    parser.add_argument('--jobs', type=int, default=None)
    parser.add_argument('--fixture', default=None)
    parser.add_argument('--budget', type=int, default=None,
                        help='Largest number of crossing switches tried by unknot.')
    parser.add_argument('--moves', type=int, default=20_000, help='Words expanded by rrp.')
    parser.add_argument('--depth', type=int, default=6, help='Prepended crossings for column.')
    parser.add_argument('--strands', type=int, default=None, help='Strand count for census.')
    parser.add_argument('--crossings', type=int, default=None, help='Crossing count for census.')
    parser.add_argument('--max-vertices', type=int, default=10)
    parser.add_argument('--quiet', action='store_true', help='Disable progress bars.')
    parser.add_argument('--home', default=None, help='Directory for logs, runs and exports.')
    return parser


def _run_config(args: argparse.Namespace, env: dict) -> RunConfig:
    max_crossings = args.crossings if args.command == 'census' and args.crossings else args.max_crossings
    return RunConfig(
        command=args.command,
        max_crossings=max_crossings,
        max_strands=args.max_strands,
        components=args.components,
        output_format=args.output_format,
        jobs=args.jobs if args.jobs is not None else int(env['jobs'] or 1),
        fixture=args.fixture or env['fixture'],
        budget=args.budget if args.budget is not None else int(env['budget'] or 6),
        moves_budget=args.moves,
        depth=args.depth,
        strands=args.strands,
        max_vertices=args.max_vertices,
        progress=env['progress'] and not args.quiet,
        target=args.braid,
    ).validate()


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments and run one command.

    Returns:
        int: 0 on success, 1 on verification mismatch, 2 on usage errors and
            unparseable braids, 3 when a search budget ran out.
    """
    env = load_environment()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    needs_braid = args.command in ('invariants', 'unknot', 'rrp', 'column')
    if needs_braid and not args.braid:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"minbraid: error: {args.command} needs a braid word\n")
        return EXIT_USAGE
    try:
        run_config = _run_config(args, env)
    except ValueError as e:
        sys.stderr.write(f"minbraid: error: {str(e)}\n")
        return EXIT_USAGE
    return MinbraidRunner(run_config, args.home or env['home']).run()


if __name__ == "__main__":
    sys.exit(main())

###################
# Function Overview
###################
"""
MinbraidRunner:
- _setup_logging(): Dated error log plus stderr
- close(): Detach and close the log handlers
- run_invariants / run_unknot / run_rrp / run_column: Single braid queries
- run_enumerate / run_verify / run_export: Catalog builds
- run_trees / run_census: Reports that need no braid
- run(): Dispatch, exit code mapping and run manifest

Module functions:
- build_parser(): argparse definition
- main(argv): Entry point returning the exit code
"""
