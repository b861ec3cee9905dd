#!/usr/bin/env python3
"""
Diagram Spaces CLI Tool

Runs the verification suites and prints a human summary or a JSON report.
"""

import sys
import json
import logging
import argparse
from pathlib import Path
from typing import Any, Dict, List

from diagram_spaces.core.config import SuiteConfig
from diagram_spaces.core.errors import UnknownSuiteError
from diagram_spaces.core.fincat import category_by_name
from diagram_spaces.core.fixtures import validate_corpus
from diagram_spaces.core.models import SuiteReport
from diagram_spaces.core.sset import homology, nerve
from diagram_spaces.suites import list_suites, run_suite


# ANSI color codes
class Colors:
    RESET = '\033[0m'
    BOLD = '\033[1m'
    DIM = '\033[2m'

    # Check outcomes
    PASS = '\033[92m'      # Green
    FAIL = '\033[91m'      # Red
    WITNESS = '\033[93m'   # Yellow

    # UI elements
    HEADER = '\033[1;36m'  # Bold Cyan
    LABEL = '\033[90m'     # Gray
    ERROR = '\033[91m'     # Red


def colorize(text: str, color: str, use_color: bool = True) -> str:
    """Add color to text if color is enabled"""
    if not use_color:
        return text
    return f"{color}{text}{Colors.RESET}"


# flag dest -> SuiteConfig field
CONFIG_FLAGS = {
    'max_degree': 'max_degree',
    'dim': 'dim_cap',
    'arity_cap': 'arity_cap',
    'p_max': 'p_max',
    'seed': 'seed',
    'fixtures': 'fixtures_dir',
    'format': 'output_format',
    'out': 'out_path',
}


def config_from_args(args, environ=None) -> SuiteConfig:
    """Flags beat DSPACE_* variables; both beat the suite defaults applied later"""
    given = {field: getattr(args, dest) for dest, field in CONFIG_FLAGS.items() if getattr(args, dest) is not None}
    base = SuiteConfig(suite=args.suite, use_color=args.color, **given)
    return SuiteConfig.from_env(base, environ, explicit=set(given)).validate()


def format_witness(witness: Any, limit: int = 160) -> str:
    text = json.dumps(witness, default=repr, sort_keys=True, ensure_ascii=False)
    return text if len(text) <= limit else text[:limit - 3] + '...'


def print_report(report: SuiteReport, use_color: bool = True):
    """Print a one-line-per-check summary"""
    print(colorize("═" * 80, Colors.HEADER, use_color))
    print(colorize(f"SUITE: {report.suite}", Colors.HEADER, use_color))
    print(colorize("═" * 80, Colors.HEADER, use_color))
    caps = ', '.join(f"{k}={v}" for k, v in report.config.items() if k != 'suite' and v is not None)
    print(f"Config:     {caps}")
    if report.label:
        print(colorize(f"Label:      {report.label}", Colors.DIM, use_color))
    print(colorize("─" * 80, Colors.DIM, use_color))

    for check in report.checks:
        if check.passed:
            print(f"{colorize('✓', Colors.PASS, use_color)} {check.name}")
            continue
        print(f"{colorize('✗', Colors.FAIL, use_color)} {check.name}")
        for witness in check.witnesses[:3]:
            print(colorize(f"    witness: {format_witness(witness)}", Colors.WITNESS, use_color))
        if len(check.witnesses) > 3:
            print(colorize(f"    ... {len(check.witnesses) - 3} more", Colors.DIM, use_color))

    failed = sum(1 for c in report.checks if not c.passed)
    print(colorize("─" * 80, Colors.DIM, use_color))
    if failed:
        print(colorize(f"✗ {failed}/{len(report.checks)} checks failed", Colors.FAIL, use_color))
    else:
        print(colorize(f"✓ All {len(report.checks)} checks passed", Colors.PASS, use_color))


def cmd_run(args) -> int:
    config = config_from_args(args)
    report = run_suite(config)

    if config.out_path:
        out = Path(config.out_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(report.to_json() + '\n', encoding='utf-8')

    if config.output_format == 'json':
        print(report.to_json())
    else:
        print_report(report, config.use_color)
        if config.out_path:
            print(colorize(f"Report written to {config.out_path}", Colors.DIM, config.use_color))
    return report.exit_status


def cmd_list(args) -> int:
    suites = list_suites(args.module)
    if args.format == 'json':
        print(json.dumps(suites, indent=2, sort_keys=True))
        return 0

    print(colorize(f"{'Suite':<26} {'Module':<12} {'Description'}", Colors.HEADER, args.color))
    print(colorize("─" * 80, Colors.DIM, args.color))
    for suite in suites:
        module = colorize(f"{suite['module']:<12}", Colors.LABEL, args.color)
        print(f"{suite['name']:<26} {module} {suite['description']}")
    print(colorize(f"\nTotal: {len(suites)} suites", Colors.DIM, args.color))
    return 0


def cmd_homology(args) -> int:
    if args.dim < 1:
        raise ValueError(f"--dim must be positive, got {args.dim}")
    cat = category_by_name(args.cat, args.max_degree)
    N = nerve(cat, args.dim)
    groups = homology(N, args.dim - 1)

    if args.format == 'json':
        print(json.dumps(groups.to_dict(), indent=2, sort_keys=True))
        return 0

    print(colorize(f"Nerve of {args.cat}<={args.max_degree} (simplices up to dimension {args.dim})",
                   Colors.HEADER, args.color))
    for d in sorted(groups.ranks):
        torsion = ''.join(f" + Z/{t}" for t in groups.torsion.get(d, []))
        print(f"  H_{d} = Z^{groups.ranks[d]}{torsion}")
    return 0


def cmd_validate(args) -> int:
    root = Path(args.fixtures) if args.fixtures else SuiteConfig(suite='validate').fixtures_path
    errors: Dict[str, List[str]] = validate_corpus(root)
    failed = [family for family, problems in errors.items() if problems]

    for family, problems in errors.items():
        if problems:
            print(f"{colorize('✗', Colors.FAIL, args.color)} {family}")
            for problem in problems:
                print(f"    - {problem}")
        else:
            print(f"{colorize('✓', Colors.PASS, args.color)} {family}")

    if failed:
        print(colorize(f"\n✗ {len(failed)}/{len(errors)} fixture families failed", Colors.FAIL, args.color))
        return 1
    print(colorize(f"\n✓ All {len(errors)} fixture families decoded from {root}", Colors.PASS, args.color))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='dspace',
        description='Diagram spaces - verification suites for I- and J-diagrams',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  dspace list                                   List all suites
  dspace run --suite j-category-laws            Run with the suite's default caps
  dspace run --suite flatness --max-degree 3    Override a cap
  dspace run --suite logification --format json --out report.json
  dspace homology --cat I --max-degree 3 --dim 3
  dspace validate                               Check the fixture corpus

Environment:
  DSPACE_MAX_DEGREE, DSPACE_DIM, DSPACE_ARITY_CAP, DSPACE_P_MAX, DSPACE_SEED,
  DSPACE_FIXTURES, DSPACE_FORMAT, DSPACE_OUT override the suite defaults;
  command-line flags override both.
        """
    )

    subparsers = parser.add_subparsers(dest='command', help='Command to run')

    # Common arguments for all commands
    def add_common_args(p):
        p.add_argument('--no-color', dest='color', action='store_false', default=True,
                      help='Disable colored output')
        p.add_argument('--debug', action='store_true', help='Debug logging and tracebacks')
        p.add_argument('--verbose', '-v', action='store_true', help='Info logging')

    # run command
    run_parser = subparsers.add_parser('run', help='Run a verification suite')
    run_parser.add_argument('--suite', required=True, help='Suite name (see dspace list)')
    run_parser.add_argument('--max-degree', type=int, help='Truncation degree of I or J')
    run_parser.add_argument('--dim', type=int, help='Simplicial dimension cap')
    run_parser.add_argument('--arity-cap', type=int, help='Operad arity cap / truncation')
    run_parser.add_argument('--p-max', type=int, help='Highest spectrum level evaluated')
    run_parser.add_argument('--seed', type=int, help='Seed for random fixtures (default: 0)')
    run_parser.add_argument('--fixtures', help='Fixture corpus directory')
    run_parser.add_argument('--format', choices=['text', 'json'], help='Output format (default: text)')
    run_parser.add_argument('--out', help='Also write the JSON report to this path')
    add_common_args(run_parser)

    # list command
    list_parser = subparsers.add_parser('list', help='List suites')
    list_parser.add_argument('--format', choices=['text', 'json'], default='text')
    list_parser.add_argument('--module', help='Only suites of modules with this prefix')
    add_common_args(list_parser)

    # homology command
    homology_parser = subparsers.add_parser('homology', help='Homology of a truncated nerve')
    homology_parser.add_argument('--cat', choices=['I', 'J'], required=True)
    homology_parser.add_argument('--max-degree', type=int, required=True)
    homology_parser.add_argument('--dim', type=int, default=3, help='Simplicial dimension cap (default: 3)')
    homology_parser.add_argument('--format', choices=['text', 'json'], default='text')
    add_common_args(homology_parser)

    # validate command
    validate_parser = subparsers.add_parser('validate', help='Validate the fixture corpus')
    validate_parser.add_argument('--fixtures', help='Fixture corpus directory')
    add_common_args(validate_parser)

    return parser


COMMANDS = {
    'run': cmd_run,
    'list': cmd_list,
    'homology': cmd_homology,
    'validate': cmd_validate,
}


def main(argv=None):
    """Main CLI entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        sys.exit(0)

    if args.debug or args.verbose:
        logging.basicConfig(level=logging.DEBUG if args.debug else logging.INFO, stream=sys.stderr,
                            format='%(levelname)s %(name)s: %(message)s')

    # Route to command handlers
    try:
        status = COMMANDS[args.command](args)
    except UnknownSuiteError as e:
        parser.print_usage(sys.stderr)
        print(colorize(f"✗ {e.args[0]} (see dspace list)", Colors.ERROR, args.color), file=sys.stderr)
        sys.exit(2)
    except ValueError as e:
        print(colorize(f"✗ {str(e)}", Colors.ERROR, args.color), file=sys.stderr)
        if args.debug:
            raise
        sys.exit(1)
    except Exception as e:
        print(colorize(f"✗ Error: {str(e)}", Colors.ERROR, args.color), file=sys.stderr)
        if args.debug:
            raise
        sys.exit(1)
    sys.exit(status)


if __name__ == '__main__':
    main()
