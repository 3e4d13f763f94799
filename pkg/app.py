#!/usr/bin/env python3
"""
Almost Solutions in Permutations - Command Line Interface
Roots of permutations, checking and repairing epsilon-solutions of relation
systems, exhaustive small-degree oracles, representation checks and seeded
experiments.

Exit statuses: 0 success, 1 usage/IO/format error, 2 no exact root,
3 repair exhausted.
"""

import argparse
import logging
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import yaml

from src.equations import check_system_arity
from src.experiments import roots_experiment, stability_experiment, write_csv
from src.input_processor import InputProcessor
from src.oracle import brute_exact_root, nearest_exact_solution
from src.output_formatter import FORMATS, OutputFormatter
from src.roots import NoExactRootError, approx_root, exact_root, is_prime
from src.settings import configure_logging, load_config
from src.sofic import chain_defect, check_representation, separation_lower_bound
from src.stability import ExhaustedError, repair, repair_auto
from src.templates.presets import PresetTemplates

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_ROOT = 2
EXIT_EXHAUSTED = 3


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> List[int]:
    """Comma-separated integers; 1e4 style is accepted for round values."""
    values = []
    for part in text.split(','):
        part = part.strip()
        if not part:
            continue
        value = float(part) if 'e' in part.lower() else int(part)
        if value != int(value):
            raise argparse.ArgumentTypeError(f"not an integer: {part}")
        values.append(int(value))
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _float_list(text: str) -> List[float]:
    values = [float(part) for part in text.split(',') if part.strip()]
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _emit(formatter: OutputFormatter, text: str, out: Optional[str]) -> int:
    if out:
        return EXIT_OK if formatter.write_to_file(text, out) else EXIT_USAGE
    sys.stdout.write(text)
    return EXIT_OK


def cmd_root(args, config: Dict, formatter: OutputFormatter) -> int:
    f = InputProcessor(args.input).load_permutation()
    if args.mode == 'exact':
        if is_prime(args.p):
            g = exact_root(f, args.p)
        else:
            cap = config['oracle']['max_degree']
            if f.n > cap:
                raise ValueError(f"Exact roots for composite p={args.p} use the brute-force "
                                 f"oracle, limited to n <= {cap}")
            g = brute_exact_root(f, args.p, cap)
            if g is None:
                raise NoExactRootError(f"No {args.p}-th root exists")
        return _emit(formatter, formatter.render_permutation(g, args.format), args.out)

    result = approx_root(f, args.p)
    print(formatter.create_root_report(result))
    if args.tilde_out and not formatter.write_to_file(
            formatter.render_permutation(result.f_tilde, args.format), args.tilde_out):
        return EXIT_USAGE
    if args.out:
        return _emit(formatter, formatter.render_permutation(result.g, args.format), args.out)
    return EXIT_OK


def _load_system_and_tuple(args):
    system = InputProcessor(args.system).load_system()
    t = InputProcessor(args.perms).load_tuple()
    check_system_arity(system, t)
    return system, t


def cmd_check(args, config: Dict, formatter: OutputFormatter) -> int:
    system, t = _load_system_and_tuple(args)
    print(formatter.create_check_report(system, t))
    return EXIT_OK


def cmd_repair(args, config: Dict, formatter: OutputFormatter) -> int:
    system, t = _load_system_and_tuple(args)
    if args.radius is not None:
        result = repair(system, t, args.radius)
    else:
        m_max = args.m_max if args.m_max is not None else config['repair']['m_max']
        result = repair_auto(system, t, m_max)
    print(formatter.create_repair_report(result, system.k))
    text = formatter.render_tuple(result.repaired, args.format)
    if args.out:
        return _emit(formatter, text, args.out)
    print("repaired tuple:")
    sys.stdout.write(text)
    return EXIT_OK


def cmd_nearest(args, config: Dict, formatter: OutputFormatter) -> int:
    system, t = _load_system_and_tuple(args)
    oracle = config['oracle']
    witness, distance = nearest_exact_solution(
        system, t,
        max_degree=args.max_degree or oracle['nearest_max_degree'],
        max_arity=args.max_arity or oracle['nearest_max_arity'],
    )
    print(formatter.create_nearest_report(witness, distance))
    if args.out:
        return _emit(formatter, formatter.render_tuple(witness, args.format), args.out)
    return EXIT_OK


def cmd_represent(args, config: Dict, formatter: OutputFormatter) -> int:
    table = InputProcessor(args.table).load_table()
    _, phi = InputProcessor(args.phi).load_representation()
    eps = Fraction(args.eps) if args.eps is not None else None
    alpha = Fraction(args.alpha) if args.alpha is not None else None
    report = check_representation(table, phi, eps, alpha)
    print(formatter.create_representation_report(report, eps, alpha))
    if args.word:
        letters = args.word.split()
        print(f"chain defect along {' '.join(letters)}: "
              f"{formatter.format_rational(chain_defect(table, phi, letters))}")
        if args.delta is not None and alpha is not None and eps is not None:
            lower = separation_lower_bound(alpha, Fraction(args.delta), len(letters), eps)
            print(f"separation lower bound after repair: {formatter.format_rational(lower)}")
    return EXIT_OK


def cmd_experiment(args, config: Dict, formatter: OutputFormatter) -> int:
    defaults = config['experiments']
    if args.kind == 'roots':
        samples = args.samples or defaults['roots']['samples']
        frame = roots_experiment(args.p, args.n, samples, args.seed)
    else:
        samples = args.samples or defaults['stability']['samples']
        m_max = args.m_max if args.m_max is not None else config['repair']['m_max']
        frame = stability_experiment(args.preset, args.n, args.eps, samples, args.seed, m_max)
    write_csv(frame, args.out)
    return EXIT_OK


def _add_system_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument('--system', required=True, help='Relation system file')
    sub.add_argument('--perms', required=True, help='Permutation tuple file')
    sub.add_argument('--format', choices=FORMATS, default=None, help='Output permutation format')


def build_parser() -> CliArgumentParser:
    parser = CliArgumentParser(
        prog='almost-perm',
        description='Almost solutions of equations in permutations',
    )
    parser.add_argument('--config', help='YAML configuration file (default: config.yaml)')
    parser.add_argument('--log-level', help='Override the configured log level')
    commands = parser.add_subparsers(dest='command', required=True, parser_class=CliArgumentParser)

    p_root = commands.add_parser('root', help='Exact or approximate p-th roots')
    p_root.add_argument('mode', choices=['exact', 'approx'])
    p_root.add_argument('--p', type=int, required=True, help='Exponent')
    p_root.add_argument('--in', dest='input', required=True, help='Permutation file')
    p_root.add_argument('--out', help='Write the root here instead of standard output')
    p_root.add_argument('--tilde-out', help='approx: also write the repaired target here')
    p_root.add_argument('--format', choices=FORMATS, default=None)
    p_root.set_defaults(handler=cmd_root)

    p_check = commands.add_parser('check', help='Defect of a tuple on a system')
    _add_system_args(p_check)
    p_check.set_defaults(handler=cmd_check)

    p_repair = commands.add_parser('repair', help='Repair an epsilon-solution')
    _add_system_args(p_repair)
    p_repair.add_argument('--m-max', type=int, help='Largest radius to try')
    p_repair.add_argument('--radius', type=int, help='Try this single radius only')
    p_repair.add_argument('--out', help='Write the repaired tuple here')
    p_repair.set_defaults(handler=cmd_repair)

    p_nearest = commands.add_parser('nearest', help='Nearest exact solution by exhaustive search')
    _add_system_args(p_nearest)
    p_nearest.add_argument('--max-degree', type=int)
    p_nearest.add_argument('--max-arity', type=int)
    p_nearest.add_argument('--out', help='Write the witness tuple here')
    p_nearest.set_defaults(handler=cmd_nearest)

    p_rep = commands.add_parser('represent', help='Check an (F, eps, alpha)-representation')
    p_rep.add_argument('--table', required=True, help='Partial group table file')
    p_rep.add_argument('--phi', required=True, help='Labelled permutation file')
    p_rep.add_argument('--eps', help='Multiplicativity threshold, e.g. 1/10')
    p_rep.add_argument('--alpha', help='Separation threshold, e.g. 1/2')
    p_rep.add_argument('--word', help='Space-separated labels for a chain-defect check')
    p_rep.add_argument('--delta', help='Repair distance for the separation lower bound')
    p_rep.set_defaults(handler=cmd_represent)

    p_exp = commands.add_parser('experiment', help='Seeded experiments as CSV')
    exp_kinds = p_exp.add_subparsers(dest='kind', required=True, parser_class=CliArgumentParser)
    p_exp_roots = exp_kinds.add_parser('roots', help='Approximate-root defect against n')
    p_exp_roots.add_argument('--p', type=int, required=True)
    p_exp_roots.add_argument('--n', type=_int_list, required=True, help='Comma-separated degrees')
    p_exp_stab = exp_kinds.add_parser('stability', help='Repair distance against corruption')
    p_exp_stab.add_argument('--preset', required=True, choices=PresetTemplates.names())
    p_exp_stab.add_argument('--n', type=int, required=True)
    p_exp_stab.add_argument('--eps', type=_float_list, required=True, help='Comma-separated levels')
    p_exp_stab.add_argument('--m-max', type=int)
    for sub in (p_exp_roots, p_exp_stab):
        sub.add_argument('--samples', type=int)
        sub.add_argument('--seed', type=int, required=True)
        sub.add_argument('--out', help='CSV file (default: standard output)')
        sub.set_defaults(handler=cmd_experiment)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        configure_logging(config, args.log_level)
    except (OSError, ValueError, yaml.YAMLError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    formatter = OutputFormatter(config)
    handler: Callable = args.handler
    try:
        return handler(args, config, formatter)
    except NoExactRootError as e:
        print(f"no exact root: {e}", file=sys.stderr)
        return EXIT_NO_ROOT
    except ExhaustedError as e:
        print(f"repair exhausted: {e}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (OSError, ValueError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
