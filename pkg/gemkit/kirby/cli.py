# Copyright (c) 2024, the gemkit authors
#
# All rights reserved.
#
# See the file "LICENCE" for information about the copyright
# and warranty status of this software.

'''Command-line interface: build, export, verify, invariants, simplify
and moves.'''

import argparse
import asyncio
import logging
import os
import sys
import time

from gemkit.kirby.builder import BuildError, Builder, parse_groups, parse_sites
from gemkit.kirby.diagram import DiagramError, PlanError, diagram_report, parse_kirby
from gemkit.kirby.env import Env
from gemkit.kirby.invariants import PlanMissing, invariant_report
from gemkit.kirby.verify import ManifoldChecker, boundary_check
from gemkit.lib import text
from gemkit.lib.env_base import EnvBase
from gemkit.lib.export import dot_text, gluings_text
from gemkit.lib.gem import GemError, parse_gem, serialize_gem
from gemkit.lib.moves import MoveError, MoveLog, Simplifier, logged_smooth, logged_triad
from gemkit.lib.util import CompactFormatter, json_serialize, make_logger, write_atomic

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_PLAN, EXIT_BUILD = 0, 1, 2, 3, 4


def _read(path):
    with open(path) as f:
        return f.read()


def _target(path, given, suffix):
    return given or os.path.splitext(path)[0] + suffix


def _print_lines(lines):
    for line in lines:
        print(line)


def command_build(args, env):
    source = _read(args.diagram)
    if args.pin:
        source += '\n' + '\n'.join(args.pin) + '\n'
    d = parse_kirby(source)
    result = Builder(plan_budget=env.plan_budget).build(d)
    base = _target(args.diagram, args.out, '')
    write_atomic(base + '.gem', serialize_gem(
        result.gamma, comments=[f'built from {os.path.basename(args.diagram)}']))
    write_atomic(base + '.sites', result.sites_text())
    write_atomic(base + '.groups', result.groups_text())
    report = diagram_report(result.aug, result.plan)
    report['order'] = result.gamma.order
    write_atomic(base + '.report.json', json_serialize(report) + '\n')
    if args.lambda_out:
        write_atomic(args.lambda_out, serialize_gem(result.lam))
    if args.report:
        print(json_serialize(report))
    return EXIT_OK


def command_export(args, env):
    g = parse_gem(_read(args.gem))
    g.require_valid()
    if args.format == 'gluings':
        output, suffix = gluings_text(g), '.gluings'
    else:
        groups_path = args.groups or _target(args.gem, None, '.groups')
        groups = None
        if args.groups or os.path.exists(groups_path):
            groups = parse_groups(_read(groups_path))
        output, suffix = dot_text(g, groups), '.dot'
    write_atomic(_target(args.gem, args.out, suffix), output)
    return EXIT_OK


def command_verify(args, env):
    g = parse_gem(_read(args.gem))
    checker = ManifoldChecker(args.budget or env.certify_budget)
    report = checker.check(g)
    result = report.to_json()
    passed = report.passed
    if args.lam:
        passed = passed and boundary_check(g, parse_gem(_read(args.lam)), report=report)
        result['boundary'] = passed
    if args.json:
        print(json_serialize(result))
    else:
        _print_lines(text.residue_lines(report.residues))
    return EXIT_OK if passed else EXIT_CHECK


def command_invariants(args, env):
    d = parse_kirby(_read(args.diagram))
    result = Builder(plan_budget=env.plan_budget).build(d)
    report = invariant_report(result)
    if args.json:
        print(json_serialize(report.to_json()))
        return EXIT_OK
    _print_lines(text.genus_lines(report.genus))
    print()
    _print_lines(text.pair_count_lines(report.pairs, result.gamma.color_count))
    print()
    _print_lines(text.bounds_lines([bound.row() for bound in report.bounds]))
    return EXIT_OK


def command_simplify(args, env):
    g = parse_gem(_read(args.gem))
    g.require_valid()
    out = _target(args.gem, args.out, '.simplified.gem')
    if args.replay:
        g = MoveLog.parse(_read(args.replay)).replay(g)
        write_atomic(out, serialize_gem(g))
        return EXIT_OK
    simplifier = Simplifier(budget=env.simplify_budget, time_limit=env.simplify_time_limit,
                            certify_budget=env.certify_budget)
    start = time.monotonic()
    if env.simplify_restarts > 1:
        base = env.simplify_seed or 0
        seeds = [base + k for k in range(env.simplify_restarts)]
        reduction = asyncio.run(simplifier.reduce_restarts(g, seeds))
    else:
        reduction = simplifier.reduce(g, env.simplify_seed)
    write_atomic(out, serialize_gem(reduction.gem, comments=[
        f'verdict {reduction.verdict}', f'seed {reduction.seed}']))
    write_atomic(out + '.log', reduction.log.serialize())
    _print_lines(text.reduction_lines(reduction, time.monotonic() - start))
    return EXIT_OK


def command_moves(args, env):
    g = parse_gem(_read(args.gem))
    sites = {site.component: site for site in parse_sites(_read(args.sites))}
    component = args.triad - 1
    if component not in sites:
        raise MoveError(f'no site for component {args.triad}')
    log = MoveLog()
    if g.color_count == 4:
        # a boundary graph: only the quadricolor itself can be smoothed
        if args.direction != 'smooth':
            raise MoveError('a 4-coloured gem can only be smoothed')
        g = logged_smooth(g, sites[component], log)
    else:
        g = logged_triad(g, sites[component], args.direction, log)
    out = _target(args.gem, args.out, f'.{args.direction}.gem')
    write_atomic(out, serialize_gem(g))
    write_atomic(out + '.log', log.serialize())
    return EXIT_OK


def make_parser():
    parser = argparse.ArgumentParser(
        prog='gemkit', description='Build and study gems of 4-manifolds given by '
        'framed links and Kirby diagrams.')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('build', help='build the 5-coloured gem of a .kd diagram')
    p.add_argument('diagram')
    p.add_argument('--out', help='output base name')
    p.add_argument('--pin', action='append', default=[],
                   help='extra Xmark/Y/H record, e.g. "Xmark component=2 after_arc=5"')
    p.add_argument('--lambda-out', dest='lambda_out',
                   help='also write the 4-coloured graph here')
    p.add_argument('--report', action='store_true', help='print the diagram report')
    p.set_defaults(func=command_build)

    p = sub.add_parser('export', help='export a gem')
    p.add_argument('gem')
    p.add_argument('--format', choices=('gluings', 'dot'), default='gluings')
    p.add_argument('--groups', help='gadget groups for DOT clusters; defaults to '
                   'the .groups file written next to the gem by build')
    p.add_argument('--out')
    p.set_defaults(func=command_export)

    p = sub.add_parser('verify', help='check the manifold conditions')
    p.add_argument('gem')
    p.add_argument('--lambda', dest='lam', help='expected boundary graph')
    p.add_argument('--budget', type=int)
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=command_verify)

    p = sub.add_parser('invariants', help='bounds and witnesses of a diagram')
    p.add_argument('diagram')
    p.add_argument('--json', action='store_true')
    p.set_defaults(func=command_invariants)

    p = sub.add_parser('simplify', help='greedy dipole elimination')
    p.add_argument('gem')
    p.add_argument('--budget', type=int)
    p.add_argument('--seed', type=int)
    p.add_argument('--restarts', type=int)
    p.add_argument('--replay', help='apply a move log instead')
    p.add_argument('--out')
    p.set_defaults(func=command_simplify)

    p = sub.add_parser('moves', help='exchange the triad at a quadricolor')
    p.add_argument('gem')
    p.add_argument('--sites', required=True)
    p.add_argument('--triad', type=int, required=True, metavar='COMPONENT')
    p.add_argument('--direction', choices=('attach', 'smooth'), required=True)
    p.add_argument('--out')
    p.set_defaults(func=command_moves)
    return parser


EXIT_CODES = (
    ((DiagramError, GemError, EnvBase.Error, OSError), EXIT_INPUT),
    ((PlanError, PlanMissing), EXIT_PLAN),
    ((BuildError, MoveError), EXIT_BUILD),
)


def main(argv=None):
    args = make_parser().parse_args(argv)
    handler = logging.StreamHandler()
    handler.setFormatter(CompactFormatter('%(levelname)s:%(name)s:%(message)s'))
    logger = make_logger('gemkit', handler=handler, level='INFO')
    try:
        env = Env(simplify_budget=getattr(args, 'budget', None),
                  simplify_seed=getattr(args, 'seed', None),
                  simplify_restarts=getattr(args, 'restarts', None))
        logger.setLevel(env.log_level)
        return args.func(args, env)
    except Exception as e:
        for classes, code in EXIT_CODES:
            if isinstance(e, classes):
                logger.error(f'{e.__class__.__name__}: {e}')
                return code
        raise
    finally:
        logger.removeHandler(handler)


if __name__ == '__main__':
    sys.exit(main())
