# Copyright (c) 2024, the gemkit authors
#
# All rights reserved.
#
# See the file "LICENCE" for information about the copyright
# and warranty status of this software.

'''Manifold conditions of built gems.'''

from itertools import count

import attr
from aiorpcx import run_in_thread

from gemkit.lib.gem import extract_residue_gem, surface_euler
from gemkit.lib.moves import SPHERE_CERTIFIED, Simplifier
from gemkit.lib.util import OldTaskGroup, class_logger

UNKNOWN = 'unknown'


@attr.s(slots=True, frozen=True)
class ResidueCheck:
    color = attr.ib()
    index = attr.ib()
    order = attr.ib()
    chis = attr.ib(converter=tuple)    # (colour dropped, direct, via genus)
    verdict = attr.ib()

    @property
    def surfaces_ok(self):
        return all(direct == via == 2 for _c, direct, via in self.chis)

    @property
    def certified(self):
        return self.verdict == SPHERE_CERTIFIED


@attr.s(slots=True)
class CheckReport:
    color_count = attr.ib()
    residues = attr.ib()

    @property
    def singular_colors(self):
        return sorted({r.color for r in self.residues if not r.certified})

    @property
    def surfaces_ok(self):
        return all(r.surfaces_ok for r in self.residues)

    @property
    def chi_agrees(self):
        return all(direct == via for r in self.residues for _c, direct, via in r.chis)

    @property
    def passed(self):
        '''3-residues are spheres and only the top colour may be singular.'''
        return self.surfaces_ok and set(self.singular_colors) <= {self.color_count - 1}

    def to_json(self):
        return {
            'passed': self.passed,
            'singular_colors': self.singular_colors,
            'surfaces_ok': self.surfaces_ok,
            'residues': [{'color': r.color, 'index': r.index, 'order': r.order,
                          'surfaces_ok': r.surfaces_ok, 'verdict': r.verdict}
                         for r in self.residues],
        }


class ManifoldChecker:
    '''Checks every ĉ-residue: its 3-residues must be spheres, and greedy
    reduction tries to certify it as a sphere.'''

    def __init__(self, budget=100_000):
        self.logger = class_logger(__name__, self.__class__.__name__)
        self.simplifier = Simplifier(budget=budget)

    def check_residue(self, color, index, residue):
        chis = []
        if residue.color_count == 3:
            chis.append((None, *surface_euler(residue)))
        else:
            for drop in range(residue.color_count):
                for surface in extract_residue_gem(residue, drop):
                    direct, via = surface_euler(surface)
                    chis.append((drop, direct, via))
        verdict = self.simplifier.reduce(residue).verdict
        if verdict != SPHERE_CERTIFIED:
            verdict = UNKNOWN
        self.logger.debug(f'colour {color} residue {index}: order {residue.order} '
                          f'{verdict}')
        return ResidueCheck(color, index, residue.order, chis, verdict)

    def _jobs(self, g):
        for color in range(g.color_count):
            for index, residue in zip(count(), extract_residue_gem(g, color)):
                yield color, index, residue

    def check(self, g):
        g.require_valid()
        checks = [self.check_residue(*job) for job in self._jobs(g)]
        return CheckReport(g.color_count, checks)

    async def check_concurrently(self, g):
        g.require_valid()
        async with OldTaskGroup() as group:
            tasks = [await group.spawn(run_in_thread, self.check_residue, *job)
                     for job in self._jobs(g)]
        return CheckReport(g.color_count, [task.result() for task in tasks])


def manifold_check(g, budget=100_000):
    return ManifoldChecker(budget).check(g)


def boundary_check(g, lam_expected, budget=100_000, report=None):
    '''g less its top colour is lam_expected, and only the top colour is
    singular.'''
    top = g.n
    if g.order != lam_expected.order:
        return False
    restricted = {v: slots[:top] for v, slots in g.adj.items()}
    if restricted != lam_expected.adj:
        return False
    report = report or manifold_check(g, budget)
    return report.passed


def closed_case(report):
    '''True when even the top colour's residues are certified spheres: the
    gem then represents a closed manifold.'''
    return not report.singular_colors
