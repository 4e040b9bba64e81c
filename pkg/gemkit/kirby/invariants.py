# Copyright (c) 2024, the gemkit authors
#
# All rights reserved.
#
# See the file "LICENCE" for information about the copyright
# and warranty status of this software.

'''Upper bounds for regular genus and gem-complexity, set against the
witnesses carried by a built gem.'''

import attr

from gemkit.lib.gem import (
    CyclicPermutation, gem_complexity, genus_min, genus_table, genus_wrt, pair_counts,
)
from gemkit.lib.moves import (
    MoveError, eliminate_listed_dipoles, greedy_reduce, merge_2hat_residues,
)
from gemkit.lib.util import class_logger


class PlanMissing(Exception):
    '''A Kirby-case report needs a marker plan.'''


FRAMED_EPS = CyclicPermutation.of((1, 0, 2, 3, 4))
LAMBDA_EPS = CyclicPermutation.of((1, 0, 2, 3))


@attr.s(slots=True, frozen=True)
class Bound:
    name = attr.ib()
    value = attr.ib()
    witness = attr.ib()
    applicable = attr.ib(default=True)

    @property
    def holds(self):
        return self.witness is None or self.witness <= self.value

    def row(self):
        return (self.name, self.value, self.witness, self.applicable)


@attr.s(slots=True)
class InvariantReport:
    order = attr.ib()
    genus = attr.ib()              # [(eps, rho)]
    pairs = attr.ib()              # {(i, j): g_ij}
    bounds = attr.ib()             # [Bound]
    figures = attr.ib(factory=dict)
    singular_colors = attr.ib(default=None)
    kirby = attr.ib(default=False)
    trivial_knot = attr.ib(default=False)

    def bound(self, name):
        for bound in self.bounds:
            if bound.name == name:
                return bound
        raise KeyError(name)

    def to_json(self):
        return {
            'order': self.order,
            'case': 'kirby' if self.kirby else 'framed',
            'trivial_knot': self.trivial_knot,
            'genus': {str(eps): rho for eps, rho in self.genus},
            'pairs': {f'{i}{j}': n for (i, j), n in sorted(self.pairs.items())},
            'bounds': {b.name: {'value': b.value, 'witness': b.witness,
                                'applicable': b.applicable, 'holds': b.holds}
                       for b in self.bounds},
            'figures': self.figures,
            'singular_colors': self.singular_colors,
        }

    @classmethod
    def from_json(cls, obj):
        genus = [(CyclicPermutation.of(int(c) for c in key.strip('()').split(',')), rho)
                 for key, rho in obj['genus'].items()]
        genus.sort()
        pairs = {(int(key[0]), int(key[1])): n for key, n in obj['pairs'].items()}
        bounds = [Bound(name, b['value'], b['witness'], b['applicable'])
                  for name, b in obj['bounds'].items()]
        return cls(obj['order'], genus, pairs, bounds, obj['figures'],
                   obj['singular_colors'], obj['case'] == 'kirby', obj['trivial_knot'])


def _sum_t_bar(aug):
    return sum(t for t in aug.t_bar if t is not None)


class Bounds:
    '''Computes the bounds and witnesses of one build.'''

    def __init__(self, result):
        self.logger = class_logger(__name__, self.__class__.__name__)
        self.result = result
        self.d = result.diagram
        self.aug = result.aug

    def _common(self):
        gamma = self.result.gamma
        rho, eps = genus_min(gamma)
        figures = {
            's': self.d.s, 'l': self.d.l, 'm': self.d.m,
            'sum_t_bar': _sum_t_bar(self.aug),
            'curls': self.aug.curl_count(),
            'm_alpha': self.d.m_alpha,
            'm_alpha_augmented': self.aug.m_alpha_augmented(),
            'genus_min': rho, 'genus_min_eps': str(eps),
            'genus_framed_eps': genus_wrt(gamma, FRAMED_EPS),
            'genus_lambda': genus_wrt(self.result.lam, LAMBDA_EPS),
        }
        return gamma, figures

    def _merged_complexity(self, gamma, figures):
        try:
            merged = merge_2hat_residues(gamma)
        except MoveError as e:
            self.logger.warning(f'2̂-residues not merged: {e}')
            return None
        figures['merged_order'] = merged.order
        return gem_complexity(merged)

    def _reduced_complexity(self, gamma, figures):
        reduction = greedy_reduce(gamma, singular=(gamma.n, ))
        figures['reduced_order'] = reduction.gem.order
        return gem_complexity(reduction.gem)

    def _report(self, gamma, bounds, figures, kirby):
        report = InvariantReport(gamma.order, genus_table(gamma), pair_counts(gamma),
                                 bounds, figures, kirby=kirby,
                                 trivial_knot=self.d.crossing_free)
        for bound in bounds:
            if bound.applicable and not bound.holds:
                self.logger.warning(f'witness {bound.witness} exceeds {bound.name} '
                                    f'= {bound.value}')
        return report

    def framed(self):
        if self.d.m:
            raise PlanMissing('the diagram has dotted components; use the Kirby bounds')
        d = self.d
        gamma, figures = self._common()
        s, l, t = d.s, d.l, figures['sum_t_bar']
        genus = figures['genus_framed_eps']
        # the face bound is realized by a reduced graph that is not built;
        # only a crossing-free diagram has Γ itself as its witness
        figures['omega_built'] = False
        trivial = d.crossing_free
        if trivial:
            k_witness = self._reduced_complexity(gamma, figures)
        else:
            k_witness = self._merged_complexity(gamma, figures)
        bounds = [
            Bound('genus_faces', d.m_alpha + l, figures['genus_min'] if trivial else None),
            Bound('genus_crossings', s + l + 1, genus),
            Bound('k_framed', 4 * s - l + 2 * t, k_witness, applicable=not trivial),
        ]
        return self._report(gamma, bounds, figures, False)

    def kirby(self):
        plan = self.result.plan
        d = self.d
        if not d.m:
            raise PlanMissing('the diagram has no dotted component; use the framed bounds')
        if plan is None:
            raise PlanMissing('the Kirby bounds need a marker plan')
        assert plan.u <= plan.s_bar, f'u = {plan.u} exceeds s_bar = {plan.s_bar}'
        gamma, figures = self._common()
        s, l, m, t = d.s, d.l, d.m, figures['sum_t_bar']
        s_bar, u = plan.s_bar, plan.u
        figures.update(u=u, s_bar=s_bar)
        # two {0,1,4} 3-dipoles along each dotted segment between over-passages
        over = self.aug.dotted_over_segments()
        pairs = [pair for seg in over for pair in self.result.registry.segment_pairs[seg]]
        swept, count = eliminate_listed_dipoles(gamma, pairs, (0, 1, 4))
        figures['framed_overcrossings'] = sum(not d.components[c.over].dotted
                                              for c in d.crossings)
        figures['swept_dipoles'] = count
        figures['swept_order'] = swept.order
        figures['expected_swept_order'] = gamma.order - 4 * len(over)
        if swept.order != figures['expected_swept_order']:
            self.logger.warning(f'3-dipole sweep reached order {swept.order:,d}, '
                                f'not {figures["expected_swept_order"]:,d}')
        genus = figures['genus_framed_eps']
        bounds = [
            Bound('genus_undercrossings', s + (l - m) + u + 1, genus),
            Bound('genus_highlight', s + s_bar + (l - m) + 1, genus),
            Bound('k_kirby', 2 * s + 2 * s_bar + 2 * m - 1 + 2 * t,
                  gem_complexity(swept)),
        ]
        return self._report(gamma, bounds, figures, True)


def bounds_framed(result):
    return Bounds(result).framed()


def bounds_kirby(result):
    return Bounds(result).kirby()


def invariant_report(result):
    return bounds_kirby(result) if result.diagram.m else bounds_framed(result)
