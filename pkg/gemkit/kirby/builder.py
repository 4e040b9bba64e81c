# Copyright (c) 2024, the gemkit authors
#
# All rights reserved.
#
# See the file "LICENCE" for information about the copyright
# and warranty status of this software.

'''Pasting gadgets into the 4-coloured graph of a diagram and adding the
colour-4 edges of the framed and Kirby constructions.'''

import time

import attr

from gemkit.kirby.diagram import RIGHT, plan_curls, plan_markers
from gemkit.kirby.gadgets import L, R, VertexMap, lambda_edges
from gemkit.lib.gem import Gem, connected_blocks, residue_count
from gemkit.lib.moves import MoveError, QuadricolorSite, cap_off, quadricolor_ok
from gemkit.lib.util import class_logger, formatted_time, int_list


class BuildError(Exception):
    '''Base class of build postcondition failures.'''


class PastingMismatch(BuildError):
    '''Gadgets did not paste into a valid gem.'''


class NoQuadricolor(BuildError):
    '''A planned quadricolor curl fails the structural predicate.'''


class PlanStale(BuildError):
    '''A marker plan refers to segments of another diagram.'''


class DoubleAssignment(BuildError):
    '''A vertex would receive two colour-4 edges.'''


@attr.s(slots=True)
class Registry:
    '''What the diagram's parts became in the 4-coloured graph.'''
    vmap = attr.ib()
    face_cycles = attr.ib()        # face -> {1,2}-cycle
    component_cycles = attr.ib()   # component -> two {0,3}-cycles
    segment_pairs = attr.ib()      # segment -> its two 1-edges

    @property
    def aug(self):
        return self.vmap.aug


@attr.s(slots=True)
class BuildResult:
    diagram = attr.ib()
    aug = attr.ib()
    plan = attr.ib()
    lam = attr.ib()
    registry = attr.ib()
    sites = attr.ib()
    gamma = attr.ib()

    def sites_text(self):
        return ''.join(f'site {j + 1} ' + ' '.join(str(v) for v in site.vertices) + '\n'
                       for j, site in sorted(self.sites.items()))

    def groups_text(self):
        return ''.join(f'group {v} {label}\n'
                       for v, label in sorted(self.registry.vmap.groups().items()))


def parse_sites(text):
    '''Sites from a .sites sidecar: "site <component> <P0> ... <P5>".'''
    sites = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts or parts[0].startswith('#'):
            continue
        try:
            if parts[0] != 'site' or len(parts) != 8:
                raise ValueError
            component, *vertices = int_list(','.join(parts[1:]))
        except ValueError:
            raise MoveError(f'line {lineno}: bad site record {line!r}') from None
        sites.append(QuadricolorSite(component - 1, vertices))
    return sites


def parse_groups(text):
    '''{vertex: gadget label} from a .groups sidecar: "group <vertex> <label>".'''
    groups = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split(None, 2)
        if not parts or parts[0].startswith('#'):
            continue
        if parts[0] != 'group' or len(parts) != 3 or not parts[1].isdigit():
            raise BuildError(f'line {lineno}: bad group record {line!r}')
        groups[int(parts[1])] = parts[2].strip()
    return groups


def _block_containing(blocks, v):
    for block in blocks:
        if v in block:
            return block
    raise AssertionError(v)


def _face_vertex(vmap, face):
    '''A vertex on the {1,2}-cycle of face.'''
    aug = vmap.aug
    if face.corners:
        x, i = face.corners[0]
        return vmap.vid(x, i, L)
    # crossing-free: a curl's corner 0 faces the right of its strand
    node = aug.nodes[0].index
    side = face.sides[0][1]
    return vmap.vid(node, 0 if side == RIGHT else 1, L)


class Builder:
    '''Builds the 4-coloured graph of an augmented diagram and its
    5-coloured extensions.'''

    def __init__(self, plan_budget=100_000):
        self.logger = class_logger(__name__, self.__class__.__name__)
        self.plan_budget = plan_budget

    def build_lambda(self, aug):
        vmap = VertexMap(aug)
        lam = Gem.from_edges(4, lambda_edges(vmap), vertices=range(vmap.order))
        report = lam.report()
        if not report.ok:
            raise PastingMismatch('; '.join(report.failures()))
        d = aug.diagram
        expected = 8 * d.s + 4 * aug.curl_count()
        if lam.order != expected:
            raise PastingMismatch(f'order {lam.order}, expected {expected}')

        blocks12 = connected_blocks(lam, (1, 2))
        face_cycles = {face.index: _block_containing(blocks12, _face_vertex(vmap, face))
                       for face in d.faces}
        if len(blocks12) != len(d.faces) or len(set(face_cycles.values())) != len(d.faces):
            raise PastingMismatch(f'{len(blocks12)} {{1,2}}-cycles for '
                                  f'{len(d.faces)} faces')

        blocks03 = connected_blocks(lam, (0, 3))
        if len(blocks03) != 2 * d.l + d.s:
            raise PastingMismatch(f'g_03 = {len(blocks03)}, expected {2 * d.l + d.s}')
        component_cycles = {}
        for i in range(d.l):
            ins, _outs = vmap.ports(aug.stations(i)[0])
            component_cycles[i] = tuple(_block_containing(blocks03, v) for v in ins)

        segment_pairs = {}
        for seg in aug.segments:
            (n, h), (m, h2) = seg.tail, seg.head
            pairs = ((vmap.vid(n, h, L), vmap.vid(m, h2, R)),
                     (vmap.vid(n, h, R), vmap.vid(m, h2, L)))
            if any(lam.adj[u][1] != v for u, v in pairs):
                raise PastingMismatch(f'segment {seg.label} lacks its two 1-edges')
            segment_pairs[seg.index] = pairs
        return lam, Registry(vmap, face_cycles, component_cycles, segment_pairs)

    def _site_at(self, lam, vmap, j, node, end):
        side = L if vmap.aug.nodes[node].sign > 0 else R
        p0 = vmap.vid(node, end, side)
        p1 = lam.adj[p0][0]
        p2 = lam.adj[p1][1]
        p3 = lam.adj[p2][2]
        return QuadricolorSite(j, (p0, p1, p2, p3, lam.adj[p3][1], lam.adj[p0][1]))

    def locate_quadricolors(self, lam, registry):
        '''One site per framed component, at its planned curl, read off
        from the curl's free end.'''
        aug = registry.aug
        vmap = registry.vmap
        sites = {}
        for j in sorted(aug.sites):
            node = aug.site_node(j)
            free = aug.site_free_end(j)
            for end in (free, 1 - free):
                site = self._site_at(lam, vmap, j, node, end)
                if quadricolor_ok(lam, site):
                    break
                self.logger.debug(f'component {j + 1}: no quadricolor at curl end {end}')
            else:
                raise NoQuadricolor(f'curl {aug.segments[aug.end_of[(node, 0)]].label} '
                                    f'of component {j + 1} is not a quadricolor')
            sites[j] = site
        return sites

    def _with_fours(self, lam, fours):
        adj = {v: slots + (fours.get(v), ) for v, slots in lam.adj.items()}
        return cap_off(Gem(5, adj, boundary=True), 1)

    def _join(self, fours, u, v, step):
        for w in (u, v):
            if w in fours:
                raise DoubleAssignment(f'{step}: vertex {w} already has a 4-edge '
                                       f'to {fours[w]}')
        fours[u], fours[v] = v, u

    def _triads(self, lam, sites, fours):
        for j, site in sorted(sites.items()):
            if any(v not in lam.adj for v in site.vertices):
                raise PlanStale(f'site of component {j + 1} is not in the graph')
            p = site.vertices
            for a, b in ((p[0], p[1]), (p[2], p[3]), (p[4], p[5])):
                self._join(fours, a, b, f'triad of component {j + 1}')

    def _check_extension(self, lam, gamma):
        restricted = {v: slots[:4] for v, slots in gamma.adj.items()}
        if restricted != lam.adj:
            raise BuildError('deleting colour 4 does not give back the 4-coloured graph')

    def build_gamma_framed(self, lam, sites):
        '''Triads at the sites; every other vertex doubles its 1-edge.'''
        fours = {}
        self._triads(lam, sites, fours)
        gamma = self._with_fours(lam, fours)
        self._check_extension(lam, gamma)
        l = len(sites)
        g14 = residue_count(gamma, (1, 4))
        if g14 != gamma.p - 2 * l:
            raise BuildError(f'g_14 = {g14}, expected p - 2l = {gamma.p - 2 * l}')
        g34, g13 = residue_count(gamma, (3, 4)), residue_count(gamma, (1, 3))
        if g34 != g13:
            raise BuildError(f'g_34 = {g34} differs from g_13 = {g13}')
        return gamma

    def build_gamma_kirby(self, lam, plan, sites, registry):
        '''Triads, doubled turns along the highlighted segments, one edge per
        dotted component, then capping-off with respect to colour 1.'''
        aug = registry.aug
        vmap = registry.vmap
        segments = plan.highlighted() + [m.h_segment for m in plan.dotted] \
            + [m.h2_segment for m in plan.dotted]
        if any(seg >= len(aug.segments) for seg in segments):
            raise PlanStale('the marker plan names segments this diagram lacks')
        fours = {}
        self._triads(lam, sites, fours)

        def double_turn(node, h):
            u, v = vmap.vid(node, h, L), vmap.vid(node, h, R)
            if u not in fours and v not in fours:
                self._join(fours, u, v, 'highlight')

        for seg in plan.highlighted():
            for node, h in (aug.segments[seg].tail, aug.segments[seg].head):
                double_turn(node, h)
        self.logger.debug(f'highlighted {len(plan.highlighted())} segments passing under '
                          f'{plan.u} crossings')

        for m in plan.dotted:
            n, h = aug.segments[m.h_segment].tail
            v = vmap.vid(n, h, R if m.h_side == RIGHT else L)
            n2, h2 = aug.segments[m.h2_segment].head
            v2 = vmap.vid(n2, h2, L if m.h2_side == RIGHT else R)
            if lam.classes[v] == lam.classes[v2]:
                v2 = lam.adj[v2][1]
            self._join(fours, v, v2, f'dotted component {m.component + 1}')

        gamma = self._with_fours(lam, fours)
        self._check_extension(lam, gamma)
        return gamma

    def build(self, d):
        start = time.monotonic()
        aug = plan_curls(d)
        lam, registry = self.build_lambda(aug)
        sites = self.locate_quadricolors(lam, registry)
        if d.m:
            plan = plan_markers(aug, self.plan_budget)
            gamma = self.build_gamma_kirby(lam, plan, sites, registry)
        else:
            plan = None
            gamma = self.build_gamma_framed(lam, sites)
        self.logger.info(f'built order {gamma.order:,d} gem for {d.s} crossings and '
                         f'{d.l} components in {formatted_time(time.monotonic() - start)}')
        return BuildResult(d, aug, plan, lam, registry, sites, gamma)


def build_lambda(aug):
    return Builder().build_lambda(aug)


def locate_quadricolors(lam, registry):
    return Builder().locate_quadricolors(lam, registry)


def build_gamma_framed(lam, sites):
    return Builder().build_gamma_framed(lam, sites)


def build_gamma_kirby(lam, plan, sites, registry):
    return Builder().build_gamma_kirby(lam, plan, sites, registry)
