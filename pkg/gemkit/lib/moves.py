# Copyright (c) 2024, the gemkit authors
#
# All rights reserved.
#
# See the file "LICENCE" for information about the copyright
# and warranty status of this software.

'''Dipoles, rho-pairs, capping-off, quadricolor moves and greedy
simplification.'''

import random
import time
from itertools import combinations

import attr
from aiorpcx import run_in_thread

from gemkit.lib.gem import (
    Gem, connected_blocks, hat_count, pair_counts, residue_gem,
    residues, surface_euler,
)
from gemkit.lib.util import OldTaskGroup, class_logger, formatted_time, int_list


class MoveError(Exception):
    '''Base class of move errors.'''


class WeldClash(MoveError):
    '''Welding hanging edges would create a loop.'''


class AmbiguousReconnection(MoveError):
    '''A rho-pair cannot be reconnected preserving the bipartition.'''


class OddPath(MoveError):
    '''A capping-off path has a single boundary endpoint.'''


class SiteStale(MoveError):
    '''A handle refers to vertices or edges no longer present.'''


class NoDipoleFound(MoveError):
    '''A required dipole does not exist.'''


PROPER, IMPROPER, UNKNOWN = 'proper', 'improper', 'unknown'
SPHERE_CERTIFIED, REDUCED = 'sphere_certified', 'reduced'
ATTACH, SMOOTH = 'attach', 'smooth'


@attr.s(slots=True, frozen=True)
class DipoleHandle:
    x = attr.ib()
    y = attr.ib()
    colors = attr.ib(converter=tuple)

    @property
    def r(self):
        return len(self.colors)


@attr.s(slots=True, frozen=True)
class DipoleSite:
    '''Where to insert a dipole: for every colour c outside colors the
    c-edge a-b to break.  All a share one bipartition class.'''
    colors = attr.ib(converter=tuple)
    breaks = attr.ib(converter=tuple)   # ((c, a, b), ...)


@attr.s(slots=True, frozen=True)
class RhoPairHandle:
    color = attr.ib()
    e = attr.ib()          # (a, b), a in class 0
    f = attr.ib()
    involved = attr.ib(converter=tuple)

    @property
    def h(self):
        return len(self.involved)


@attr.s(slots=True, frozen=True)
class QuadricolorSite:
    '''P0..P3 form the quadricolor (P_s - P_s+1 coloured s); P4, P5 are
    the 1-neighbours of P3 and P0.'''
    component = attr.ib()
    vertices = attr.ib(converter=tuple)


# Dipoles


def _block_maps(g):
    cache = {}

    def block_of(colors):
        key = frozenset(colors)
        if key not in cache:
            cache[key] = {v: n for n, block in enumerate(connected_blocks(g, key))
                          for v in block}
        return cache[key]
    return block_of


def find_dipoles(g, r, colors=None):
    '''All r-dipoles, ordered by their smaller vertex.  With colors, only
    dipoles of exactly that colour set.'''
    all_colors = range(g.color_count)
    block_of = _block_maps(g)
    wanted = None if colors is None else tuple(sorted(colors))
    result = []
    for x in sorted(g.adj):
        slots = g.adj[x]
        for y in sorted({w for w in slots if w is not None and w > x}):
            joined = tuple(c for c in all_colors if slots[c] == y)
            if len(joined) != r or r > g.n:
                continue
            if wanted is not None and joined != wanted:
                continue
            rest = [c for c in all_colors if c not in joined]
            if any(g.adj[x][c] is None or g.adj[y][c] is None for c in rest):
                continue
            blocks = block_of(rest)
            if blocks[x] != blocks[y]:
                result.append(DipoleHandle(x, y, joined))
    return result


def is_proper_dipole(g, d, budget=10_000, singular=None):
    '''proper / improper / unknown: whether one of the two residues met by
    the dipole is a sphere.

    singular, when known, is the set of colours that may be singular in
    g.  With at most one of them, a 1-dipole of any other colour meets
    only sphere residues.
    '''
    n = g.n
    rest = [c for c in range(g.color_count) if c not in d.colors]
    dim = n - d.r
    if dim <= 1:
        return PROPER
    if n == 4 and d.r > 1:
        return PROPER
    if (n == 4 and d.r == 1 and singular is not None and len(singular) <= 1
            and d.colors[0] not in singular):
        return PROPER
    found_unknown = False
    for v in (d.x, d.y):
        residue = residue_gem(g, rest, v)
        if dim == 2:
            direct, _ = surface_euler(residue)
            if direct == 2:
                return PROPER
        else:
            result = Simplifier(budget=budget).reduce(residue)
            if result.verdict == SPHERE_CERTIFIED:
                return PROPER
            found_unknown = True
    return UNKNOWN if found_unknown else IMPROPER


def eliminate_dipole(g, d):
    '''Delete the dipole and weld the hanging edges colour by colour.'''
    return _eliminate(g, d)[0]


def _eliminate(g, d):
    x, y = d.x, d.y
    if x not in g.adj or y not in g.adj:
        raise SiteStale(f'dipole {x}-{y} no longer present')
    joined = tuple(c for c in range(g.color_count) if g.adj[x][c] == y)
    if joined != tuple(d.colors):
        raise SiteStale(f'dipole {x}-{y} is joined by {joined}, not {d.colors}')
    adj = dict(g.adj)
    welds = []
    for c in range(g.color_count):
        if c in joined:
            continue
        a, b = g.adj[x][c], g.adj[y][c]
        if a in (x, y) or b in (x, y) or a == b:
            raise WeldClash(f'welding colour {c} at dipole {x}-{y}')
        welds.append((c, a, b))
    del adj[x], adj[y]
    for c, a, b in welds:
        slots = list(adj[a])
        slots[c] = b
        adj[a] = tuple(slots)
        slots = list(adj[b])
        slots[c] = a
        adj[b] = tuple(slots)
    result = g.with_adj(adj).require_valid()
    return result, DipoleSite(joined, welds)


def dipole_site_at(g, v, colors):
    '''The site splitting vertex v: the dipole is joined by colors, one
    new vertex takes v's other edges.'''
    colors = tuple(sorted(colors))
    breaks = [(c, g.adj[v][c], v) for c in range(g.color_count) if c not in colors]
    return DipoleSite(colors, breaks)


def add_dipole(g, site, ids=None):
    '''Insert a dipole at site; returns (gem, handle).'''
    x, y = ids or g.fresh_ids(2)
    if x in g.adj or y in g.adj:
        raise MoveError(f'vertex ids {x}, {y} already used')
    classes = {g.classes.get(a) for _c, a, _b in site.breaks}
    if len(classes) > 1:
        raise AmbiguousReconnection('dipole site breaks edges of both classes')
    adj = dict(g.adj)
    x_slots = [None] * g.color_count
    y_slots = [None] * g.color_count
    for c in site.colors:
        x_slots[c], y_slots[c] = y, x
    for c, a, b in site.breaks:
        if g.adj.get(a, (None, ) * g.color_count)[c] != b:
            raise SiteStale(f'no {c}-edge {a}-{b}')
        x_slots[c], y_slots[c] = a, b
        slots = list(adj[a])
        slots[c] = x
        adj[a] = tuple(slots)
        slots = list(adj[b])
        slots[c] = y
        adj[b] = tuple(slots)
    adj[x] = tuple(x_slots)
    adj[y] = tuple(y_slots)
    return g.with_adj(adj).require_valid(), DipoleHandle(x, y, site.colors)


# Rho-pairs


def rho_involved(g, color, e, f):
    '''The colours i != color whose {color, i}-cycle holds both e and f.'''
    block_of = _block_maps(g)
    return tuple(i for i in range(g.color_count) if i != color
                 and block_of((color, i))[e[0]] == block_of((color, i))[f[0]])


def find_rho_pairs(g, h):
    '''Pairs of equally coloured edges sharing their bicoloured cycle for
    exactly h other colours.'''
    block_of = _block_maps(g)
    result = []
    for c in range(g.color_count):
        edge_list = sorted((a, g.adj[a][c]) for a in g.adj
                           if g.classes[a] == 0 and g.adj[a][c] is not None)
        others = [i for i in range(g.color_count) if i != c]
        maps = {i: block_of((c, i)) for i in others}
        for e, f in combinations(edge_list, 2):
            involved = [i for i in others if maps[i][e[0]] == maps[i][f[0]]]
            if len(involved) == h:
                result.append(RhoPairHandle(c, e, f, involved))
    return result


def switch_rho_pair(g, rp):
    '''Cancel e and f and join their endpoints crosswise, keeping the
    bipartition.'''
    c = rp.color
    (a, b), (a2, b2) = rp.e, rp.f
    for u, v in (rp.e, rp.f):
        if u not in g.adj or g.adj[u][c] != v:
            raise SiteStale(f'no {c}-edge {u}-{v}')
    if g.classes[a] != g.classes[a2] or g.classes[a] == g.classes[b]:
        raise AmbiguousReconnection(f'edges {rp.e}, {rp.f} are not aligned by class')
    shared = rho_involved(g, c, rp.e, rp.f)
    before = pair_counts(g)
    adj = dict(g.adj)
    for u, v in ((a, b2), (a2, b), (b2, a), (b, a2)):
        slots = list(adj[u])
        slots[c] = v
        adj[u] = tuple(slots)
    result = g.with_adj(adj).require_valid()
    after = pair_counts(result)
    # shared cycles split, the others merge
    for i in range(g.color_count):
        if i != c:
            key = (min(c, i), max(c, i))
            expected = 1 if i in shared else -1
            assert after[key] - before[key] == expected, \
                f'g_{key[0]}{key[1]} changed by {after[key] - before[key]}, not {expected}'
    return result


def rho_genus_delta(rp, eps):
    '''The change of rho_eps caused by switching rp.'''
    seq = eps.colors
    k = seq.index(rp.color)
    prev, nxt = seq[k - 1], seq[(k + 1) % len(seq)]
    hits = (prev in rp.involved) + (nxt in rp.involved)
    return 1 - hits


# Capping-off


def cap_off(b, c):
    '''Join boundary vertices lying on a common {c, n}-path by n-edges.'''
    top = b.n
    if not 0 <= c < top:
        raise MoveError(f'capping colour {c} must be below {top}')
    pairs = {}
    for v in b.boundary_vertices():
        if v in pairs:
            continue
        cur, steps = v, 0
        while True:
            u = b.adj[cur][c]
            if b.adj[u][top] is None:
                break
            cur = b.adj[u][top]
            steps += 1
            if steps > b.order:
                raise OddPath(f'{{{c},{top}}}-path from {v} never ends')
        if u == v or u in pairs:
            raise OddPath(f'{{{c},{top}}}-path from {v} ends at {u}')
        pairs[v], pairs[u] = u, v
    adj = dict(b.adj)
    for v, u in pairs.items():
        slots = list(adj[v])
        slots[top] = u
        adj[v] = tuple(slots)
    return Gem(b.color_count, adj).require_valid()


# Quadricolors


def quadricolor_ok(g, site):
    '''The structural quadricolor predicate on P0..P5.'''
    p = site.vertices
    if any(v not in g.adj for v in p) or len(set(p)) != 6:
        return False
    for s in range(4):
        if g.adj[p[s]][s] != p[(s + 1) % 4]:
            return False
    if g.adj[p[3]][1] != p[4] or g.adj[p[0]][1] != p[5] or g.adj[p[4]][3] != p[5]:
        return False
    for s in range(4):
        cycle = residues(g, ((s + 1) % 4, (s + 2) % 4)).block_of()
        others = [p[(s + k) % 4] for k in (1, 2, 3)]
        if len({cycle[v] for v in others}) != 1 or cycle[p[s]] == cycle[others[0]]:
            return False
    return True


def _rewire(g, color, old, new):
    adj = dict(g.adj)
    for u, v in old:
        if u not in adj or v not in adj or adj[u][color] != v:
            raise SiteStale(f'no {color}-edge {u}-{v}')
    for pairs in (new, ):
        for u, v in pairs:
            for a, b in ((u, v), (v, u)):
                slots = list(adj[a])
                slots[color] = b
                adj[a] = tuple(slots)
    return g.with_adj(adj)


def triad_exchange(g, site, direction, color=4):
    '''Exchange the triad of color-edges at a quadricolor site.

    attach moves them from P1P2, P3P4, P5P0 onto P0P1, P2P3, P4P5; smooth
    is the inverse.'''
    p = site.vertices
    doubled = ((p[1], p[2]), (p[3], p[4]), (p[5], p[0]))
    triad = ((p[0], p[1]), (p[2], p[3]), (p[4], p[5]))
    if any(v not in g.adj for v in p):
        raise SiteStale(f'site of component {site.component} was consumed')
    if direction == ATTACH:
        old, new, expected = doubled, triad, -2
    elif direction == SMOOTH:
        old, new, expected = triad, doubled, 2
    else:
        raise MoveError(f'unknown direction {direction!r}')
    before = pair_counts(g)
    result = _rewire(g, color, old, new).require_valid()
    after = pair_counts(result)
    for key, count in after.items():
        delta = count - before[key]
        wanted = expected if key == (1, color) else 0
        assert delta == wanted, f'g_{key[0]}{key[1]} changed by {delta}, not {wanted}'
    return result


def smooth_quadricolor(lam, site):
    '''Remove the quadricolor P0..P3 and weld the hanging edges by colour.'''
    p = site.vertices[:4]
    if any(v not in lam.adj for v in p):
        raise SiteStale(f'site of component {site.component} was consumed')
    for s in range(4):
        if lam.adj[p[s]][s] != p[(s + 1) % 4]:
            raise SiteStale(f'P{s}-P{(s + 1) % 4} is not a {s}-edge')
    # colour s hangs at the two quadricolor vertices not on the s-edges
    hanging = {0: (p[2], p[3]), 1: (p[3], p[0]), 2: (p[0], p[1]), 3: (p[1], p[2])}
    quad = set(p)
    adj = dict(lam.adj)
    for v in p:
        del adj[v]
    for c, (u, v) in hanging.items():
        a, b = lam.adj[u][c], lam.adj[v][c]
        if a in quad or b in quad or a == b:
            raise WeldClash(f'welding colour {c} at the quadricolor')
        for x, y in ((a, b), (b, a)):
            slots = list(adj[x])
            slots[c] = y
            adj[x] = tuple(slots)
    return lam.with_adj(adj).require_valid()


# Move logs


@attr.s(slots=True, frozen=True)
class Move:
    kind = attr.ib()
    params = attr.ib()        # tuple of (key, value-string)
    order_before = attr.ib()
    order_after = attr.ib()

    def param(self, key):
        return dict(self.params)[key]

    def to_line(self):
        fields = ' '.join(f'{k}={v}' for k, v in self.params)
        return f'move {self.kind} {fields} order={self.order_before}:{self.order_after}'


def _pairs(text):
    return [tuple(int(x) for x in item.split(':')) for item in text.split(',') if item]


def _fmt_ints(values):
    return ','.join(str(v) for v in values)


class MoveLog:
    '''An ordered, replayable record of applied moves.'''

    def __init__(self, moves=None):
        self.moves = list(moves or [])

    def __len__(self):
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def record(self, kind, params, before, after):
        self.moves.append(Move(kind, tuple(params), before.order, after.order))

    def extend(self, other):
        self.moves.extend(other.moves)

    def serialize(self):
        return ''.join(move.to_line() + '\n' for move in self.moves)

    @classmethod
    def parse(cls, text):
        moves = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            parts = line.split()
            if parts[0] != 'move' or len(parts) < 2:
                raise MoveError(f'line {lineno}: expected "move <kind> ...": {line!r}')
            params = []
            before = after = None
            for token in parts[2:]:
                key, sep, value = token.partition('=')
                if not sep:
                    raise MoveError(f'line {lineno}: bad parameter {token!r}')
                if key == 'order':
                    before, after = (int(x) for x in value.split(':'))
                else:
                    params.append((key, value))
            moves.append(Move(parts[1], tuple(params), before, after))
        return cls(moves)

    def replay(self, g):
        '''Apply every move to g; orders are checked against the record.'''
        for move in self.moves:
            before = g.order
            g = apply_move(g, move)
            if move.order_before is not None and (
                    before, g.order) != (move.order_before, move.order_after):
                raise MoveError(f'replay of {move.to_line()!r} gave orders '
                                f'{before}:{g.order}')
        return g

    def inverse(self):
        '''The log undoing this one; every move must be invertible.'''
        return MoveLog([_inverse(move) for move in reversed(self.moves)])


def _inverse(move):
    kind = move.kind
    if kind == 'eliminate':
        params = (('colors', move.param('colors')), ('breaks', move.param('welds')),
                  ('ids', f"{move.param('x')},{move.param('y')}"))
        return Move('add', params, move.order_after, move.order_before)
    if kind == 'add':
        x, y = int_list(move.param('ids'))
        params = (('x', str(x)), ('y', str(y)), ('colors', move.param('colors')),
                  ('welds', move.param('breaks')))
        return Move('eliminate', params, move.order_after, move.order_before)
    if kind == 'switch':
        (a, b), (a2, b2) = _pairs(move.param('e') + ',' + move.param('f'))
        params = (('color', move.param('color')), ('e', f'{a}:{b2}'), ('f', f'{a2}:{b}'))
        return Move('switch', params, move.order_after, move.order_before)
    if kind == 'triad':
        direction = SMOOTH if move.param('direction') == ATTACH else ATTACH
        params = tuple((k, direction if k == 'direction' else v) for k, v in move.params)
        return Move('triad', params, move.order_after, move.order_before)
    raise MoveError(f'move {kind} is not invertible')


def apply_move(g, move):
    kind = move.kind
    if kind == 'eliminate':
        d = DipoleHandle(int(move.param('x')), int(move.param('y')),
                         int_list(move.param('colors')))
        return eliminate_dipole(g, d)
    if kind == 'add':
        site = DipoleSite(int_list(move.param('colors')), _pairs(move.param('breaks')))
        return add_dipole(g, site, ids=int_list(move.param('ids')))[0]
    if kind == 'switch':
        e, f = _pairs(move.param('e') + ',' + move.param('f'))
        color = int(move.param('color'))
        return switch_rho_pair(g, RhoPairHandle(color, e, f, rho_involved(g, color, e, f)))
    if kind == 'triad':
        site = QuadricolorSite(None, int_list(move.param('site')))
        return triad_exchange(g, site, move.param('direction'),
                              int(move.param('color')))
    if kind == 'smooth':
        return smooth_quadricolor(g, QuadricolorSite(None, int_list(move.param('site'))))
    if kind == 'cap':
        return cap_off(g, int(move.param('color')))
    raise MoveError(f'unknown move kind {kind!r}')


# Logged wrappers


def logged_eliminate(g, d, log):
    result, site = _eliminate(g, d)
    log.record('eliminate', (('x', str(d.x)), ('y', str(d.y)),
                             ('colors', _fmt_ints(d.colors)),
                             ('welds', ','.join(f'{c}:{a}:{b}' for c, a, b in site.breaks))),
               g, result)
    return result


def logged_add(g, site, log, ids=None):
    result, handle = add_dipole(g, site, ids)
    log.record('add', (('colors', _fmt_ints(site.colors)),
                       ('breaks', ','.join(f'{c}:{a}:{b}' for c, a, b in site.breaks)),
                       ('ids', f'{handle.x},{handle.y}')), g, result)
    return result, handle


def logged_switch(g, rp, log):
    result = switch_rho_pair(g, rp)
    log.record('switch', (('color', str(rp.color)), ('e', '{}:{}'.format(*rp.e)),
                          ('f', '{}:{}'.format(*rp.f)),
                          ('involved', _fmt_ints(rp.involved))), g, result)
    return result


def logged_triad(g, site, direction, log, color=4):
    result = triad_exchange(g, site, direction, color)
    log.record('triad', (('direction', direction), ('color', str(color)),
                         ('site', _fmt_ints(site.vertices))), g, result)
    return result


def logged_smooth(g, site, log):
    result = smooth_quadricolor(g, site)
    log.record('smooth', (('site', _fmt_ints(site.vertices)), ), g, result)
    return result


# Simplification


@attr.s(slots=True, frozen=True)
class Reduction:
    gem = attr.ib()
    log = attr.ib()
    verdict = attr.ib()
    steps = attr.ib()
    seed = attr.ib()


def all_trivial(g):
    return all(len(block) == 2 for block in connected_blocks(g, range(g.color_count)))


class Simplifier:
    '''Greedy dipole elimination.

    The largest proper dipole goes first, ties broken by the smallest
    vertex id; with a seed the choice among the largest is random.
    '''

    def __init__(self, budget=10_000, time_limit=None, certify_budget=None, singular=None):
        self.logger = class_logger(__name__, self.__class__.__name__)
        self.budget = budget
        self.time_limit = time_limit
        self.certify_budget = certify_budget or budget
        self.singular = singular

    def candidates(self, g):
        for r in range(g.n, 0, -1):
            proper = [d for d in find_dipoles(g, r)
                      if is_proper_dipole(g, d, self.certify_budget,
                                          self.singular) == PROPER]
            if proper:
                return proper
        return []

    def reduce(self, g, seed=None):
        rng = None if seed is None else random.Random(seed)
        log = MoveLog()
        start = time.monotonic()
        steps = 0
        while steps < self.budget and not all_trivial(g):
            if self.time_limit is not None and time.monotonic() - start > self.time_limit:
                self.logger.info(f'time limit reached after {steps:,d} steps')
                break
            candidates = self.candidates(g)
            if not candidates:
                break
            d = candidates[0] if rng is None else rng.choice(candidates)
            g = logged_eliminate(g, d, log)
            steps += 1
        verdict = SPHERE_CERTIFIED if all_trivial(g) else REDUCED
        self.logger.debug(f'{verdict} at order {g.order} after {steps:,d} steps '
                          f'in {formatted_time(time.monotonic() - start)}')
        return Reduction(g, log, verdict, steps, seed)

    async def reduce_restarts(self, g, seeds):
        '''Run one reduction per seed in worker threads; keep the smallest
        result, earliest seed first on ties.'''
        seeds = list(seeds)
        async with OldTaskGroup() as group:
            tasks = [await group.spawn(run_in_thread, self.reduce, g, seed)
                     for seed in seeds]
        results = [task.result() for task in tasks]
        return min(results, key=lambda r: (r.gem.order, seeds.index(r.seed)))


def greedy_reduce(g, budget=10_000, seed=None, time_limit=None, singular=None):
    return Simplifier(budget, time_limit, singular=singular).reduce(g, seed)


def sweep_dipoles(g, r, colors, log=None):
    '''Eliminate dipoles of exactly the given colour set until none is left.
    Returns (gem, count).'''
    log = log if log is not None else MoveLog()
    count = 0
    while True:
        found = find_dipoles(g, r, colors)
        if not found:
            return g, count
        g = logged_eliminate(g, found[0], log)
        count += 1


def eliminate_listed_dipoles(g, pairs, colors, log=None):
    '''Eliminate each listed vertex pair that is, when its turn comes, a
    dipole of exactly the given colour set.  Returns (gem, count).'''
    log = log if log is not None else MoveLog()
    wanted = tuple(sorted(colors))
    count = 0
    for x, y in pairs:
        key = (min(x, y), max(x, y))
        for d in find_dipoles(g, len(wanted), wanted):
            if (d.x, d.y) == key:
                g = logged_eliminate(g, d, log)
                count += 1
                break
    return g, count


def merge_2hat_residues(g, log=None):
    '''Eliminate 1-dipoles of colour 2 until a single 2̂-residue is left.'''
    log = log if log is not None else MoveLog()
    start = hat_count(g, 2)
    for _ in range(start - 1):
        found = find_dipoles(g, 1, (2, ))
        if not found:
            raise NoDipoleFound(f'no 1-dipole of colour 2 with '
                                f'{hat_count(g, 2)} 2̂-residues left')
        g = logged_eliminate(g, found[0], log)
    assert hat_count(g, 2) == 1
    return g
