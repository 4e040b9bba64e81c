# Copyright (c) 2024, the gemkit authors
#
# All rights reserved.
#
# See the file "LICENCE" for information about the copyright
# and warranty status of this software.

'''Regular edge-coloured graphs (gems), their residues and genus.

A gem with n+1 colours has colours 0..n.  Every vertex carries exactly
one edge of each colour; the graph is bipartite.  Values are immutable:
every move in gemkit.lib.moves returns a new Gem.
'''

from collections import deque
from itertools import combinations, permutations

import attr
import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher
from networkx.utils import UnionFind


class GemError(Exception):
    '''Base class of gem errors.'''


class ParseError(GemError):
    '''A .gem text is malformed.'''


class InvalidGem(GemError):
    '''An operation was handed a graph failing validate_gem.'''


class NonBipartite(GemError):
    '''A genus operation met an odd cycle.'''


class Disconnected(GemError):
    '''A genus operation met a disconnected graph.'''


@attr.s(slots=True, frozen=True)
class ValidationReport:
    degree_defects = attr.ib()    # vertices missing some colour
    color_clashes = attr.ib()     # (vertex, colour) seen twice
    loops = attr.ib()             # vertices with a loop
    odd_order = attr.ib()
    odd_cycle = attr.ib()         # an edge (u, v) closing an odd cycle, or None
    components = attr.ib()

    @property
    def bipartite(self):
        return self.odd_cycle is None

    @property
    def connected(self):
        return self.components == 1

    @property
    def ok(self):
        return not (self.degree_defects or self.color_clashes or self.loops
                    or self.odd_order or self.odd_cycle)

    def failures(self):
        '''Human-readable list of failed checks.'''
        result = []
        if self.degree_defects:
            result.append(f'degree defect at {self.degree_defects[:5]}')
        if self.color_clashes:
            result.append(f'colour clash at {self.color_clashes[:5]}')
        if self.loops:
            result.append(f'loop at {self.loops[:5]}')
        if self.odd_order:
            result.append('odd order')
        if self.odd_cycle:
            result.append(f'non-bipartite: edge {self.odd_cycle} closes an odd cycle')
        return result


class Gem:
    '''A regular (n+1)-edge-coloured bipartite multigraph.

    adj maps each vertex id to a tuple whose c-th entry is the
    c-neighbour, or None where a boundary gem lacks its top colour.
    Vertex ids are arbitrary integers and survive moves unchanged.
    '''

    __slots__ = ('color_count', 'adj', 'classes', 'boundary', '_clashes',
                 '_loops', '_odd_edge', '_report')

    def __init__(self, color_count, adj, *, boundary=False, clashes=(), loops=()):
        self.color_count = color_count
        self.adj = adj
        self.boundary = boundary
        self._clashes = tuple(clashes)
        self._loops = tuple(loops)
        self._report = None
        self.classes, self._odd_edge = self._two_colour()

    @classmethod
    def from_edges(cls, color_count, edges, vertices=(), *, boundary=False):
        '''Build from (u, v, colour) triples; defects are kept for
        validate_gem to report.'''
        adj = {v: [None] * color_count for v in vertices}
        clashes, loops = [], []
        for u, v, c in edges:
            if not 0 <= c < color_count:
                raise GemError(f'colour {c} out of range 0..{color_count - 1}')
            if u == v:
                loops.append(u)
                continue
            for a, b in ((u, v), (v, u)):
                slots = adj.setdefault(a, [None] * color_count)
                if slots[c] is not None:
                    clashes.append((a, c))
                else:
                    slots[c] = b
        adj = {v: tuple(slots) for v, slots in adj.items()}
        return cls(color_count, adj, boundary=boundary, clashes=clashes, loops=loops)

    def _two_colour(self):
        classes = {}
        odd_edge = None
        for root in sorted(self.adj):
            if root in classes:
                continue
            classes[root] = 0
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for w in self.adj[v]:
                    if w is None or w not in self.adj:
                        continue
                    if w not in classes:
                        classes[w] = 1 - classes[v]
                        queue.append(w)
                    elif classes[w] == classes[v] and odd_edge is None:
                        odd_edge = (min(v, w), max(v, w))
        return classes, odd_edge

    @property
    def n(self):
        '''The dimension: colours are 0..n.'''
        return self.color_count - 1

    @property
    def order(self):
        return len(self.adj)

    @property
    def p(self):
        return len(self.adj) // 2

    def vertices(self):
        return sorted(self.adj)

    def neighbour(self, v, c):
        return self.adj[v][c]

    def edges(self):
        '''Yield (u, v, c) with u < v, once per edge.'''
        for u in sorted(self.adj):
            for c, v in enumerate(self.adj[u]):
                if v is not None and u < v:
                    yield (u, v, c)

    def edge_set(self, colors=None):
        return {(u, v, c) for u, v, c in self.edges()
                if colors is None or c in colors}

    def boundary_vertices(self):
        top = self.n
        return [v for v in sorted(self.adj) if self.adj[v][top] is None]

    def report(self):
        if self._report is None:
            self._report = validate_gem(self)
        return self._report

    def require_valid(self):
        report = self.report()
        if not report.ok:
            raise InvalidGem('; '.join(report.failures()))
        return self

    def with_adj(self, adj):
        '''A new gem of the same colour count over adj.'''
        return Gem(self.color_count, adj, boundary=self.boundary)

    def fresh_ids(self, count):
        '''Vertex ids never used in this gem.'''
        start = max(self.adj, default=-1) + 1
        return list(range(start, start + count))

    def __eq__(self, other):
        return (isinstance(other, Gem) and self.color_count == other.color_count
                and self.adj == other.adj)

    def __hash__(self):
        return hash((self.color_count, len(self.adj)))

    def __repr__(self):
        return f'Gem(colors={self.color_count}, order={self.order})'


def validate_gem(g):
    '''Check regularity, proper colouring, even order and bipartiteness.'''
    top = g.n
    defects = []
    for v in sorted(g.adj):
        missing = [c for c, w in enumerate(g.adj[v]) if w is None]
        if g.boundary:
            missing = [c for c in missing if c != top]
        if missing:
            defects.append(v)
    # a v -> w link must be mirrored by w -> v
    clashes = list(g._clashes)
    for v, slots in g.adj.items():
        for c, w in enumerate(slots):
            if w is not None and (w not in g.adj or g.adj[w][c] != v):
                clashes.append((v, c))
    components = len(connected_blocks(g, range(g.color_count)))
    return ValidationReport(
        degree_defects=defects,
        color_clashes=sorted(set(clashes)),
        loops=sorted(set(g._loops)),
        odd_order=len(g.adj) % 2 == 1,
        odd_cycle=g._odd_edge,
        components=components,
    )


# Residues


@attr.s(slots=True, frozen=True)
class ResiduePartition:
    colors = attr.ib()   # frozenset
    blocks = attr.ib()   # tuple of sorted vertex tuples, ordered by min vertex

    @property
    def count(self):
        return len(self.blocks)

    def block_of(self):
        '''Map vertex -> block index.'''
        return {v: n for n, block in enumerate(self.blocks) for v in block}


def connected_blocks(g, colors):
    '''Connected components of the subgraph spanned by colours.'''
    colors = sorted(colors)
    pieces = UnionFind(g.adj)
    for v, slots in g.adj.items():
        for c in colors:
            if slots[c] is not None:
                pieces.union(v, slots[c])
    return sorted(tuple(sorted(block)) for block in pieces.to_sets())


def residues(g, colors):
    '''Partition of the vertices into colors-residues.'''
    colors = frozenset(colors)
    if not colors <= set(range(g.color_count)):
        raise GemError(f'colours {sorted(colors)} not all in 0..{g.n}')
    blocks = connected_blocks(g, colors)
    if len(colors) == 2:
        i, j = sorted(colors)
        for block in blocks:
            assert len(block) % 2 == 0 and all(
                g.adj[v][i] is not None and g.adj[v][j] is not None for v in block
            ), f'{{{i},{j}}}-residue is not an alternating cycle'
    return ResiduePartition(colors=colors, blocks=tuple(blocks))


def residue_count(g, colors):
    return len(connected_blocks(g, colors))


def pair_counts(g):
    '''{(i, j): g_ij} for all colour pairs i < j.'''
    return {pair: residue_count(g, pair)
            for pair in combinations(range(g.color_count), 2)}


def hat_count(g, c):
    '''g_ĉ: the number of residues missing colour c.'''
    return residue_count(g, [d for d in range(g.color_count) if d != c])


def is_crystallization(g):
    return all(hat_count(g, c) == 1 for c in range(g.color_count))


# Cyclic permutations and genus


@attr.s(slots=True, frozen=True, order=True)
class CyclicPermutation:
    '''A cyclic order of the colours, canonical up to rotation and inversion:
    starts at 0, second entry smaller than the last.'''
    colors = attr.ib(converter=tuple)

    @classmethod
    def of(cls, seq):
        seq = list(seq)
        if sorted(seq) != list(range(len(seq))):
            raise GemError(f'{seq} is not a permutation of 0..{len(seq) - 1}')
        k = seq.index(0)
        seq = seq[k:] + seq[:k]
        if len(seq) > 2 and seq[1] > seq[-1]:
            seq = [seq[0]] + seq[:0:-1]
        return cls(seq)

    def pairs(self):
        seq = self.colors
        return [tuple(sorted((seq[j], seq[(j + 1) % len(seq)])))
                for j in range(len(seq))]

    def reversed(self):
        return CyclicPermutation.of(reversed(self.colors))

    def __str__(self):
        return '(' + ','.join(str(c) for c in self.colors) + ')'


def all_cyclic_permutations(color_count):
    '''The cyclic permutations up to inverse in canonical order.'''
    result = []
    for tail in permutations(range(1, color_count)):
        if len(tail) < 2 or tail[0] < tail[-1]:
            result.append(CyclicPermutation((0, ) + tail))
    return result


def _require_genus_ready(g):
    report = g.report()
    if report.odd_cycle is not None:
        raise NonBipartite(f'edge {report.odd_cycle} closes an odd cycle')
    if not report.ok:
        raise InvalidGem('; '.join(report.failures()))
    if report.components != 1:
        raise Disconnected(f'gem has {report.components} components')


def _genus_from_counts(g, eps, counts):
    total = sum(counts[pair] for pair in eps.pairs())
    rhs = total + (1 - g.n) * g.p
    assert rhs % 2 == 0, f'odd Euler characteristic {rhs} for {eps}'
    rho = (2 - rhs) // 2
    assert rho >= 0, f'negative genus for {eps}'
    return rho


def genus_wrt(g, eps):
    '''Regular genus of g with respect to the cyclic permutation eps.'''
    _require_genus_ready(g)
    if not isinstance(eps, CyclicPermutation):
        eps = CyclicPermutation.of(eps)
    counts = {pair: residue_count(g, pair) for pair in eps.pairs()}
    return _genus_from_counts(g, eps, counts)


def genus_table(g):
    '''[(eps, rho_eps)] over every class, in canonical order.'''
    _require_genus_ready(g)
    counts = pair_counts(g)
    return [(eps, _genus_from_counts(g, eps, counts))
            for eps in all_cyclic_permutations(g.color_count)]


def genus_min(g):
    '''(rho, eps): the minimum over all cyclic permutations; ties go to the
    first permutation in canonical order.'''
    best = None
    for eps, rho in genus_table(g):
        if best is None or rho < best[0]:
            best = (rho, eps)
    return best


def euler_characteristic(g):
    '''Euler characteristic of the coloured complex dual to g.'''
    g.require_valid()
    n = g.n
    chi = 0
    for k in range(n):
        size = n - k
        nk = sum(residue_count(g, colors)
                 for colors in combinations(range(g.color_count), size))
        chi += (-1) ** k * nk
    chi += (-1) ** n * g.order
    return chi


def surface_euler(g):
    '''(V - E + F, 2 - 2*rho) of a connected 3-coloured gem; the two agree.'''
    assert g.color_count == 3
    faces = sum(residue_count(g, pair) for pair in combinations(range(3), 2))
    direct = g.order - 3 * g.p + faces
    via_genus = 2 - 2 * genus_wrt(g, (0, 1, 2))
    return direct, via_genus


def gem_complexity(g):
    return g.p - 1


# Isomorphism


def _colour_graph(g):
    graph = nx.Graph()
    graph.add_nodes_from(g.adj)
    for u, v, c in g.edges():
        if graph.has_edge(u, v):
            graph[u][v]['colors'] = graph[u][v]['colors'] | {c}
        else:
            graph.add_edge(u, v, colors=frozenset([c]))
    for v in g.adj:
        graph.nodes[v]['missing'] = frozenset(
            c for c, w in enumerate(g.adj[v]) if w is None)
    return graph


def color_isomorphic(g, h):
    '''(True, witness) if a vertex bijection g -> h preserves edges and
    colours exactly, else (False, None).'''
    if (g.color_count != h.color_count or g.order != h.order
            or sorted(len(b) for b in connected_blocks(g, range(g.color_count)))
            != sorted(len(b) for b in connected_blocks(h, range(h.color_count)))):
        return False, None
    matcher = GraphMatcher(
        _colour_graph(g), _colour_graph(h),
        node_match=lambda a, b: a['missing'] == b['missing'],
        edge_match=lambda a, b: a['colors'] == b['colors'])
    if matcher.is_isomorphic():
        return True, dict(matcher.mapping)
    return False, None


def extract_residue_gem(g, c):
    '''Each ĉ-residue as a standalone gem, colours above c shifted down.'''
    kept = [d for d in range(g.color_count) if d != c]
    result = []
    for block in connected_blocks(g, kept):
        adj = {v: tuple(g.adj[v][d] for d in kept) for v in block}
        result.append(Gem(len(kept), adj))
    return result


def residue_gem(g, colors, v):
    '''The colors-residue containing v as a standalone gem, its colours
    renumbered 0..len(colors)-1 in increasing order.'''
    kept = sorted(colors)
    for block in connected_blocks(g, kept):
        if v in block:
            adj = {w: tuple(g.adj[w][d] for d in kept) for w in block}
            return Gem(len(kept), adj)
    raise GemError(f'vertex {v} not in gem')


def relabel(g, mapping):
    '''The gem with vertex v renamed mapping[v].'''
    adj = {mapping[v]: tuple(None if w is None else mapping[w] for w in slots)
           for v, slots in g.adj.items()}
    return Gem(g.color_count, adj, boundary=g.boundary)


def disjoint_union(gems):
    '''Union of gems with distinct vertex ids.'''
    adj = {}
    for g in gems:
        assert not adj.keys() & g.adj.keys()
        adj.update(g.adj)
    first = gems[0]
    return Gem(first.color_count, adj, boundary=any(g.boundary for g in gems))


# The .gem text format


def parse_gem(text):
    '''Parse "gem <n+1> <2p>" followed by "e <u> <v> <c>" lines.'''
    header = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        parts = line.split()
        try:
            if parts[0] == 'gem' and header is None and len(parts) == 3:
                header = (int(parts[1]), int(parts[2]))
            elif parts[0] == 'e' and header is not None and len(parts) == 4:
                edges.append(tuple(int(part) for part in parts[1:]))
            else:
                raise ParseError(f'line {lineno}: unexpected {line!r}')
        except ValueError:
            raise ParseError(f'line {lineno}: bad integer in {line!r}') from None
    if header is None:
        raise ParseError('missing "gem" header')
    color_count, order = header
    g = Gem.from_edges(color_count, edges, vertices=range(order))
    if g.order != order:
        raise ParseError(f'header says {order} vertices, edges use {g.order}')
    return g


def canonical_ids(g):
    '''Renumber to 0..2p-1 unless the ids already are.'''
    ids = sorted(g.adj)
    if ids == list(range(len(ids))):
        return g
    return relabel(g, {v: n for n, v in enumerate(ids)})


def serialize_gem(g, comments=()):
    g = canonical_ids(g)
    lines = [f'# {comment}' for comment in comments]
    lines.append(f'gem {g.color_count} {g.order}')
    for u, v, c in sorted(g.edges(), key=lambda e: (e[2], e[0], e[1])):
        lines.append(f'e {u} {v} {c}')
    return '\n'.join(lines) + '\n'


def trivial_gem(color_count):
    '''The order-two gem: the n-sphere.'''
    return Gem(color_count, {0: (1, ) * color_count, 1: (0, ) * color_count})
