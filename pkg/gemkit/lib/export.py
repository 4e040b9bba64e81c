# Copyright (c) 2024, the gemkit authors
#
# All rights reserved.
#
# See the file "LICENCE" for information about the copyright
# and warranty status of this software.

'''Export of gems as simplex gluing tables and as Graphviz DOT.'''

from gemkit.lib.gem import GemError, canonical_ids


DOT_COLOURS = ('red', 'blue', 'darkgreen', 'orange', 'purple', 'brown')


def gluings(g):
    '''One line per simplex: "P <i> : <j0> ... <jn>", j_c being the simplex
    glued to i along the facet opposite its c-labelled vertex.'''
    g = canonical_ids(g)
    for v in sorted(g.adj):
        partners = ' '.join('-' if w is None else str(w) for w in g.adj[v])
        yield f'P {v} : {partners}'


def gluings_text(g):
    return ''.join(line + '\n' for line in gluings(g))


def parse_gluings(text):
    '''{simplex: (partners, ...)} from gluings text.'''
    table = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        head, sep, tail = line.partition(':')
        parts = head.split()
        if not sep or len(parts) != 2 or parts[0] != 'P':
            raise GemError(f'bad gluing line {line!r}')
        table[int(parts[1])] = tuple(None if x == '-' else int(x) for x in tail.split())
    return table


def is_gluing_involution(table):
    '''The partner relation on (simplex, facet) pairs is a fixed-point-free
    involution.'''
    for v, partners in table.items():
        for c, w in enumerate(partners):
            if w is None:
                continue
            if w == v or w not in table or table[w][c] != v:
                return False
    return True


def dot_lines(g, groups=None, name='gem'):
    '''Graphviz lines; groups maps a vertex to a cluster label.'''
    yield f'graph {name} {{'
    yield '  node [shape=point];'
    if groups:
        clusters = {}
        for v in sorted(g.adj):
            if v in groups:
                clusters.setdefault(groups[v], []).append(v)
        for n, (label, members) in enumerate(sorted(clusters.items())):
            yield f'  subgraph cluster_{n} {{'
            yield f'    label="{label}";'
            yield '    ' + ' '.join(str(v) for v in members) + ';'
            yield '  }'
    for u, v, c in sorted(g.edges(), key=lambda e: (e[2], e[0], e[1])):
        colour = DOT_COLOURS[c % len(DOT_COLOURS)]
        yield f'  {u} -- {v} [color={colour}, label="{c}"];'
    yield '}'


def dot_text(g, groups=None, name='gem'):
    return ''.join(line + '\n' for line in dot_lines(g, groups, name))
