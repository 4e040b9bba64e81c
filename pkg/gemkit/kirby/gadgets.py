# Copyright (c) 2024, the gemkit authors
#
# All rights reserved.
#
# See the file "LICENCE" for information about the copyright
# and warranty status of this software.

'''Gadgets of the augmented diagram's nodes and the edges pasting them.

Every node contributes two vertices per half-edge: (h, L) and (h, R),
the sides seen looking outward along h.  L vertices get odd ids and R
vertices even ids, which is the bipartition.

Colour 1 runs along the segments and colour 2 round the corners, so the
{1,2}-cycles are the faces.  Colours 0 and 3 follow the components: at
an undercrossing they close up inside the gadget, while over-passages
and curls are stations whose hanging 0-edges join each station to the
next one along the component, in two lanes.
'''

import attr


L, R = 'L', 'R'


def _corners(degree):
    return [((j, L), ((j + 1) % degree, R), 2) for j in range(degree)]


# PD positions 0 and 2 carry the under-strand, 1 and 3 the over-strand
CROSSING_TABLE = _corners(4) + [
    ((0, L), (0, R), 3), ((2, L), (2, R), 3),
    ((1, L), (3, R), 3), ((1, R), (3, L), 3),
    ((0, L), (2, R), 0), ((0, R), (2, L), 0),
]
CURL_TABLE = _corners(2) + [((0, L), (0, R), 3), ((1, L), (1, R), 3)]

# (in ports, out ports) of a curl by sign, lane by lane
CURL_PORTS = {
    1: (((1, L), (0, R)), ((1, R), (0, L))),
    -1: (((0, L), (1, R)), ((0, R), (1, L))),
}


@attr.s(slots=True, frozen=True)
class Place:
    node = attr.ib()
    h = attr.ib()
    side = attr.ib()


class VertexMap:
    '''Vertex ids of the gadgets of an augmented diagram.'''

    def __init__(self, aug):
        self.aug = aug
        self.base = []
        total = 0
        for node in aug.nodes:
            self.base.append(total)
            total += node.degree
        self.order = 2 * total
        self._places = [None] * self.order
        for node in aug.nodes:
            for h in range(node.degree):
                for side in (L, R):
                    self._places[self.vid(node.index, h, side)] = Place(node.index, h, side)

    def vid(self, node, h, side):
        return 2 * (self.base[node] + h) + (side == L)

    def place(self, v):
        return self._places[v]

    def ports(self, station):
        '''(in, out) vertex pairs of a station, indexed by lane.'''
        node = self.aug.nodes[station.node]
        if node.kind == 'curl':
            ins, outs = CURL_PORTS[node.sign]
        else:
            ins = ((station.h_in, L), (station.h_in, R))
            outs = ((station.h_out, R), (station.h_out, L))
        return (tuple(self.vid(node.index, *p) for p in ins),
                tuple(self.vid(node.index, *p) for p in outs))

    def groups(self):
        '''vertex -> gadget label, for DOT clusters.'''
        result = {}
        for v, place in enumerate(self._places):
            node = self.aug.nodes[place.node]
            if node.kind == 'crossing':
                result[v] = f'X{node.crossing + 1}'
            else:
                sign = '+' if node.sign > 0 else '-'
                result[v] = f'curl{sign} {node.arc}.{node.k}'
        return result


def internal_edges(vmap):
    for node in vmap.aug.nodes:
        table = CROSSING_TABLE if node.degree == 4 else CURL_TABLE
        for (h, side), (h2, side2), colour in table:
            yield (vmap.vid(node.index, h, side), vmap.vid(node.index, h2, side2), colour)


def segment_edges(vmap, seg):
    '''The two 1-edges running along a segment.'''
    (n, h), (m, h2) = seg.tail, seg.head
    yield (vmap.vid(n, h, L), vmap.vid(m, h2, R), 1)
    yield (vmap.vid(n, h, R), vmap.vid(m, h2, L), 1)


def lane_edges(vmap, i):
    '''The hanging 0-edges of component i, station to station.'''
    stations = vmap.aug.stations(i)
    ports = [vmap.ports(station) for station in stations]
    for k, (_ins, outs) in enumerate(ports):
        next_ins = ports[(k + 1) % len(ports)][0]
        for lane in (0, 1):
            yield (outs[lane], next_ins[lane], 0)


def lambda_edges(vmap):
    yield from internal_edges(vmap)
    for seg in vmap.aug.segments:
        yield from segment_edges(vmap, seg)
    for i in range(vmap.aug.diagram.l):
        yield from lane_edges(vmap, i)
