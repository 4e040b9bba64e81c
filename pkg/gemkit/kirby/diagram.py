# Copyright (c) 2024, the gemkit authors
#
# All rights reserved.
#
# See the file "LICENCE" for information about the copyright
# and warranty status of this software.

'''Kirby diagrams: the .kd format, faces and chessboard colouring, writhes,
curl plans and the marker plan for dotted components.

Components are numbered from 1 in .kd files and from 0 in code.
'''

import attr
from networkx.utils import UnionFind

from gemkit.lib.util import class_logger, int_list


class DiagramError(Exception):
    '''Base class of diagram validation errors.'''


class ArcArityError(DiagramError):
    '''An arc does not occur exactly twice among the crossings.'''


class NonPlanarFaces(DiagramError):
    '''The traced faces fail the Euler count of a planar shadow.'''


class MissingOuterFace(DiagramError):
    '''The unbounded face is not declared or does not exist.'''


class DotAfterFrame(DiagramError):
    '''A dotted component follows a framed one.'''


class ColoringClash(DiagramError):
    '''Two adjacent faces received the same chess colour.'''


class PlanError(Exception):
    '''Base class of planning failures.'''


class NotSeparable(PlanError):
    '''A dotted component does not split into an over part and an under
    part.'''


class NoPlanFound(PlanError):
    '''The marker search exhausted its budget.'''


LEFT, RIGHT = 'left', 'right'
ALPHA, BETA = 'alpha', 'beta'
DOTTED, FRAMED = 'dotted', 'framed'
OVER, UNDER = 'over', 'under'
CROSSING, CURL = 'crossing', 'curl'

OTHER_SIDE = {LEFT: RIGHT, RIGHT: LEFT}


@attr.s(slots=True, frozen=True)
class Component:
    index = attr.ib()
    kind = attr.ib()
    framing = attr.ib()       # None when dotted
    arcs = attr.ib(converter=tuple)

    @property
    def dotted(self):
        return self.kind == DOTTED

    @property
    def number(self):
        return self.index + 1


@attr.s(slots=True, frozen=True)
class Crossing:
    index = attr.ib()
    arcs = attr.ib(converter=tuple)
    sign = attr.ib()
    under = attr.ib()         # component index
    over = attr.ib()


@attr.s(slots=True, frozen=True)
class Passage:
    '''A component entering a crossing at a PD position.'''
    crossing = attr.ib()
    position = attr.ib()

    @property
    def kind(self):
        return UNDER if self.position == 0 else OVER


@attr.s(slots=True, frozen=True)
class Face:
    index = attr.ib()
    sides = attr.ib(converter=tuple)     # ((arc, side), ...)
    corners = attr.ib(converter=tuple)   # ((crossing, i), ...)
    colour = attr.ib()

    @property
    def r(self):
        return len(self.corners)


@attr.s(slots=True, frozen=True)
class Pins:
    xmarks = attr.ib(factory=dict)   # component -> arc
    ys = attr.ib(factory=dict)       # component -> tuple of segment labels
    hs = attr.ib(factory=dict)       # component -> (arc, arc)


# Parsing


def _fields(tokens):
    '''key=value tokens; a value may continue over following tokens, as in
    "arcs= 1, 2, 3".'''
    fields = {}
    key = None
    for token in tokens:
        if '=' in token:
            key, _, value = token.partition('=')
            fields[key] = value
        elif key is not None:
            fields[key] += token
        else:
            raise ValueError(f'expected key=value, got {token!r}')
    return fields


def parse_kirby(text):
    '''Parse .kd text into a validated KirbyDiagram.'''
    crossings, components, outer = [], [], None
    xmarks, ys, hs = {}, {}, {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        try:
            if head == 'X':
                if len(parts) != 5:
                    raise ValueError('a crossing has four arcs')
                crossings.append(tuple(int(part) for part in parts[1:]))
            elif head == 'C':
                kind = parts[1]
                if kind == DOTTED:
                    framing, rest = None, parts[2:]
                elif kind == FRAMED:
                    framing, rest = int(parts[2]), parts[3:]
                else:
                    raise ValueError(f'unknown component kind {kind!r}')
                arcs = int_list(_fields(rest)['arcs'])
                if not arcs:
                    raise ValueError('a component needs arcs')
                components.append((kind, framing, arcs))
            elif head == 'outer':
                fields = _fields(parts[1:])
                side = fields['side']
                if side not in (LEFT, RIGHT):
                    raise ValueError(f'side must be left or right, not {side!r}')
                outer = (int(fields['arc']), side)
            elif head == 'Xmark':
                fields = _fields(parts[1:])
                xmarks[int(fields['component']) - 1] = int(fields['after_arc'])
            elif head == 'Y':
                fields = _fields(parts[1:])
                labels = [part for part in fields['segments'].split(',') if part]
                ys[int(fields['component']) - 1] = tuple(labels)
            elif head == 'H':
                fields = _fields(parts[1:])
                pair = int_list(fields['arcs'])
                if len(pair) != 2:
                    raise ValueError('H needs two arcs')
                hs[int(fields['component']) - 1] = tuple(pair)
            else:
                raise ValueError(f'unknown record {head!r}')
        except (ValueError, KeyError, IndexError) as e:
            raise DiagramError(f'line {lineno}: {e}: {line!r}') from None
    return KirbyDiagram(crossings, components, outer, Pins(xmarks, ys, hs))


class KirbyDiagram:
    '''A validated link diagram with dotted and framed components.

    arc_ends maps each arc to its (tail, head) occurrences (crossing, PD
    position), or None for the arc of a crossing-free component.
    '''

    def __init__(self, crossings, components, outer, pins=None):
        self.pins = pins or Pins()
        self.outer = outer
        seen_framed = False
        comps = []
        for index, (kind, framing, arcs) in enumerate(components):
            if kind == DOTTED and seen_framed:
                raise DotAfterFrame(f'dotted component {index + 1} follows a '
                                    f'framed one')
            seen_framed = seen_framed or kind == FRAMED
            comps.append(Component(index, kind, framing, arcs))
        if not comps:
            raise DiagramError('no components')
        self.components = tuple(comps)
        self.arc_component = {}
        for comp in comps:
            for arc in comp.arcs:
                if arc in self.arc_component:
                    raise ArcArityError(f'arc {arc} listed twice among components')
                self.arc_component[arc] = comp.index

        self._occurrences = {}
        for x, arcs in enumerate(crossings):
            for pos, arc in enumerate(arcs):
                self._occurrences.setdefault(arc, []).append((x, pos))
        for arc, occ in sorted(self._occurrences.items()):
            if len(occ) != 2:
                raise ArcArityError(f'arc {arc} occurs {len(occ)} times among '
                                    f'the crossings')
            if arc not in self.arc_component:
                raise ArcArityError(f'arc {arc} belongs to no component')
        for comp in comps:
            missing = [arc for arc in comp.arcs if arc not in self._occurrences]
            if missing and not (len(comps) == 1 and not crossings
                                and len(comp.arcs) == 1):
                raise ArcArityError(
                    f'arcs {missing} of component {comp.number} meet no crossing; '
                    f'only a lone crossing-free unknot is accepted, add a kink')
            if missing and comp.dotted:
                raise DiagramError('a crossing-free unknot must be framed')

        self.arc_ends = {}
        for comp in comps:
            self._orient(comp, crossings)
        self.crossings = tuple(self._crossing(x, arcs) for x, arcs in enumerate(crossings))
        self._require_connected()
        self.faces, self.m_alpha = _faces_and_colours(self)

    # Construction helpers

    def _other(self, arc, occ):
        first, second = self._occurrences[arc]
        return second if occ == first else first

    def _orient(self, comp, crossings):
        first = comp.arcs[0]
        if first not in self._occurrences:
            self.arc_ends[first] = None
            return
        for start in self._occurrences[first]:
            ends = {}
            order = []
            arc, head = first, start
            consistent = True
            for _ in comp.arcs:
                tail = self._other(arc, head)
                ends[arc] = (tail, head)
                order.append(arc)
                x, pos = head
                if pos == 2:
                    consistent = False
                    break
                out = (x, (pos + 2) % 4)
                arc = crossings[x][out[1]]
                head = self._other(arc, out)
            if consistent and order == list(comp.arcs) and (arc, head) == (first, start):
                self.arc_ends.update(ends)
                return
        raise DiagramError(f'component {comp.number}: the arc order disagrees '
                           f'with the crossings')

    def _crossing(self, x, arcs):
        under = self.arc_component[arcs[0]]
        over = self.arc_component[arcs[1]]
        # positive iff the over-strand runs from position 3 to position 1
        sign = 1 if self.arc_ends[arcs[3]][1] == (x, 3) else -1
        return Crossing(x, arcs, sign, under, over)

    def _require_connected(self):
        pieces = UnionFind(range(len(self.components)))
        for crossing in self.crossings:
            pieces.union(crossing.under, crossing.over)
        if len({pieces[i] for i in range(len(self.components))}) > 1:
            raise DiagramError('the diagram is split; link the pieces with a clasp')

    # Queries

    @property
    def s(self):
        return len(self.crossings)

    @property
    def l(self):
        return len(self.components)

    @property
    def m(self):
        return sum(comp.dotted for comp in self.components)

    @property
    def crossing_free(self):
        return not self.crossings

    def framed(self):
        return [comp for comp in self.components if not comp.dotted]

    def dotted(self):
        return [comp for comp in self.components if comp.dotted]

    def writhe(self, i):
        '''Sum of the signs of the self-crossings of component i.'''
        return sum(c.sign for c in self.crossings if c.under == c.over == i)

    def writhes(self):
        return tuple(self.writhe(i) for i in range(self.l))

    def passages(self, i):
        '''Where component i enters crossings, one per arc head, in
        traversal order.'''
        return [Passage(*self.arc_ends[arc][1]) for arc in self.components[i].arcs
                if self.arc_ends[arc] is not None]

    def entry_kind(self, arc):
        ends = self.arc_ends[arc]
        return None if ends is None else Passage(*ends[1]).kind

    def over_end(self, arc):
        '''Which end of arc lies on an over-strand: 'tail', 'head' or None.'''
        ends = self.arc_ends[arc]
        if ends is None:
            return None
        if ends[0][1] % 2:
            return 'tail'
        if ends[1][1] % 2:
            return 'head'
        return None

    def mixed(self, i):
        '''True if component i passes both over and under.'''
        kinds = set(_passage_kinds(self, i))
        return kinds == {OVER, UNDER}

    def s_bar(self):
        '''Crossings under which a framed component passes.'''
        return sum(not self.components[c.under].dotted for c in self.crossings)

    def face_of(self, arc, side):
        for face in self.faces:
            if (arc, side) in face.sides:
                return face.index
        raise DiagramError(f'no face on the {side} of arc {arc}')


# Faces


def _trace_faces(d):
    '''Faces as orbits of crossing corners; corner (x, i) lies between PD
    positions i and i + 1.'''
    seen = set()
    traced = []
    for x in range(d.s):
        for i in range(4):
            cur = (x, i)
            if cur in seen:
                continue
            sides, corners = [], []
            while cur not in seen:
                seen.add(cur)
                corners.append(cur)
                y, j = cur
                h = (j + 1) % 4
                arc = d.crossings[y].arcs[h]
                tail, head = d.arc_ends[arc]
                if tail == (y, h):
                    sides.append((arc, RIGHT))
                    cur = head
                else:
                    sides.append((arc, LEFT))
                    cur = tail
            traced.append((sides, corners))
    return traced


def _faces_and_colours(d):
    if d.crossing_free:
        arc = d.components[0].arcs[0]
        traced = [([(arc, LEFT)], []), ([(arc, RIGHT)], [])]
    else:
        traced = _trace_faces(d)
        if len(traced) != d.s + 2:
            raise NonPlanarFaces(f'{len(traced)} faces for {d.s} crossings; a '
                                 f'planar shadow has {d.s + 2}')
    face_of = {}
    for n, (sides, _corners) in enumerate(traced):
        for arc_side in sides:
            if arc_side in face_of:
                raise NonPlanarFaces(f'arc side {arc_side} bounds two faces')
            face_of[arc_side] = n
    if len(face_of) != 2 * len(d.arc_component):
        raise NonPlanarFaces('some arc sides bound no face')
    if d.outer is None:
        raise MissingOuterFace('declare the unbounded face with "outer"')
    if tuple(d.outer) not in face_of:
        raise MissingOuterFace(f'no face on the {d.outer[1]} of arc {d.outer[0]}')

    colours = {face_of[tuple(d.outer)]: ALPHA}
    queue = [face_of[tuple(d.outer)]]
    while queue:
        n = queue.pop()
        flipped = BETA if colours[n] == ALPHA else ALPHA
        for arc, side in traced[n][0]:
            other = face_of[(arc, OTHER_SIDE[side])]
            if other not in colours:
                colours[other] = flipped
                queue.append(other)
            elif colours[other] != flipped:
                raise ColoringClash(f'faces {n} and {other} share arc {arc} '
                                    f'and colour {colours[n]}')
    faces = tuple(Face(n, sides, corners, colours[n])
                  for n, (sides, corners) in enumerate(traced))
    return faces, sum(face.colour == ALPHA for face in faces)


def faces_and_chessboard(d):
    '''(faces, m_alpha) with the outer face coloured alpha.'''
    return d.faces, d.m_alpha


def associated_framed_link(d):
    '''Framings with every dotted component replaced by a 0-framed one.'''
    return tuple(0 if comp.dotted else comp.framing for comp in d.components)


# The curl-augmented diagram


@attr.s(slots=True, frozen=True)
class Node:
    '''A crossing (four half-edges in PD order) or a curl (half-edge 0 in,
    1 out).'''
    index = attr.ib()
    kind = attr.ib()
    crossing = attr.ib(default=None)
    sign = attr.ib(default=None)
    arc = attr.ib(default=None)
    k = attr.ib(default=None)

    @property
    def degree(self):
        return 4 if self.kind == CROSSING else 2


@attr.s(slots=True, frozen=True)
class Segment:
    index = attr.ib()
    component = attr.ib()
    arc = attr.ib()
    k = attr.ib()
    tail = attr.ib()     # (node, half-edge)
    head = attr.ib()
    label = attr.ib()


@attr.s(slots=True, frozen=True)
class Station:
    '''A node where a component's hanging 0-edges attach.'''
    node = attr.ib()
    h_in = attr.ib()
    h_out = attr.ib()


class AugmentedDiagram:
    '''A diagram with curls inserted along arcs.

    curls maps an arc to the signs of its curls from tail to head; sites
    maps each framed component to the (arc, k) of its quadricolor curl.
    '''

    def __init__(self, diagram, curls, sites, t_bar):
        self.diagram = diagram
        self.curls = {arc: tuple(signs) for arc, signs in curls.items() if signs}
        self.sites = dict(sites)
        self.t_bar = tuple(t_bar)
        nodes = [Node(x, CROSSING, crossing=x) for x in range(diagram.s)]
        self.curl_node = {}
        for comp in diagram.components:
            for arc in comp.arcs:
                for k, sign in enumerate(self.curls.get(arc, ())):
                    self.curl_node[(arc, k)] = len(nodes)
                    nodes.append(Node(len(nodes), CURL, sign=sign, arc=arc, k=k))
        self.nodes = tuple(nodes)
        self._build_segments()

    def _build_segments(self):
        segments = []
        self.component_segments = []
        for comp in self.diagram.components:
            indices = []
            for arc in comp.arcs:
                signs = self.curls.get(arc, ())
                ends = self.diagram.arc_ends[arc]
                m = len(signs)
                if ends is None:
                    pieces = [((self.curl_node[(arc, (j - 1) % m)], 1),
                               (self.curl_node[(arc, j)], 0)) for j in range(m)]
                else:
                    points = [ends[0]]
                    for j in range(m):
                        node = self.curl_node[(arc, j)]
                        points.extend([(node, 0), (node, 1)])
                    points.append(ends[1])
                    pieces = [(points[2 * j], points[2 * j + 1]) for j in range(m + 1)]
                for j, (tail, head) in enumerate(pieces):
                    label = f'{arc}.{j}' if m else str(arc)
                    indices.append(len(segments))
                    segments.append(Segment(len(segments), comp.index, arc, j,
                                            tail, head, label))
            self.component_segments.append(tuple(indices))
        self.segments = tuple(segments)
        self.end_of = {}
        for seg in segments:
            self.end_of[seg.tail] = seg.index
            self.end_of[seg.head] = seg.index
        self.by_label = {(seg.component, seg.label): seg.index for seg in segments}

    def opp(self, node, h):
        '''The other half-edge of the strand through node.'''
        return (h + 2) % 4 if self.nodes[node].kind == CROSSING else 1 - h

    def stations(self, i):
        '''The curls and over-passages of component i in traversal order.'''
        result = []
        for seg in self.component_segments[i]:
            node, h = self.segments[seg].head
            if self.nodes[node].kind == CURL or h % 2:
                result.append(Station(node, h, self.opp(node, h)))
        return result

    def _is_station_for(self, sign, node, h):
        n = self.nodes[node]
        return n.sign == sign if n.kind == CURL else h % 2 == 1

    def site_free_end(self, i):
        '''The half-edge of component i's site curl facing away from its
        station neighbour: 1 when the station precedes the curl.'''
        node = self.site_node(i)
        sign = self.nodes[node].sign
        before = self.segments[self.end_of[(node, 0)]].tail
        return 1 if self._is_station_for(sign, *before) else 0

    def dotted_over_segments(self):
        '''Segments of dotted components running from one over-passage to
        the next.'''
        result = []
        for comp in self.diagram.dotted():
            for index in self.component_segments[comp.index]:
                seg = self.segments[index]
                if all(self.nodes[node].kind == CROSSING and h % 2
                       for node, h in (seg.tail, seg.head)):
                    result.append(index)
        return result

    def segment_faces(self, seg):
        '''(left face, right face) of a segment.'''
        arc = self.segments[seg].arc
        return self.diagram.face_of(arc, LEFT), self.diagram.face_of(arc, RIGHT)

    def site_node(self, i):
        return self.curl_node[self.sites[i]]

    def curl_count(self, i=None):
        return sum(len(self.curls.get(arc, ())) for comp in self.diagram.components
                   if i is None or comp.index == i for arc in comp.arcs)

    def curl_sum(self, i):
        return sum(sum(self.curls.get(arc, ())) for arc in self.diagram.components[i].arcs)

    def framing_ok(self):
        return all(self.diagram.writhe(i) + self.curl_sum(i) == target
                   for i, target in enumerate(associated_framed_link(self.diagram)))

    def m_alpha_augmented(self):
        '''m_alpha once every curl loop is drawn as a face on the right of
        its strand: each loop takes the colour opposite that face.'''
        d = self.diagram
        extra = 0
        for arc, signs in self.curls.items():
            colour = d.faces[d.face_of(arc, RIGHT)].colour
            if colour == BETA:
                extra += len(signs)
        return d.m_alpha + extra


def chain_signs(c):
    '''Curl signs with sum c for a component whose only stations are its
    own curls; two like curls sit side by side.'''
    if c >= 2:
        return [1] * c
    if c <= -2:
        return [-1] * -c
    return {1: [1, 1, -1], 0: [1, 1, -1, -1], -1: [-1, -1, 1]}[c]


def _framed_curls(d, comp, c, w):
    '''(arc, signs, site k, t_bar) for framed component comp.  t_bar is
    |w - c|, or 2 when the framing equals the writhe, whatever number of
    curls goes in.'''
    t = abs(w - c)
    t_bar = t if t else 2
    sign = 1 if c > w else -1
    if d.crossing_free:
        return comp.arcs[0], chain_signs(c), 0, t_bar
    pinned = d.pins.xmarks.get(comp.index)
    if pinned is not None and pinned not in comp.arcs:
        raise PlanError(f'Xmark arc {pinned} is not on component {comp.number}')
    if not d.mixed(comp.index):
        signs = chain_signs(c - w)
        arc = pinned if pinned is not None else comp.arcs[0]
        return arc, signs, 0, t_bar
    over = [a for a in comp.arcs if d.over_end(a)]
    arc = pinned if pinned is not None else min(over)
    end = d.over_end(arc)
    if t >= 2:
        return arc, [sign] * t, 0, t
    if end is None:
        signs = [sign, sign, -sign] if t else [1, 1, -1, -1]
        return arc, signs, 0, t_bar
    if t == 1:
        return arc, [sign], 0, 1
    if end == 'tail':
        return arc, [1, -1], 0, 2
    return arc, [-1, 1], 1, 2


def plan_curls(d):
    '''Insert the curls fixing each framing, with one quadricolor curl per
    framed component next to a station of its own sign.'''
    curls, sites, t_bar = {}, {}, []
    for comp in d.components:
        i = comp.index
        w = d.writhe(i)
        if comp.dotted:
            if not d.mixed(i):
                curls[comp.arcs[0]] = chain_signs(-w)
            elif w:
                curls[comp.arcs[0]] = [-1 if w > 0 else 1] * abs(w)
            t_bar.append(None)
            continue
        arc, signs, k, t = _framed_curls(d, comp, comp.framing, w)
        curls[arc] = signs
        sites[i] = (arc, k)
        t_bar.append(t)
    aug = AugmentedDiagram(d, curls, sites, t_bar)
    assert aug.framing_ok()
    return aug


# Dotted components


def _passage_kinds(d, i):
    return [p.kind for p in d.passages(i)]


def split_dotted(d, i):
    '''(H arc, H' arc) splitting dotted component i: from H the component
    passes only over, from H' only under.'''
    comp = d.components[i]
    if not comp.dotted:
        raise PlanError(f'component {comp.number} is not dotted')
    kinds = _passage_kinds(d, i)
    arcs = comp.arcs
    pinned = d.pins.hs.get(i)
    if pinned is not None:
        a, b = pinned
        if a not in arcs or b not in arcs:
            raise NotSeparable(f'H arcs {pinned} not on component {comp.number}')
        ja, jb = arcs.index(a), arcs.index(b)
        k = len(arcs)
        span = (jb - ja) % k or k
        over_part = [kinds[(ja + t) % k] for t in range(span)]
        under_part = [kinds[(jb + t) % k] for t in range(k - span)]
        if set(over_part) - {OVER} or set(under_part) - {UNDER}:
            raise NotSeparable(f'pinned H arcs {pinned} do not separate over '
                               f'from under on component {comp.number}')
        return a, b
    if len(set(kinds)) <= 1:
        return arcs[0], arcs[1 % len(arcs)]
    h = [arcs[j] for j in range(len(arcs)) if kinds[j - 1] == UNDER and kinds[j] == OVER]
    h2 = [arcs[j] for j in range(len(arcs)) if kinds[j - 1] == OVER and kinds[j] == UNDER]
    if len(h) != 1 or len(h2) != 1:
        raise NotSeparable(f'component {comp.number} alternates over and under; '
                           f'isotope it so the overcrossings come together')
    return h[0], h2[0]


@attr.s(slots=True, frozen=True)
class DottedMarkers:
    component = attr.ib()
    h_segment = attr.ib()
    h_side = attr.ib()
    h2_segment = attr.ib()
    h2_side = attr.ib()
    region = attr.ib()


@attr.s(slots=True, frozen=True)
class MarkerPlan:
    x_segments = attr.ib()    # framed component -> segment
    y_segments = attr.ib()    # framed component -> tuple of segments
    dotted = attr.ib(converter=tuple)
    u = attr.ib()
    s_bar = attr.ib()
    passed = attr.ib(converter=tuple)   # crossings counted in u
    forward = attr.ib(factory=dict)     # framed component -> Y runs with the orientation

    def highlighted(self):
        return [seg for j in sorted(self.y_segments) for seg in self.y_segments[j]]


def _compositions(total, limits):
    '''Length vectors with the given sum, each entry within its limit, with
    the earlier entries as long as possible first.'''
    if not limits:
        if total == 0:
            yield ()
        return
    for first in range(min(total, limits[0]), -1, -1):
        for rest in _compositions(total - first, limits[1:]):
            yield (first, ) + rest


class MarkerPlanner:
    '''Finds highlighted sequences Y_j so that each dotted component's H and
    H' points face one region once the X_j and Y_j are deleted.

    The search goes shortest total length first; among equal totals the
    earlier components take the longer runs.
    '''

    def __init__(self, aug, budget=100_000):
        self.logger = class_logger(__name__, self.__class__.__name__)
        self.aug = aug
        self.d = aug.diagram
        self.budget = budget

    def x_segment(self, j):
        '''The segment at the free end of component j's quadricolor curl.'''
        aug = self.aug
        return aug.end_of[(aug.site_node(j), aug.site_free_end(j))]

    def forward(self, j):
        '''True when Y_j follows the orientation of component j.'''
        return self.aug.site_free_end(j) == 1

    def run(self, j):
        '''Segments of component j leaving X_j away from its quadricolor
        curl, stopping short of X_j.'''
        segs = self.aug.component_segments[j]
        start = segs.index(self.x_segment(j))
        step = 1 if self.forward(j) else -1
        return tuple(segs[(start + step * t) % len(segs)] for t in range(1, len(segs)))

    def _junction(self, j, first):
        '''(node, half-edge of first) where consecutive run segments meet.'''
        seg = self.aug.segments[first]
        return seg.head if self.forward(j) else seg.tail

    def _pinned_length(self, j, run):
        labels = self.d.pins.ys[j]
        try:
            wanted = {self.aug.by_label[(j, label)] for label in labels}
        except KeyError as e:
            raise PlanError(f'unknown segment {e.args[0][1]} on component {j + 1}') from None
        if wanted != set(run[:len(wanted)]):
            raise PlanError(f'pinned Y of component {j + 1} is not a run of '
                            f'segments leaving its X')
        return len(wanted)

    def _regions(self, x_segments, y_segments, splits):
        faces = UnionFind(range(len(self.d.faces)))
        for seg in list(x_segments.values()) + [s for ys in y_segments.values() for s in ys]:
            faces.union(*self.aug.segment_faces(seg))
        markers = []
        for i, (h_seg, h2_seg) in splits:
            found = None
            for h_side in (RIGHT, LEFT):
                for h2_side in (RIGHT, LEFT):
                    a = self._side_face(h_seg, h_side)
                    b = self._side_face(h2_seg, h2_side)
                    if faces[a] == faces[b]:
                        found = DottedMarkers(i, h_seg, h_side, h2_seg, h2_side, faces[a])
                        break
                if found:
                    break
            if found is None:
                return None
            markers.append(found)
        return markers

    def _side_face(self, seg, side):
        left, right = self.aug.segment_faces(seg)
        return right if side == RIGHT else left

    def _first_segment(self, arc):
        return self.aug.by_label[(self.d.arc_component[arc],
                                  f'{arc}.0' if arc in self.aug.curls else str(arc))]

    def plan(self):
        framed = [comp.index for comp in self.d.framed()]
        splits = []
        for comp in self.d.dotted():
            h, h2 = split_dotted(self.d, comp.index)
            splits.append((comp.index, (self._first_segment(h), self._first_segment(h2))))
        x_segments = {j: self.x_segment(j) for j in framed}
        runs = {j: self.run(j) for j in framed}
        fixed = {j: self._pinned_length(j, runs[j]) for j in framed if j in self.d.pins.ys}
        free = [j for j in framed if j not in fixed]
        limits = [len(runs[j]) for j in free]
        tried = 0
        for total in range(sum(limits) + 1):
            for lengths in _compositions(total, limits):
                tried += 1
                if tried > self.budget:
                    raise NoPlanFound(f'no marker plan within {self.budget:,d} candidates')
                chosen = dict(zip(free, lengths))
                chosen.update(fixed)
                y_segments = {j: runs[j][:chosen[j]] for j in framed}
                markers = self._regions(x_segments, y_segments, splits)
                if markers is not None:
                    self.logger.debug(f'plan found after {tried:,d} candidates')
                    return self._finish(x_segments, y_segments, markers)
        unmet = [i + 1 for i, _ in splits]
        raise NoPlanFound(f'no highlighted sequences join H and H\' of dotted '
                          f'components {unmet}')

    def _finish(self, x_segments, y_segments, markers):
        aug = self.aug
        done = set()
        passed = []
        for j in sorted(y_segments):
            run = y_segments[j]
            done.update(run[:1])
            for first, second in zip(run, run[1:]):
                done.add(second)
                node, h = self._junction(j, first)
                if aug.nodes[node].kind != CROSSING or h % 2:
                    continue
                over = {aug.end_of[(node, 1)], aug.end_of[(node, 3)]}
                if not over & done:
                    passed.append(aug.nodes[node].crossing)
        forward = {j: self.forward(j) for j in y_segments}
        return MarkerPlan(x_segments, y_segments, markers, len(passed),
                          self.d.s_bar(), passed, forward)


def plan_markers(aug, budget=100_000):
    return MarkerPlanner(aug, budget).plan()


def diagram_report(aug, plan=None):
    '''A JSON-ready summary of the diagram, its curls and markers.'''
    d = aug.diagram
    report = {
        's': d.s, 'l': d.l, 'm': d.m,
        'writhes': list(d.writhes()),
        'framings': list(associated_framed_link(d)),
        'signs': [c.sign for c in d.crossings],
        'faces': [{'sides': [f'{arc}{side[0]}' for arc, side in face.sides],
                   'colour': face.colour, 'r': face.r} for face in d.faces],
        'm_alpha': d.m_alpha,
        'm_alpha_augmented': aug.m_alpha_augmented(),
        'curls': {str(arc): list(signs) for arc, signs in sorted(aug.curls.items())},
        'curls_inserted': [aug.curl_count(i) for i in range(d.l)],
        't_bar': list(aug.t_bar),
        'sites': {str(i + 1): aug.segments[aug.end_of[(aug.site_node(i), 0)]].label
                  for i in sorted(aug.sites)},
    }
    if plan is not None:
        report['markers'] = {
            'u': plan.u, 's_bar': plan.s_bar,
            'x': {str(j + 1): aug.segments[seg].label
                  for j, seg in sorted(plan.x_segments.items())},
            'y': {str(j + 1): [aug.segments[seg].label for seg in segs]
                  for j, segs in sorted(plan.y_segments.items())},
            'h': {str(m.component + 1): [aug.segments[m.h_segment].label, m.h_side,
                                         aug.segments[m.h2_segment].label, m.h2_side]
                  for m in plan.dotted},
        }
    return report
