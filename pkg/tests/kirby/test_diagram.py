import pytest

from gemkit.kirby.diagram import (
    ALPHA, BETA, LEFT, OVER, RIGHT, UNDER, ArcArityError, DiagramError, DotAfterFrame,
    MarkerPlanner, MissingOuterFace, PlanError, associated_framed_link, chain_signs,
    diagram_report, faces_and_chessboard, parse_kirby, plan_curls, plan_markers, split_dotted,
)

from tests.kirby import diagram_path


HOPF_LINES = ['X 4 1 3 2', 'X 2 3 1 4']


def hopf_text(*records):
    return '\n'.join(HOPF_LINES + list(records)) + '\n'


def test_parse_trefoil(load):
    d = load('trefoil')
    assert (d.s, d.l, d.m) == (3, 1, 0)
    assert [c.sign for c in d.crossings] == [1, 1, 1]
    assert d.writhes() == (3, )
    assert len(d.faces) == d.s + 2
    assert sum(face.r for face in d.faces) == 4 * d.s
    assert not d.crossing_free
    # the unbounded face is a triangle
    assert d.faces[d.face_of(*d.outer)].r == 3
    assert d.m_alpha == 2


def test_parse_hopf(load):
    d = load('hopf')
    assert [c.sign for c in d.crossings] == [-1, -1]
    assert d.writhes() == (0, 0)
    assert [p.kind for p in d.passages(0)] == [UNDER, OVER]
    assert d.over_end(1) == 'head'
    assert d.over_end(2) == 'tail'
    assert d.mixed(0) and d.mixed(1)
    assert len(d.faces) == 4
    assert d.m_alpha == 2


def test_parse_unknot(load):
    d = load('unknot_5')
    assert d.crossing_free
    assert d.arc_ends[1] is None
    assert len(d.faces) == 2
    assert d.writhe(0) == 0
    assert d.over_end(1) is None


def test_comments_and_blank_lines():
    d = parse_kirby('# a comment\n\nC framed 2 arcs= 1   # trailing\nouter arc=1 side=right\n')
    assert d.components[0].framing == 2


@pytest.mark.parametrize('name', ['trefoil', 'hopf', 'dotted_hopf', 'unknot_0'])
def test_chessboard(load, name):
    d = load(name)
    faces, m_alpha = faces_and_chessboard(d)
    for arc in d.arc_component:
        left = faces[d.face_of(arc, LEFT)]
        right = faces[d.face_of(arc, RIGHT)]
        assert {left.colour, right.colour} == {ALPHA, BETA}
    outer = faces[d.face_of(*d.outer)]
    assert outer.colour == ALPHA
    assert m_alpha == sum(face.colour == ALPHA for face in faces)


def test_bad_arity(load):
    with pytest.raises(ArcArityError):
        load('bad')


def test_dot_after_frame():
    with pytest.raises(DotAfterFrame):
        parse_kirby(hopf_text('C framed 0 arcs= 2,1', 'C dotted arcs= 4,3',
                              'outer arc=1 side=left'))


def test_missing_outer():
    with pytest.raises(MissingOuterFace):
        parse_kirby(hopf_text('C framed 0 arcs= 2,1', 'C framed 0 arcs= 4,3'))


@pytest.mark.parametrize('line', [
    'Z 1 2',
    'X 1 2 3',
    'C twisted arcs= 1',
    'outer arc=1 side=up',
    'H component=1 arcs= 1',
])
def test_bad_records(line):
    with pytest.raises(DiagramError):
        parse_kirby(f'{line}\nC framed 0 arcs= 1\nouter arc=1 side=left\n')


def test_wrong_arc_order():
    text = 'X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2\nC framed 1 arcs= 6,5,4,3,2,1\nouter arc=1 side=left\n'
    with pytest.raises(DiagramError):
        parse_kirby(text)


def test_split_diagram():
    with pytest.raises(DiagramError):
        parse_kirby('C framed 0 arcs= 1\nC framed 0 arcs= 2\nouter arc=1 side=left\n')


@pytest.mark.parametrize('c, signs', [
    (5, [1] * 5),
    (2, [1, 1]),
    (1, [1, 1, -1]),
    (0, [1, 1, -1, -1]),
    (-1, [-1, -1, 1]),
    (-3, [-1, -1, -1]),
])
def test_chain_signs(c, signs):
    assert chain_signs(c) == signs
    assert sum(signs) == c


def test_plan_trefoil(load):
    aug = plan_curls(load('trefoil'))
    assert aug.curls == {1: (-1, -1)}
    assert aug.sites == {0: (1, 0)}
    assert aug.t_bar == (2, )
    assert aug.framing_ok()
    assert aug.site_free_end(0) == 1
    stations = aug.stations(0)
    assert len(stations) == 5
    assert stations[0].node == aug.curl_node[(1, 0)]
    assert len(aug.segments) == 8


def test_plan_hopf(load):
    aug = plan_curls(load('hopf'))
    assert aug.curls == {1: (-1, 1), 3: (-1, 1)}
    assert aug.sites == {0: (1, 1), 1: (3, 1)}
    assert aug.t_bar == (2, 2)
    assert [aug.site_free_end(i) for i in (0, 1)] == [0, 0]
    assert aug.curl_count() == 4


def test_plan_hopf_framed(load):
    aug = plan_curls(load('hopf_1_0'))
    assert aug.curls == {1: (1, ), 3: (-1, 1)}
    assert aug.sites == {0: (1, 0), 1: (3, 1)}
    assert aug.t_bar == (1, 2)
    assert aug.framing_ok()


@pytest.mark.parametrize('name, c, t_bar', [
    ('unknot_5', 5, 5),
    ('unknot_2', 2, 2),
    ('unknot_1', 1, 1),
    ('unknot_0', 0, 2),
    ('unknot_m1', -1, 1),
    ('unknot_m3', -3, 3),
])
def test_plan_unknot(load, name, c, t_bar):
    aug = plan_curls(load(name))
    assert aug.curls == {1: tuple(chain_signs(c))}
    assert aug.sites == {0: (1, 0)}
    assert aug.t_bar == (t_bar, )
    assert aug.curl_count() == len(chain_signs(c))
    assert len(aug.stations(0)) == aug.curl_count()


def test_plan_unmixed_components():
    # one component passes under the other twice
    d = parse_kirby('X 1 3 2 4\nX 2 3 1 4\nC framed 1 arcs= 1,2\nC framed 0 arcs= 3,4\n'
                    'outer arc=1 side=left\n')
    assert d.writhes() == (0, 0)
    assert not d.mixed(0) and not d.mixed(1)
    aug = plan_curls(d)
    assert aug.t_bar == (1, 2)
    assert [aug.curl_count(i) for i in (0, 1)] == [3, 4]
    assert aug.framing_ok()
    assert diagram_report(aug)['curls_inserted'] == [3, 4]


def test_run_leaves_x(load):
    # the free end is the outgoing one: the run follows the orientation
    planner = MarkerPlanner(plan_curls(load('unknot_5')))
    assert planner.x_segment(0) == 1
    assert planner.forward(0)
    assert planner.run(0) == (2, 3, 4, 0)
    planner = MarkerPlanner(plan_curls(load('hopf')))
    assert planner.x_segment(0) == 2
    assert not planner.forward(0)
    assert planner.run(0) == (1, 0, 3)


def test_pinned_y():
    d = parse_kirby('C framed 5 arcs= 1\nouter arc=1 side=left\nY component=1 segments=1.2\n')
    plan = plan_markers(plan_curls(d))
    assert plan.y_segments == {0: (2, )}
    assert plan.forward == {0: True}
    assert plan.u == 0
    d = parse_kirby('C framed 5 arcs= 1\nouter arc=1 side=left\nY component=1 segments=1.3\n')
    with pytest.raises(PlanError):
        plan_markers(plan_curls(d))


def fishtail(after_arc):
    with open(diagram_path('fishtail')) as f:
        text = f.read()
    return parse_kirby(text.replace('after_arc=5', f'after_arc={after_arc}'))


def labels(aug, plan):
    return {j: [aug.segments[seg].label for seg in ys] for j, ys in plan.y_segments.items()}


def test_fishtail_plans():
    d = fishtail(5)
    assert (d.s, d.l, d.m, d.s_bar()) == (4, 3, 1, 3)
    aug = plan_curls(d)
    assert aug.t_bar == (None, 2, 2)
    plan = plan_markers(aug)
    assert aug.segments[plan.x_segments[1]].label == '5.1'
    assert labels(aug, plan) == {1: ['5.2', '6'], 2: []}
    assert plan.u == 1 and plan.passed == (2, )
    assert plan.u <= plan.s_bar
    # X after arc 3 needs no highlighting at all
    aug = plan_curls(fishtail(3))
    other = plan_markers(aug)
    assert aug.segments[other.x_segments[1]].label == '3.1'
    assert labels(aug, other) == {1: [], 2: []}
    assert other.u == 0


def test_pinned_xmark_off_component():
    d = parse_kirby(hopf_text('C framed 0 arcs= 2,1', 'C framed 0 arcs= 4,3',
                              'outer arc=1 side=left', 'Xmark component=1 after_arc=3'))
    with pytest.raises(PlanError):
        plan_curls(d)


def test_pinned_xmark():
    d = parse_kirby(hopf_text('C framed 0 arcs= 2,1', 'C framed 0 arcs= 4,3',
                              'outer arc=1 side=left', 'Xmark component=1 after_arc=2'))
    aug = plan_curls(d)
    # arc 2 leaves an overcrossing
    assert aug.curls[2] == (1, -1)
    assert aug.sites[0] == (2, 0)


def test_dotted_hopf(load):
    d = load('dotted_hopf')
    assert d.m == 1 and d.l == 2
    assert [comp.dotted for comp in d.components] == [True, False]
    assert associated_framed_link(d) == (0, 0)
    assert d.s_bar() == 1
    assert split_dotted(d, 0) == (1, 2)
    with pytest.raises(PlanError):
        split_dotted(d, 1)
    aug = plan_curls(d)
    assert aug.curls == {3: (-1, 1)}
    assert aug.t_bar == (None, 2)
    assert 0 not in aug.sites


def test_marker_plan(load):
    aug = plan_curls(load('dotted_hopf'))
    plan = plan_markers(aug)
    x = plan.x_segments[1]
    assert aug.segments[x].label == '3.1'
    assert x not in plan.y_segments[1]
    assert 0 <= plan.u <= plan.s_bar == 1
    assert [m.component for m in plan.dotted] == [0]
    report = diagram_report(aug, plan)
    assert report['markers']['x'] == {'2': '3.1'}
    assert report['sites'] == {'2': '3.1'}


def test_diagram_report(load):
    aug = plan_curls(load('trefoil'))
    report = diagram_report(aug)
    assert report['s'] == 3 and report['l'] == 1
    assert report['writhes'] == [3]
    assert report['framings'] == [1]
    assert report['curls'] == {'1': [-1, -1]}
    assert report['curls_inserted'] == [2]
    assert report['sites'] == {'1': '1.0'}
    assert len(report['faces']) == 5
    assert 'markers' not in report
