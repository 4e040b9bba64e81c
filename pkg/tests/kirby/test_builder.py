from collections import Counter

import pytest

from gemkit.kirby.builder import (
    BuildError, Builder, build_gamma_framed, build_lambda, locate_quadricolors, parse_groups,
    parse_sites,
)
from gemkit.kirby.diagram import plan_curls
from gemkit.kirby.gadgets import CROSSING_TABLE, CURL_TABLE, VertexMap, lambda_edges
from gemkit.lib.gem import Gem, genus_wrt, pair_counts, residue_count
from gemkit.lib.moves import (
    ATTACH, SMOOTH, MoveError, cap_off, greedy_reduce, quadricolor_ok, smooth_quadricolor,
    triad_exchange,
)


ORDERS = [
    ('trefoil', 32),
    ('hopf', 32),
    ('hopf_1_0', 28),
    ('dotted_hopf', 24),
    ('unknot_m3', 12),
    ('unknot_m1', 12),
    ('unknot_0', 16),
    ('unknot_1', 12),
    ('unknot_2', 8),
    ('unknot_5', 20),
    ('unknot_3', 12),
    ('unknot_4', 16),
    ('unknot_8', 32),
    ('plumbing_m2_m2', 32),
    ('fishtail', 48),
    ('dotted_over_pair', 40),
    ('dotted_over_run', 64),
]

KIRBY = ['dotted_hopf', 'fishtail', 'dotted_over_pair', 'dotted_over_run']


def lambda_of(load, name):
    aug = plan_curls(load(name))
    lam, registry = build_lambda(aug)
    return aug, lam, registry


def test_gadget_tables():
    for table, degree in ((CROSSING_TABLE, 4), (CURL_TABLE, 2)):
        slots = {}
        for a, b, colour in table:
            for end in (a, b):
                assert 0 <= end[0] < degree
                assert (end, colour) not in slots
                slots[end, colour] = True
        # 1-edges run along the segments
        assert not any(colour == 1 for _a, _b, colour in table)


def test_vertex_ids(load):
    aug = plan_curls(load('trefoil'))
    vmap = VertexMap(aug)
    assert vmap.order == 8 * 3 + 4 * 2
    seen = set()
    for node in aug.nodes:
        for h in range(node.degree):
            for side in 'LR':
                v = vmap.vid(node.index, h, side)
                assert vmap.place(v).node == node.index
                assert (v % 2 == 1) == (side == 'L')
                seen.add(v)
    assert seen == set(range(vmap.order))
    assert all(u % 2 != v % 2 for u, v, _c in lambda_edges(vmap))


@pytest.mark.parametrize('name, order', ORDERS)
def test_lambda(load, name, order):
    aug, lam, registry = lambda_of(load, name)
    d = aug.diagram
    assert lam.order == order == 8 * d.s + 4 * aug.curl_count()
    assert lam.report().ok
    assert residue_count(lam, (0, 3)) == 2 * d.l + d.s
    assert residue_count(lam, (1, 2)) == len(d.faces)
    assert len(registry.face_cycles) == len(d.faces)
    assert len(registry.segment_pairs) == len(aug.segments)
    for i, cycles in registry.component_cycles.items():
        assert len(cycles) == 2 and cycles[0] != cycles[1]
    lanes = {c for cycles in registry.component_cycles.values() for c in cycles}
    assert len(lanes) == 2 * d.l


@pytest.mark.parametrize('name, order', ORDERS)
def test_lambda_genus(load, name, order):
    aug, lam, _registry = lambda_of(load, name)
    assert genus_wrt(lam, (1, 0, 2, 3)) == aug.diagram.s + 1


def test_lambda_pair_counts(load):
    _aug, lam, _registry = lambda_of(load, 'trefoil')
    assert pair_counts(lam) == {(0, 1): 8, (0, 2): 5, (0, 3): 5,
                                (1, 2): 5, (1, 3): 5, (2, 3): 8}


@pytest.mark.parametrize('name, n', [
    ('unknot_5', 5), ('unknot_0', 4), ('unknot_3', 3), ('unknot_4', 4), ('unknot_8', 8),
])
def test_unknot_pair_counts(load, name, n):
    _aug, lam, _registry = lambda_of(load, name)
    counts = pair_counts(lam)
    assert counts[1, 2] == counts[0, 3] == 2
    assert counts[1, 3] == counts[2, 3] == counts[0, 1] == counts[0, 2] == n


@pytest.mark.parametrize('name', [name for name, _order in ORDERS])
def test_quadricolors(load, name):
    aug, lam, registry = lambda_of(load, name)
    sites = locate_quadricolors(lam, registry)
    assert sorted(sites) == [comp.index for comp in aug.diagram.framed()]
    for j, site in sites.items():
        assert site.component == j
        assert quadricolor_ok(lam, site)
        node = aug.site_node(j)
        assert registry.vmap.place(site.vertices[0]).node == node


def test_trefoil_site(load):
    _aug, lam, registry = lambda_of(load, 'trefoil')
    site = locate_quadricolors(lam, registry)[0]
    assert site.vertices == (26, 11, 24, 27, 28, 29)


def test_unknot_sites(load):
    _aug, lam, registry = lambda_of(load, 'unknot_5')
    assert locate_quadricolors(lam, registry)[0].vertices == (3, 18, 1, 2, 5, 4)
    _aug, lam, registry = lambda_of(load, 'unknot_m1')
    assert locate_quadricolors(lam, registry)[0].vertices[0] == 0


@pytest.mark.parametrize('name', ['trefoil', 'unknot_2', 'unknot_m3', 'unknot_5'])
def test_smoothing(load, name):
    _aug, lam, registry = lambda_of(load, name)
    sites = locate_quadricolors(lam, registry)
    smoothed = smooth_quadricolor(lam, sites[0])
    assert smoothed.order == lam.order - 4
    assert smoothed.report().ok
    # a knot with its 2-handle smoothed away leaves the 3-sphere
    assert greedy_reduce(smoothed).gem.order == 2


def doubled(lam):
    b = Gem(5, {v: slots + (None, ) for v, slots in lam.adj.items()}, boundary=True)
    return cap_off(b, 1)


@pytest.mark.parametrize('name', ['trefoil', 'hopf', 'hopf_1_0', 'plumbing_m2_m2',
                                  'unknot_0', 'unknot_8'])
def test_attach_on_doubled_lambda(load, name):
    aug, lam, registry = lambda_of(load, name)
    sites = locate_quadricolors(lam, registry)
    g = doubled(lam)
    assert genus_wrt(g, (1, 0, 2, 3, 4)) == aug.diagram.s + 1
    for n, (_j, site) in enumerate(sorted(sites.items()), start=1):
        before = pair_counts(g)
        attached = triad_exchange(g, site, ATTACH)
        after = pair_counts(attached)
        assert after[1, 4] == before[1, 4] - 2
        assert {k: v for k, v in after.items() if k != (1, 4)} == \
            {k: v for k, v in before.items() if k != (1, 4)}
        assert triad_exchange(attached, site, SMOOTH) == g
        g = attached
        assert genus_wrt(g, (1, 0, 2, 3, 4)) == aug.diagram.s + 1 + n
    assert g == build_gamma_framed(lam, sites)


@pytest.mark.parametrize('name, rho', [
    ('trefoil', 5), ('hopf', 5), ('unknot_0', 2), ('unknot_5', 2), ('plumbing_m2_m2', 5),
    ('unknot_8', 2),
])
def test_gamma_framed(load, name, rho):
    aug, lam, registry = lambda_of(load, name)
    sites = locate_quadricolors(lam, registry)
    gamma = build_gamma_framed(lam, sites)
    d = aug.diagram
    assert gamma.color_count == 5
    assert gamma.order == lam.order
    assert {v: slots[:4] for v, slots in gamma.adj.items()} == lam.adj
    assert residue_count(gamma, (1, 4)) == gamma.p - 2 * d.l
    assert residue_count(gamma, (3, 4)) == residue_count(gamma, (1, 3))
    assert genus_wrt(gamma, (1, 0, 2, 3, 4)) == rho == d.s + d.l + 1


def test_trefoil_gamma(load):
    result = Builder().build(load('trefoil'))
    assert result.plan is None
    assert result.gamma.order == 32
    assert residue_count(result.gamma, (1, 4)) == 14
    assert residue_count(result.gamma, (3, 4)) == 5


@pytest.mark.parametrize('name', KIRBY)
def test_build_kirby(load, name):
    result = Builder().build(load(name))
    gamma, lam = result.gamma, result.lam
    assert result.plan is not None
    assert gamma.order == lam.order == dict(ORDERS)[name]
    assert gamma.report().ok
    assert all(slots[4] is not None for slots in gamma.adj.values())
    assert {v: slots[:4] for v, slots in gamma.adj.items()} == lam.adj
    assert sorted(result.sites) == [comp.index for comp in result.diagram.framed()]


def test_fishtail_gamma(load):
    result = Builder().build(load('fishtail'))
    plan, aug = result.plan, result.aug
    assert {j: [aug.segments[seg].label for seg in ys]
            for j, ys in plan.y_segments.items()} == {1: ['5.2', '6'], 2: []}
    assert plan.u == 1
    assert genus_wrt(result.gamma, (1, 0, 2, 3, 4)) == 7


def test_sites_text(load):
    result = Builder().build(load('hopf'))
    text = result.sites_text()
    assert text.count('site ') == 2
    sites = parse_sites('# sites\n' + text)
    assert [site.component for site in sites] == [0, 1]
    assert [site.vertices for site in sites] == [result.sites[0].vertices,
                                                 result.sites[1].vertices]


@pytest.mark.parametrize('text', ['site 1 2 3', 'cite 1 0 1 2 3 4 5', 'site 1 a 1 2 3 4 5'])
def test_bad_sites(text):
    with pytest.raises(MoveError):
        parse_sites(text)


def test_groups_text(load):
    result = Builder().build(load('trefoil'))
    groups = parse_groups('# gadgets\n' + result.groups_text())
    assert groups == result.registry.vmap.groups()
    assert set(groups) == set(result.gamma.adj)
    sizes = Counter(groups.values())
    assert {label: sizes[label] for label in ('X1', 'X2', 'X3')} == {'X1': 8, 'X2': 8, 'X3': 8}
    assert sorted(size for label, size in sizes.items() if label.startswith('curl-')) == [4, 4]


@pytest.mark.parametrize('text', ['group 1', 'group x X1', 'grupo 1 X1'])
def test_bad_groups(text):
    with pytest.raises(BuildError):
        parse_groups(text)
