import pytest

from gemkit.lib.gem import (
    CyclicPermutation, Disconnected, Gem, GemError, NonBipartite, ParseError, InvalidGem,
    all_cyclic_permutations, canonical_ids, color_isomorphic, connected_blocks,
    disjoint_union, euler_characteristic, extract_residue_gem, gem_complexity,
    genus_min, genus_table, genus_wrt, hat_count, is_crystallization, pair_counts,
    parse_gem, relabel, residue_count, residue_gem, residues, serialize_gem,
    surface_euler, trivial_gem, validate_gem,
)


HEXAGON = [(0, 1, 0), (2, 3, 0), (4, 5, 0), (1, 2, 1), (3, 4, 1), (5, 0, 1)]


def torus():
    # every bicoloured cycle is the whole graph
    return Gem.from_edges(3, HEXAGON + [(0, 3, 2), (2, 5, 2), (4, 1, 2)])


def sphere6():
    return Gem.from_edges(3, HEXAGON + [(0, 1, 2), (2, 3, 2), (4, 5, 2)])


def test_trivial_gem():
    for colors in (3, 4, 5):
        g = trivial_gem(colors)
        assert g.order == 2 and g.p == 1 and g.n == colors - 1
        assert g.report().ok
        assert all(rho == 0 for _eps, rho in genus_table(g))
        assert gem_complexity(g) == 0


def test_classes_alternate():
    g = torus()
    for u, v, _c in g.edges():
        assert g.classes[u] != g.classes[v]


def test_validate_degree_defect():
    g = Gem.from_edges(3, [(0, 1, 0), (0, 1, 1)])
    report = validate_gem(g)
    assert report.degree_defects == [0, 1]
    assert not report.ok
    with pytest.raises(InvalidGem):
        g.require_valid()


def test_validate_clash_and_loop():
    g = Gem.from_edges(3, [(0, 1, 0), (0, 2, 0), (3, 3, 1)])
    report = validate_gem(g)
    assert (0, 0) in report.color_clashes
    assert report.loops == [3]
    assert not report.ok


def test_validate_odd_cycle():
    g = Gem.from_edges(3, [(0, 1, 0), (1, 2, 1), (2, 0, 2)])
    report = g.report()
    assert not report.bipartite
    with pytest.raises(NonBipartite):
        genus_wrt(g, (0, 1, 2))


def test_color_out_of_range():
    with pytest.raises(GemError):
        Gem.from_edges(3, [(0, 1, 3)])


def test_boundary_gem_valid():
    g = trivial_gem(4)
    b = Gem(4, {v: slots[:3] + (None, ) for v, slots in g.adj.items()}, boundary=True)
    assert b.report().ok
    assert b.boundary_vertices() == [0, 1]


def test_residues():
    g = sphere6()
    assert residue_count(g, (0, 1)) == 1
    assert residue_count(g, (0, 2)) == 3
    assert residues(g, (1, 2)).count == 1
    assert residues(g, (0, 2)).block_of()[0] == residues(g, (0, 2)).block_of()[1]
    with pytest.raises(GemError):
        residues(g, (0, 3))
    assert pair_counts(g) == {(0, 1): 1, (0, 2): 3, (1, 2): 1}


def test_hat_count_and_crystallization():
    assert is_crystallization(torus())
    g = sphere6()
    assert hat_count(g, 1) == 3
    assert not is_crystallization(g)


def test_cyclic_permutation_canonical():
    assert CyclicPermutation.of((2, 0, 1)).colors == (0, 1, 2)
    assert CyclicPermutation.of((0, 2, 1)).colors == (0, 1, 2)
    eps = CyclicPermutation.of((1, 0, 2, 3, 4))
    assert eps.colors == (0, 1, 4, 3, 2)
    assert sorted(eps.pairs()) == [(0, 1), (0, 2), (1, 4), (2, 3), (3, 4)]
    assert str(eps) == '(0,1,4,3,2)'
    with pytest.raises(GemError):
        CyclicPermutation.of((0, 1, 1))


@pytest.mark.parametrize('colors, count', [(3, 1), (4, 3), (5, 12)])
def test_all_cyclic_permutations(colors, count):
    perms = all_cyclic_permutations(colors)
    assert len(perms) == count
    assert len(set(perms)) == count
    assert all(CyclicPermutation.of(p.colors) == p for p in perms)


def test_genus_surfaces():
    assert genus_wrt(torus(), (0, 1, 2)) == 1
    assert genus_wrt(sphere6(), (0, 1, 2)) == 0
    assert genus_min(torus()) == (1, CyclicPermutation((0, 1, 2)))


def test_genus_disconnected():
    g = disjoint_union([trivial_gem(3), relabel(trivial_gem(3), {0: 2, 1: 3})])
    assert g.report().ok
    with pytest.raises(Disconnected):
        genus_table(g)


def test_euler_characteristic():
    assert euler_characteristic(trivial_gem(3)) == 2
    assert euler_characteristic(torus()) == 0
    assert euler_characteristic(trivial_gem(4)) == 0


def test_surface_euler():
    assert surface_euler(torus()) == (0, 0)
    assert surface_euler(sphere6()) == (2, 2)


def test_color_isomorphic():
    g = torus()
    mapping = {v: 10 + (v * 5) % 6 for v in g.adj}
    h = relabel(g, mapping)
    same, witness = color_isomorphic(g, h)
    assert same
    for u, v, c in g.edges():
        assert h.adj[witness[u]][c] == witness[v]
    assert color_isomorphic(g, sphere6()) == (False, None)
    assert color_isomorphic(g, trivial_gem(3)) == (False, None)


def test_extract_residue_gem():
    parts = extract_residue_gem(sphere6(), 1)
    assert len(parts) == 3
    assert all(part.color_count == 2 and part.order == 2 for part in parts)
    whole = extract_residue_gem(torus(), 2)
    assert len(whole) == 1 and whole[0].order == 6


def test_residue_gem():
    g = sphere6()
    part = residue_gem(g, (0, 2), 4)
    assert sorted(part.adj) == [4, 5]
    assert part.adj[4] == (5, 5)
    with pytest.raises(GemError):
        residue_gem(g, (0, 2), 99)


def test_connected_blocks_sorted():
    assert connected_blocks(sphere6(), (0, 2)) == [(0, 1), (2, 3), (4, 5)]


def test_parse_serialize():
    g = torus()
    text = serialize_gem(g, comments=['torus'])
    assert text.startswith('# torus\ngem 3 6\n')
    assert parse_gem(text) == g
    lines = [line for line in text.splitlines() if line.startswith('e ')]
    colors = [int(line.split()[3]) for line in lines]
    assert colors == sorted(colors)


def test_serialize_renumbers():
    g = relabel(torus(), {v: v + 100 for v in range(6)})
    assert canonical_ids(g) == torus()
    assert parse_gem(serialize_gem(g)) == torus()


@pytest.mark.parametrize('text', [
    '',
    'e 0 1 0\n',
    'gem 3 2\ne 0 1\n',
    'gem 3 2\ne 0 x 1\n',
    'gem 3 2\ne 0 5 1\n',
    'gem 3 2\ngem 3 2\n',
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_gem(text)
