import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from f2q.fermion import MajoranaHamiltonian
from f2q.hatt import HattBuilder
from f2q.pauli import anticommutes, weight
from f2q.tree import (
    DescMaps,
    TernaryTree,
    TreeError,
    build_balanced,
    desc_z,
    extract_strings,
    maps_update,
    parse_sexpr,
    subtree_leaf_count,
)
from f2q.verify import all_tree_shapes, random_majorana_hamiltonian


def labels(tree):
    return [s.to_label() for s in extract_strings(tree)]


def four_qubit_tree():
    # root is qubit 2; its Y child is qubit 0, whose Z child is qubit 1
    return TernaryTree.from_children(4, {11: (0, 9, 12), 9: (1, 2, 10), 10: (3, 4, 5), 12: (6, 7, 8)})


def test_path_string():
    assert labels(four_qubit_tree())[3] == "IYXZ"


def test_single_mode():
    t = build_balanced(1)
    assert labels(t) == ["X", "Y", "Z"]
    assert t.depth() == 1


def test_balanced_three_modes():
    s = labels(build_balanced(3))
    assert s[0] == "IXX" and s[1] == "IYX" and s[5] == "ZIY" and s[6] == "IIZ"


def test_balanced_four_modes():
    t = build_balanced(4)
    assert t.n_leaves == 9
    assert t.depth() == 2
    assert t.children[t.root] == (9 + 1, 9 + 2, 9 + 3)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 8, 13, 20, 40])
def test_balanced_depth(n):
    t = build_balanced(n)
    bound = math.ceil(math.log(2 * n + 1, 3) - 1e-12)
    assert t.depth() <= bound + 1
    avg = sum(len(t.path_to(leaf)) for leaf in range(t.n_leaves)) / t.n_leaves
    assert avg <= bound
    if n == 13:
        assert max(weight(s) for s in extract_strings(t)) <= 3


def test_desc_z_example():
    t = TernaryTree.from_children(3, {7: (0, 1, 6), 8: (2, 3, 7), 9: (8, 4, 5)})
    assert desc_z(t, 7) == 6
    assert desc_z(t, 2) == 2
    assert desc_z(t, 8) == 6
    assert desc_z(t, 9) == 5


def test_maps_update_examples():
    maps = DescMaps.initial(3)
    assert all(maps.down[i] == i and maps.up[i] == i for i in range(7))
    maps_update(maps, 7, 0, 1, 6)
    assert maps.down[7] == 6 and maps.up[6] == 7
    maps_update(maps, 8, 2, 3, 7)
    assert maps.down[8] == 6 and maps.up[6] == 8
    assert 0 not in maps.up and 2 not in maps.up


def test_tree_validation():
    with pytest.raises(TreeError):
        TernaryTree.from_children(2, {5: (0, 1, 2)})
    with pytest.raises(TreeError):
        TernaryTree.from_children(2, {5: (0, 1, 6), 6: (2, 3, 5)})
    with pytest.raises(TreeError):
        TernaryTree.from_children(2, {5: (0, 1, 2), 6: (3, 4, 4)})


def test_sexpr_round_trip():
    t = four_qubit_tree()
    text = t.to_sexpr()
    assert text.startswith("(q2 (X leaf0) (Y (q0")
    assert parse_sexpr(text, 4) == t
    with pytest.raises(TreeError):
        parse_sexpr("(q0 (X leaf0) (Y leaf1))", 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_all_shapes_count(n):
    assert len(all_tree_shapes(n)) == {1: 1, 2: 3, 3: 12}[n]


def _trees_up_to(n_max):
    for n in range(1, n_max + 1):
        yield build_balanced(n)
    yield from all_tree_shapes(3)


@pytest.mark.parametrize("tree", list(_trees_up_to(8)), ids=lambda t: f"N{t.n_modes}")
def test_strings_anticommute_and_weight_sum(tree):
    s = extract_strings(tree)
    assert all(anticommutes(a, b) for i, a in enumerate(s) for b in s[i + 1:])
    internal = [n for n in tree.iter_nodes() if not tree.is_leaf(n)]
    assert sum(weight(x) for x in s) == sum(subtree_leaf_count(tree, n) for n in internal)


@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_maps_match_traversal_every_step(n, seed):
    import numpy as np

    h = random_majorana_hamiltonian(n, 2 * n, np.random.default_rng(seed))
    b = HattBuilder(h)
    while not b.done:
        b.step()
        # cached map equals a fresh walk through the partial forest
        for node in b.node_set:
            walk = node
            while walk in b._children:
                walk = b._children[walk][2]
            assert b.maps.down[node] == walk
            assert b.maps.up[walk] == node
        # a leaf is unpaired exactly when it is the Z-descendant of a live node
        assert set(b.maps.up) == {b.maps.down[o] for o in b.node_set}
