import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from f2q.apply import QubitHamiltonian, WeightReport, map_hamiltonian, weight_report
from f2q.baselines import balanced_ternary_tree, bravyi_kitaev, jordan_wigner
from f2q.fermion import MajoranaHamiltonian, check_hermitian, parse_fermionic, to_majorana
from f2q.hatt import build
from f2q.mapping import Mapping
from f2q.tree import TernaryTree, extract_strings
from f2q.verify import random_majorana_hamiltonian

NUMBER_MODEL = "modes 2\n({c0},0) : 0^ 0\n({c1},0) : 1^ 1\n({c2},0) : 0^ 1^ 0 1\n"


def number_model_expected(c0, c1, c2):
    return {
        "II": (2 * c0 + 2 * c1 - c2) / 4,
        "IZ": (c2 - 2 * c0) / 4,
        "ZI": (c2 - 2 * c1) / 4,
        "ZZ": -c2 / 4,
    }


@pytest.mark.parametrize("c", [(0.7, -1.3, 2.9), (0.11, 0.23, -0.57), (3.0, 1.0, 4.0)])
def test_number_model_under_jw(c):
    h = parse_fermionic(NUMBER_MODEL.format(c0=c[0], c1=c[1], c2=c[2]))
    q = map_hamiltonian(h, jordan_wigner(2))
    got = q.as_dict()
    want = number_model_expected(*c)
    assert set(got) == set(want)
    for k, v in want.items():
        assert abs(got[k] - v) < 1e-12


def unbalanced_mapping():
    tree = TernaryTree.from_children(3, {7: (0, 8, 6), 8: (9, 4, 5), 9: (1, 2, 3)})
    return Mapping(3, extract_strings(tree)[:6], "hatt", tree=tree), tree


def test_unbalanced_example(two_term):
    m, _ = unbalanced_mapping()
    s = m.strings
    assert [s[0].to_label(), s[5].to_label(), s[1].to_label(), s[3].to_label()] == ["IIX", "IZY", "XXY", "ZXY"]
    q = map_hamiltonian(two_term, m)
    assert sorted(lbl for lbl, _ in q.as_dict().items()) == ["IZZ", "YII"]
    assert weight_report(q).total_pauli_weight == 3


def test_weight_report_examples():
    six = QubitHamiltonian.from_dict(3, {(0b101, 0b010): 1.0, (0b001, 0b110): 2.0})
    assert weight_report(six).total_pauli_weight == 6
    three = QubitHamiltonian.from_dict(3, {(0b011, 0): 1.0, (0b100, 0b100): 1.0})
    r = weight_report(three)
    assert (r.total_pauli_weight, r.term_count, r.max_term_weight, r.per_qubit_weight) == (3, 2, 2, (1, 1, 1))
    ident = QubitHamiltonian.from_dict(2, {(0, 0): 1.5})
    assert weight_report(ident) == WeightReport(0, 0, 0, (0, 0))


def test_empty_hamiltonian():
    q = map_hamiltonian(MajoranaHamiltonian(2, ()), jordan_wigner(2))
    assert len(q) == 0
    assert weight_report(q).total_pauli_weight == 0


def test_mode_mismatch():
    with pytest.raises(ValueError):
        map_hamiltonian(MajoranaHamiltonian(2, ()), jordan_wigner(3))


def test_qubit_json_round_trip(pair_model):
    q = map_hamiltonian(pair_model, build(pair_model))
    again = QubitHamiltonian.loads(q.dumps())
    assert again == q
    data = json.loads(q.dumps())
    assert set(data) == {"n_qubits", "terms"}
    assert all(set(t) == {"string", "re", "im"} for t in data["terms"])


def test_terms_sorted_by_z_then_x(rng):
    h = random_majorana_hamiltonian(4, 12, rng)
    q = map_hamiltonian(h, jordan_wigner(4))
    keys = [(s.z, s.x) for s, _ in q.terms]
    assert keys == sorted(keys)
    assert all(s.phase == 0 for s, _ in q.terms)


@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_hermitian_in_hermitian_out(n, seed):
    h = random_majorana_hamiltonian(n, 3 * n, np.random.default_rng(seed))
    assert check_hermitian(h)
    for m in (jordan_wigner(n), bravyi_kitaev(n), balanced_ternary_tree(n), build(h)):
        assert map_hamiltonian(h, m).is_hermitian()


@given(st.integers(1, 6), st.integers(0, 2**32 - 1), st.randoms())
def test_weight_invariant_under_term_order(n, seed, rnd):
    h = random_majorana_hamiltonian(n, 3 * n, np.random.default_rng(seed))
    terms = list(h.terms)
    rnd.shuffle(terms)
    shuffled = MajoranaHamiltonian.from_products(n, [(t.coefficient, t.indices) for t in terms])
    m = jordan_wigner(n)
    assert weight_report(map_hamiltonian(h, m)) == weight_report(map_hamiltonian(shuffled, m))


def test_per_qubit_sums_to_total(rng):
    h = random_majorana_hamiltonian(5, 20, rng)
    r = weight_report(map_hamiltonian(h, bravyi_kitaev(5)))
    assert sum(r.per_qubit_weight) == r.total_pauli_weight


def test_number_operator_coefficients():
    q = map_hamiltonian(to_majorana(parse_fermionic("modes 1\n(1,0) : 0^ 0")), jordan_wigner(1))
    assert q.as_dict() == pytest.approx({"I": 0.5, "Z": -0.5})
