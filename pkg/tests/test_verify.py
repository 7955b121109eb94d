import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from f2q.apply import QubitHamiltonian, map_hamiltonian, total_weight
from f2q.baselines import balanced_ternary_tree, bravyi_kitaev, jordan_wigner
from f2q.fermion import MajoranaHamiltonian, parse_fermionic
from f2q.hatt import HattBuilder, build, build_unopt
from f2q.mapping import vacuum_pair_predicate
from f2q.pauli import PauliString
from f2q.verify import (
    DenseLimitError,
    brute_force_best_tree,
    check_majorana_algebra,
    check_vacuum,
    random_majorana_hamiltonian,
    spectrum,
    string_to_matrix,
)


def test_string_matrices():
    assert np.array_equal(string_to_matrix(PauliString.from_label("Z")), np.diag([1, -1]))
    assert np.array_equal(string_to_matrix(PauliString.from_label("II")), np.eye(4))
    xy = string_to_matrix(PauliString.from_label("XY"))
    assert np.array_equal(xy, np.array([[0, 0, 0, -1j], [0, 0, 1j, 0], [0, -1j, 0, 0], [1j, 0, 0, 0]]))
    with pytest.raises(DenseLimitError):
        string_to_matrix(PauliString.identity(13))


def test_algebra_and_vacuum_examples(pair_model):
    assert check_majorana_algebra(jordan_wigner(2))
    assert check_majorana_algebra(jordan_wigner(2), "matrix")
    assert check_vacuum(jordan_wigner(2))
    assert check_vacuum(build(pair_model))


def test_spectrum_examples():
    assert spectrum(QubitHamiltonian.from_dict(1, {(1, 0): 1.0})) == pytest.approx([-1, 1])
    num = map_hamiltonian(parse_fermionic("modes 1\n(1,0) : 0^ 0"), jordan_wigner(1))
    assert spectrum(num) == pytest.approx([0, 1])
    with pytest.raises(ValueError):
        spectrum(QubitHamiltonian.from_dict(1, {(0, 1): 1j}))


@given(st.integers(2, 4), st.integers(0, 2**32 - 1))
def test_spectra_agree(n, seed):
    h = random_majorana_hamiltonian(n, 3 * n, np.random.default_rng(seed))
    ref = spectrum(map_hamiltonian(h, jordan_wigner(n)))
    for m in (bravyi_kitaev(n), balanced_ternary_tree(n), build(h), build_unopt(h)):
        assert np.abs(spectrum(map_hamiltonian(h, m)) - ref).max() < 1e-9


def test_brute_force_two_term(two_term):
    m, w = brute_force_best_tree(two_term)
    assert w <= 3
    assert total_weight(two_term, m) == w


def test_brute_force_single_mode():
    h = MajoranaHamiltonian.from_dict(1, {(0, 1): 1j})
    _, w = brute_force_best_tree(h)
    assert w == 1


def test_brute_force_vs_greedy(pair_model):
    _, best = brute_force_best_tree(pair_model)
    _, best_vac = brute_force_best_tree(pair_model, vacuum_only=True)
    greedy = total_weight(pair_model, build(pair_model))
    assert best <= best_vac <= greedy
    with pytest.raises(DenseLimitError):
        brute_force_best_tree(MajoranaHamiltonian(4, ()))


def test_unopt_can_break_the_vacuum():
    # a small search finds an input where the unrestricted scan loses the pairing
    rng = np.random.default_rng(3)
    for _ in range(200):
        h = random_majorana_hamiltonian(3, 4, rng)
        m = build_unopt(h)
        if not vacuum_pair_predicate(m):
            assert not check_vacuum(m)
            return
    pytest.fail("no vacuum-breaking instance found")


@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_predicate_matches_dense(n, seed):
    h = random_majorana_hamiltonian(n, 2 * n, np.random.default_rng(seed))
    for m in (jordan_wigner(n), bravyi_kitaev(n), balanced_ternary_tree(n), build(h), build_unopt(h)):
        assert vacuum_pair_predicate(m) == check_vacuum(m)
        assert check_majorana_algebra(m, "matrix")


def test_trace_records_weights(pair_model):
    b = HattBuilder(pair_model)
    b.run()
    assert [s.weight for s in b.trace] == [1, 2, 2]
