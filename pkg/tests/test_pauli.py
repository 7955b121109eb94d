import pytest
from hypothesis import given
from hypothesis import strategies as st

from f2q.pauli import (
    PauliString,
    SingleQubitPauli,
    ZeroAction,
    action_on_zero,
    anticommutes,
    multiply,
    product,
    symplectic_product,
    weight,
)
from f2q.verify import anticommute_dense, string_to_matrix


def P(label):
    return PauliString.from_label(label)


@st.composite
def strings(draw, n=None, max_n=20, phase=True):
    n = draw(st.integers(1, max_n)) if n is None else n
    x = draw(st.integers(0, (1 << n) - 1))
    z = draw(st.integers(0, (1 << n) - 1))
    ph = draw(st.integers(0, 3)) if phase else 0
    return PauliString(n, x, z, ph)


@st.composite
def same_size(draw, k=2, max_n=20):
    n = draw(st.integers(1, max_n))
    return [draw(strings(n=n)) for _ in range(k)]


def test_single_qubit_table():
    assert multiply(P("X"), P("Y")) == PauliString(1, 0, 1, 1)
    assert multiply(P("Y"), P("X")) == PauliString(1, 0, 1, 3)
    assert multiply(P("Y"), P("Z")) == P("iX")
    assert multiply(P("Z"), P("X")) == P("iY")


def test_balanced_tree_product():
    r = multiply(PauliString.from_compact("X0 X1", 3), PauliString.from_compact("Y0 Z2", 3))
    assert r.to_label(with_phase=False) == "ZXZ"
    assert weight(r) == 3


def test_square_is_identity_up_to_sign():
    s = P("-iXYZI")
    sq = multiply(s, s)
    assert sq.is_identity() and sq.phase % 2 == 0


def test_weight_examples():
    assert weight(P("XYIZ")) == 3
    assert weight(P("IIII")) == 0
    assert weight(P("IYXY")) == 3


def test_anticommutes_examples():
    assert anticommutes(P("IX"), P("IY"))
    assert not anticommutes(P("IX"), P("XI"))
    jw = [P(s) for s in ("IX", "IY", "XZ", "YZ")]
    assert all(anticommutes(a, b) for i, a in enumerate(jw) for b in jw[i + 1:])


def test_action_on_zero():
    assert action_on_zero(SingleQubitPauli.Z) is ZeroAction.KEEP_ZERO
    assert action_on_zero(SingleQubitPauli.I) is ZeroAction.KEEP_ZERO
    assert action_on_zero(SingleQubitPauli.X) is ZeroAction.FLIP_TO_ONE
    assert action_on_zero(SingleQubitPauli.Y) is ZeroAction.FLIP_TO_ONE_WITH_PHASE_I


def test_length_mismatch():
    with pytest.raises(ValueError):
        multiply(P("X"), P("XX"))
    with pytest.raises(ValueError):
        anticommutes(P("X"), P("XX"))


def test_label_forms():
    s = PauliString.from_compact("X3 Y2 Z0", 4)
    assert s.to_label() == "XYIZ"
    assert s.to_compact() == "X3 Y2 Z0"
    assert P("-iXZ").phase == 3
    assert P("XYIZ").op(3) is SingleQubitPauli.X
    assert P("XYIZ").op(0) is SingleQubitPauli.Z
    with pytest.raises(ValueError):
        PauliString.from_label("XQ")


@given(strings())
def test_label_round_trip(s):
    assert PauliString.from_label(s.to_label()) == s
    assert PauliString.from_compact(s.to_compact(), s.n_qubits) == s


@given(same_size(3))
def test_associative(abc):
    a, b, c = abc
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@given(strings())
def test_identity_neutral(s):
    e = PauliString.identity(s.n_qubits)
    assert multiply(e, s) == s == multiply(s, e)


@given(same_size(2))
def test_commutation_phase(ab):
    a, b = ab
    ab_, ba = multiply(a, b), multiply(b, a)
    assert (ab_.x, ab_.z) == (ba.x, ba.z) == (a.x ^ b.x, a.z ^ b.z)
    assert (ab_.phase - ba.phase) % 4 == 2 * symplectic_product(a, b) % 4


@given(same_size(2))
def test_weight_subadditive(ab):
    a, b = ab
    assert weight(multiply(a, b)) <= weight(a) + weight(b)


@given(same_size(2, max_n=5))
def test_anticommutes_matches_matrices(ab):
    a, b = ab
    assert anticommutes(a, b) == anticommute_dense(a, b)


@given(same_size(2, max_n=5))
def test_multiply_matches_matrices(ab):
    import numpy as np

    a, b = ab
    lhs = string_to_matrix(multiply(a, b))
    rhs = string_to_matrix(a) @ string_to_matrix(b)
    assert np.abs(lhs - rhs).max() < 1e-12


def test_product_helper():
    assert product([P("XI"), P("IX"), P("XX")], 2).is_identity()
