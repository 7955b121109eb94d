import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from f2q.apply import map_hamiltonian
from f2q.baselines import jordan_wigner
from f2q.estimators import (
    BalancedTernaryTreeMapper,
    BravyiKitaevMapper,
    HATTMapper,
    JordanWignerMapper,
    make_mapper,
)
from f2q.hatt import build
from f2q.mapping import Method


def test_params_and_clone():
    est = HATTMapper(vacuum_preserving=False, n_jobs=2)
    assert est.get_params() == {"vacuum_preserving": False, "pairing": "maps", "n_jobs": 2}
    c = clone(est)
    assert c.get_params() == est.get_params()
    assert BalancedTernaryTreeMapper().set_params(assignment="leaf-order").assignment == "leaf-order"


def test_fit_transform(pair_model):
    est = HATTMapper().fit(pair_model)
    assert est.n_modes_ == 3
    assert est.mapping_ == build(pair_model)
    assert [s.weight for s in est.trace_] == [1, 2, 2]
    assert est.transform(pair_model) == map_hamiltonian(pair_model, est.mapping_)
    assert est.tree_ is est.mapping_.tree


def test_not_fitted(pair_model):
    with pytest.raises(NotFittedError):
        JordanWignerMapper().transform(pair_model)


def test_accepts_fermionic_and_paths(pair_fermionic, pair_model, tmp_path):
    p = tmp_path / "pair_model.fop"
    p.write_text(pair_fermionic.dumps())
    q1 = JordanWignerMapper().fit_transform(str(p))
    q2 = JordanWignerMapper().fit_transform(pair_model)
    assert q1 == q2 == map_hamiltonian(pair_model, jordan_wigner(3))


def test_validation_errors(pair_model):
    with pytest.raises(TypeError):
        JordanWignerMapper().fit([[1, 2]])
    est = BravyiKitaevMapper().fit(pair_model)
    with pytest.raises(ValueError):
        est.transform(jordan_wigner_h(2))
    with pytest.raises(ValueError):
        HATTMapper(n_jobs=0).fit(pair_model)


def jordan_wigner_h(n):
    from f2q.fermion import MajoranaHamiltonian

    return MajoranaHamiltonian(n, ())


@pytest.mark.parametrize("name,method", [("jw", "jw"), ("bk", "bk"), ("btt", "btt"), ("hatt", "hatt"), ("hatt-unopt", "hatt-unopt")])
def test_make_mapper(name, method, pair_model):
    assert make_mapper(name).fit(pair_model).mapping_.method is Method(method)
    with pytest.raises(ValueError):
        make_mapper("parity")
