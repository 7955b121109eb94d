"""scikit-learn style wrappers.

``fit`` builds a mapping from a Hamiltonian (only the adaptive mapper reads
it; the others use its mode count). ``transform`` maps a Hamiltonian to a
:class:`~f2q.apply.QubitHamiltonian`.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_hamiltonian, check_n_jobs
from .apply import QubitHamiltonian, map_hamiltonian
from .baselines import balanced_ternary_tree, bravyi_kitaev, jordan_wigner
from .hatt import HattBuilder
from .mapping import Mapping


class _MapperBase(TransformerMixin, BaseEstimator):
    def _build(self, h) -> Mapping:
        raise NotImplementedError

    def fit(self, X, y=None):
        h = check_hamiltonian(X)
        self.mapping_ = self._build(h)
        self.n_modes_ = h.n_modes
        self.tree_ = self.mapping_.tree
        return self

    def transform(self, X) -> QubitHamiltonian:
        check_is_fitted(self, "mapping_")
        return map_hamiltonian(check_hamiltonian(X, self.n_modes_), self.mapping_)

    def fit_transform(self, X, y=None, **fit_params) -> QubitHamiltonian:
        return self.fit(X, y).transform(X)


class JordanWignerMapper(_MapperBase):
    def _build(self, h):
        return jordan_wigner(h.n_modes)


class BravyiKitaevMapper(_MapperBase):
    def _build(self, h):
        return bravyi_kitaev(h.n_modes)


class BalancedTernaryTreeMapper(_MapperBase):
    def __init__(self, assignment: str = "vacuum"):
        self.assignment = assignment

    def _build(self, h):
        return balanced_ternary_tree(h.n_modes, self.assignment)


class HATTMapper(_MapperBase):
    """Hamiltonian-adaptive ternary tree.

    Parameters
    ----------
    vacuum_preserving : bool
        Use the paired construction. ``False`` selects the unrestricted scan.
    pairing : {"maps", "traverse"}
        Z-descendant lookups via cached maps or explicit tree walks.
    n_jobs : int or None
        Threads for the candidate scan; results do not depend on it.

    Attributes
    ----------
    mapping_, tree_, n_modes_, trace_
    """

    def __init__(self, vacuum_preserving: bool = True, pairing: str = "maps", n_jobs: int | None = None):
        self.vacuum_preserving = vacuum_preserving
        self.pairing = pairing
        self.n_jobs = n_jobs

    def _build(self, h):
        builder = HattBuilder(
            h, vacuum=self.vacuum_preserving, pairing=self.pairing, n_jobs=check_n_jobs(self.n_jobs)
        )
        mapping = builder.run()
        self.trace_ = list(builder.trace)
        return mapping


MAPPERS = {
    "jw": JordanWignerMapper,
    "bk": BravyiKitaevMapper,
    "btt": BalancedTernaryTreeMapper,
    "hatt": HATTMapper,
}


def make_mapper(method: str, **params):
    if method == "hatt-unopt":
        return HATTMapper(vacuum_preserving=False, **params)
    try:
        return MAPPERS[method](**params)
    except KeyError:
        raise ValueError(f"unknown mapping {method!r}") from None
