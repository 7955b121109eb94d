"""Input checks shared by the estimators and the CLI."""

from __future__ import annotations

import os

from .fermion import FermionicHamiltonian, MajoranaHamiltonian, as_majorana, load_hamiltonian


def check_hamiltonian(h, n_modes: int | None = None) -> MajoranaHamiltonian:
    """Coerce a Hamiltonian object or a ``.fop``/``.mop`` path to Majorana form."""
    if isinstance(h, (str, os.PathLike)):
        h = load_hamiltonian(h)
    if not isinstance(h, (FermionicHamiltonian, MajoranaHamiltonian)):
        raise TypeError(f"expected a Hamiltonian or a path, got {type(h).__name__}")
    h = as_majorana(h)
    if n_modes is not None and h.n_modes != n_modes:
        raise ValueError(f"Hamiltonian has {h.n_modes} modes, expected {n_modes}")
    return h


def check_n_jobs(n_jobs) -> int | None:
    if n_jobs is None:
        return None
    if not isinstance(n_jobs, int) or n_jobs < 1:
        raise ValueError(f"n_jobs must be a positive int or None, got {n_jobs!r}")
    return n_jobs
