"""Apply a mapping to a Majorana Hamiltonian and measure the Pauli weight."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .fermion import TOL, as_majorana
from .mapping import Mapping, vacuum_pair_predicate  # noqa: F401  (re-exported)
from .pauli import PauliString, multiply

__all__ = [
    "QubitHamiltonian",
    "WeightReport",
    "map_hamiltonian",
    "weight_report",
    "vacuum_pair_predicate",
]


def _term_key(s: PauliString):
    return (s.z, s.x)


@dataclass(frozen=True)
class QubitHamiltonian:
    """``sum_j c_j S_j`` with phases folded into the coefficients.

    Terms are sorted by ``(z_bits, x_bits)``.
    """

    n_qubits: int
    terms: tuple[tuple[PauliString, complex], ...] = ()

    @classmethod
    def from_dict(cls, n_qubits: int, coeffs: dict[tuple[int, int], complex], tol: float = TOL):
        terms = tuple(
            (PauliString(n_qubits, x, z), complex(c))
            for (z, x), c in sorted(coeffs.items())
            if abs(c) >= tol
        )
        return cls(n_qubits, terms)

    def as_dict(self) -> dict[str, complex]:
        return {s.to_label(): c for s, c in self.terms}

    def coefficient(self, label: str) -> complex:
        s = PauliString.from_label(label)
        for t, c in self.terms:
            if (t.x, t.z) == (s.x, s.z):
                return c
        return 0j

    def __len__(self) -> int:
        return len(self.terms)

    def is_hermitian(self, tol: float = 1e-9) -> bool:
        return all(abs(c.imag) <= tol for _, c in self.terms)

    def to_json(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "terms": [{"string": s.to_label(), "re": c.real, "im": c.imag} for s, c in self.terms],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, data: dict, tol: float = TOL) -> "QubitHamiltonian":
        n = int(data["n_qubits"])
        acc: dict[tuple[int, int], complex] = {}
        for t in data["terms"]:
            s = PauliString.from_label(t["string"])
            if s.n_qubits != n:
                raise ValueError(f"term {t['string']!r} does not act on {n} qubits")
            c = complex(t["re"], t["im"]) * 1j**s.phase
            acc[_term_key(s)] = acc.get(_term_key(s), 0) + c
        return cls.from_dict(n, acc, tol)

    @classmethod
    def loads(cls, text: str) -> "QubitHamiltonian":
        return cls.from_json(json.loads(text))


_PHASES = (1, 1j, -1, -1j)


def map_hamiltonian(h, m: Mapping, tol: float = TOL) -> QubitHamiltonian:
    """Replace every ``M_j`` by ``S_j`` and collect like Pauli terms."""
    h = as_majorana(h, tol)
    if h.n_modes != m.n_modes:
        raise ValueError(f"Hamiltonian has {h.n_modes} modes, mapping has {m.n_modes}")
    n = m.n_modes
    acc: dict[tuple[int, int], complex] = {}
    for term in h.terms:
        s = PauliString.identity(n)
        for j in term.indices:
            s = multiply(s, m.strings[j])
        key = _term_key(s)
        acc[key] = acc.get(key, 0) + term.coefficient * _PHASES[s.phase]
    return QubitHamiltonian.from_dict(n, acc, tol)


@dataclass(frozen=True)
class WeightReport:
    total_pauli_weight: int
    term_count: int
    max_term_weight: int
    per_qubit_weight: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "total_pauli_weight": self.total_pauli_weight,
            "term_count": self.term_count,
            "max_term_weight": self.max_term_weight,
            "per_qubit_weight": list(self.per_qubit_weight),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def weight_report(q: QubitHamiltonian) -> WeightReport:
    """Weight statistics over the non-identity terms."""
    per_qubit = [0] * q.n_qubits
    total = 0
    max_w = 0
    n_terms = 0
    for s, _ in q.terms:
        support = s.support
        if not support:
            continue
        n_terms += 1
        w = support.bit_count()
        total += w
        max_w = max(max_w, w)
        for k in range(q.n_qubits):
            if (support >> k) & 1:
                per_qubit[k] += 1
    return WeightReport(total, n_terms, max_w, tuple(per_qubit))


def total_weight(h, m: Mapping) -> int:
    return weight_report(map_hamiltonian(h, m)).total_pauli_weight
