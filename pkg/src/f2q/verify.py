"""Dense-matrix and brute-force oracles.

Everything here is deliberately naive: Kronecker products, explicit Fock-space
ladder matrices and exhaustive enumeration. It shares no weight bookkeeping
with :mod:`f2q.hatt`, so it can be used to check that module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .apply import QubitHamiltonian, map_hamiltonian, weight_report
from .circuit import Gate
from .fermion import FermionicHamiltonian, MajoranaHamiltonian, as_majorana
from .mapping import Mapping, Method, check_anticommutation, vacuum_pair_predicate
from .pauli import PauliString
from .tree import TernaryTree, extract_strings

MAX_DENSE_QUBITS = 12
MAX_SPECTRUM_QUBITS = 10
MAX_VACUUM_MODES = 6

_I2 = np.eye(2, dtype=complex)
_SIGMA = {
    "I": _I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class DenseLimitError(ValueError):
    pass


def _guard(n: int, limit: int = MAX_DENSE_QUBITS):
    if n > limit:
        raise DenseLimitError(f"{n} qubits exceeds the dense limit of {limit}")


def _kron_all(mats) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def string_to_matrix(s: PauliString) -> np.ndarray:
    """Dense ``2^n x 2^n`` matrix, highest qubit as the leftmost Kronecker factor."""
    _guard(s.n_qubits)
    mats = [_SIGMA[s.op(q).name] for q in reversed(range(s.n_qubits))]
    return (1j ** s.phase) * _kron_all(mats)


def qubit_hamiltonian_to_matrix(q: QubitHamiltonian) -> np.ndarray:
    _guard(q.n_qubits)
    dim = 1 << q.n_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for s, c in q.terms:
        out += c * string_to_matrix(s)
    return out


def majorana_to_matrix(h: MajoranaHamiltonian, m: Mapping) -> np.ndarray:
    """``sum c prod S_j`` multiplied out as matrices, without any Pauli algebra."""
    _guard(m.n_modes)
    dim = 1 << m.n_modes
    mats = [string_to_matrix(s) for s in m.strings]
    out = np.zeros((dim, dim), dtype=complex)
    for t in h.terms:
        term = np.eye(dim, dtype=complex)
        for j in t.indices:
            term = term @ mats[j]
        out += t.coefficient * term
    return out


def annihilation_matrix(j: int, n_modes: int) -> np.ndarray:
    """``a_j`` on the occupation basis; bit ``k`` of the index is mode ``k``."""
    _guard(n_modes)
    dim = 1 << n_modes
    a = np.zeros((dim, dim), dtype=complex)
    for state in range(dim):
        if (state >> j) & 1:
            sign = -1 if bin(state & ((1 << j) - 1)).count("1") % 2 else 1
            a[state ^ (1 << j), state] = sign
    return a


def fermionic_to_matrix(h: FermionicHamiltonian) -> np.ndarray:
    n = h.n_modes
    dim = 1 << n
    ann = [annihilation_matrix(j, n) for j in range(n)]
    out = np.zeros((dim, dim), dtype=complex)
    for t in h.terms:
        term = np.eye(dim, dtype=complex)
        for mode, creation in t.ops:
            term = term @ (ann[mode].conj().T if creation else ann[mode])
        out += t.coefficient * term
    return out


def anticommute_dense(a: PauliString, b: PauliString, tol: float = 1e-10) -> bool:
    ma, mb = string_to_matrix(a), string_to_matrix(b)
    return bool(np.linalg.norm(ma @ mb + mb @ ma) < tol)


def check_majorana_algebra(m: Mapping, mode: str = "symplectic", tol: float = 1e-10) -> bool:
    """``{S_i, S_j} = 2 delta_ij I`` on matrices, or its symplectic equivalent."""
    if mode == "symplectic":
        return check_anticommutation(m.strings)
    if mode != "matrix":
        raise ValueError(f"mode must be 'symplectic' or 'matrix', got {mode!r}")
    _guard(m.n_modes, MAX_VACUUM_MODES)
    mats = [string_to_matrix(s) for s in m.strings]
    eye = np.eye(1 << m.n_modes)
    for i, a in enumerate(mats):
        for j in range(i, len(mats)):
            b = mats[j]
            target = 2 * eye if i == j else 0
            if np.abs(a @ b + b @ a - target).max() > tol:
                return False
    return True


def check_vacuum(m: Mapping, tol: float = 1e-10) -> bool:
    """Every ``(S_2j + i S_2j+1)/2`` annihilates ``|0...0>``."""
    _guard(m.n_modes, MAX_VACUUM_MODES)
    zero = np.zeros(1 << m.n_modes, dtype=complex)
    zero[0] = 1
    for j in range(m.n_modes):
        op = (string_to_matrix(m.strings[2 * j]) + 1j * string_to_matrix(m.strings[2 * j + 1])) / 2
        if np.linalg.norm(op @ zero) >= tol:
            return False
    return True


def spectrum(q: QubitHamiltonian, tol: float = 1e-9) -> np.ndarray:
    """Ascending eigenvalues of the dense matrix."""
    _guard(q.n_qubits, MAX_SPECTRUM_QUBITS)
    mat = qubit_hamiltonian_to_matrix(q)
    if np.abs(mat - mat.conj().T).max() > tol:
        raise ValueError("Hamiltonian is not Hermitian")
    return np.linalg.eigvalsh(mat)


# -- circuit oracle -----------------------------------------------------------------


def pauli_exponential(s: PauliString, theta: float) -> np.ndarray:
    """``exp(-i theta S)`` for a Hermitian string (``S^2 = I``)."""
    mat = string_to_matrix(s)
    return math.cos(theta) * np.eye(mat.shape[0]) - 1j * math.sin(theta) * mat


def _single(g: Gate) -> np.ndarray:
    if g.kind == "h":
        return np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    half = g.angle / 2
    if g.kind == "rx":
        return math.cos(half) * _I2 - 1j * math.sin(half) * _SIGMA["X"]
    return np.diag([np.exp(-1j * half), np.exp(1j * half)])


def gate_matrix(g: Gate, n_qubits: int) -> np.ndarray:
    _guard(n_qubits)
    if g.kind == "cx":
        control, target = g.qubits
        dim = 1 << n_qubits
        out = np.zeros((dim, dim), dtype=complex)
        for state in range(dim):
            out[state ^ (1 << target) if (state >> control) & 1 else state, state] = 1
        return out
    (q,) = g.qubits
    return _kron_all(_single(g) if k == q else _I2 for k in reversed(range(n_qubits)))


def circuit_unitary(gates, n_qubits: int) -> np.ndarray:
    u = np.eye(1 << n_qubits, dtype=complex)
    for g in gates:
        u = gate_matrix(g, n_qubits) @ u
    return u


# -- random inputs ------------------------------------------------------------------


def random_majorana_hamiltonian(
    n_modes: int, n_terms: int, rng: np.random.Generator, max_degree: int = 4, hermitian: bool = True
) -> MajoranaHamiltonian:
    """Random monomials; Hermitian ones get real or imaginary coefficients by degree."""
    n_ops = 2 * n_modes
    coeffs: dict[tuple[int, ...], complex] = {}
    for _ in range(n_terms):
        k = int(rng.integers(1, min(max_degree, n_ops) + 1))
        idx = tuple(sorted(int(i) for i in rng.choice(n_ops, size=k, replace=False)))
        c = float(rng.uniform(0.1, 1.0)) * (1 if rng.random() < 0.5 else -1)
        if hermitian and k % 4 in (2, 3):
            c = 1j * c
        elif not hermitian:
            c = complex(c, float(rng.uniform(-1, 1)))
        coeffs[idx] = coeffs.get(idx, 0) + c
    return MajoranaHamiltonian.from_dict(n_modes, coeffs)


# -- brute force over trees ---------------------------------------------------------


def _shapes(n_internal: int):
    """Nested tuples: ``None`` is a leaf, ``(x, y, z)`` an internal node."""
    if n_internal == 0:
        yield None
        return
    rest = n_internal - 1
    for a in range(rest + 1):
        for b in range(rest - a + 1):
            for x in _shapes(a):
                for y in _shapes(b):
                    for z in _shapes(rest - a - b):
                        yield (x, y, z)


def _shape_tree(shape, n_modes: int) -> TernaryTree:
    """Internal ids in breadth-first order, leaves numbered left to right."""
    children: dict[int, tuple[int, int, int]] = {}
    ids: dict[int, int] = {}
    queue = [shape]
    order = []
    while queue:
        node = queue.pop(0)
        if node is not None:
            ids[id(node)] = 2 * n_modes + 1 + len(order)
            order.append(node)
            queue.extend(node)
    leaf_counter = itertools.count()

    def label(node) -> int:
        if node is None:
            return next(leaf_counter)
        kids = tuple(label(c) for c in node)
        children[ids[id(node)]] = kids
        return ids[id(node)]

    label(shape)
    return TernaryTree.from_children(n_modes, children)


def all_tree_shapes(n_modes: int) -> list[TernaryTree]:
    return [_shape_tree(s, n_modes) for s in _shapes(n_modes)]


def brute_force_best_tree(h, vacuum_only: bool = False) -> tuple[Mapping, int]:
    """Minimum total mapped weight over every tree shape and leaf assignment (N <= 3)."""
    h = as_majorana(h)
    n = h.n_modes
    if n > 3:
        raise DenseLimitError(f"brute force is limited to 3 modes, got {n}")
    best: tuple[int, Mapping] | None = None
    for tree in all_tree_shapes(n):
        strings = extract_strings(tree)
        for perm in itertools.permutations(range(2 * n + 1), 2 * n):
            m = Mapping(n, [strings[p] for p in perm], Method.BTT, tree=tree)
            if vacuum_only and not vacuum_pair_predicate(m):
                continue
            w = weight_report(map_hamiltonian(h, m)).total_pauli_weight
            if best is None or w < best[0]:
                best = (w, m)
    assert best is not None
    return best[1], best[0]


# -- naive HATT reference -----------------------------------------------------------


_OP_BITS = ((1, 0), (1, 1), (0, 1))  # X, Y, Z


def naive_weight(terms, sel, leaves_of) -> int:
    """Weight on the new qubit, from the single-qubit operator each Majorana factor puts there."""
    branch = {}
    for b, node in enumerate(sel):
        for leaf in leaves_of[node]:
            branch[leaf] = b
    total = 0
    for term in terms:
        x = z = 0
        for j in term:
            b = branch.get(j)
            if b is not None:
                x ^= _OP_BITS[b][0]
                z ^= _OP_BITS[b][1]
        total += bool(x or z)
    return total


@dataclass
class _Forest:
    n_modes: int
    live: list[int]
    children: dict[int, tuple[int, int, int]]
    leaves_of: dict[int, frozenset]

    @classmethod
    def initial(cls, n_modes: int) -> "_Forest":
        leaves = range(2 * n_modes + 1)
        return cls(n_modes, list(leaves), {}, {o: frozenset([o]) for o in leaves})

    def desc_z(self, node: int) -> int:
        while node in self.children:
            node = self.children[node][2]
        return node

    def owner(self, leaf: int) -> int:
        return next(o for o in self.live if leaf in self.leaves_of[o])

    def candidates(self, vacuum: bool):
        if not vacuum:
            # the weight does not depend on the branch order, so unordered triples cover every candidate
            yield from itertools.combinations(self.live, 3)
            return
        last = 2 * self.n_modes
        for ox, oz in itertools.permutations(self.live, 2):
            x = self.desc_z(ox)
            if x == last:
                continue
            oy = self.owner(x ^ 1)
            if oy in (ox, oz):
                continue
            yield (oy, ox, oz) if x & 1 else (ox, oy, oz)

    def attach(self, sel):
        new = 2 * self.n_modes + 1 + len(self.children)
        self.children[new] = tuple(sel)
        self.leaves_of[new] = frozenset().union(*(self.leaves_of[o] for o in sel))
        self.live = [o for o in self.live if o not in sel] + [new]
        return new


def _terms(h: MajoranaHamiltonian):
    return [t.indices for t in h.non_identity_terms]


def rescan_trace(h, trace, vacuum: bool = True) -> list[tuple[int, int, int]]:
    """Replay ``trace``; per step return ``(chosen weight, minimum over a full re-scan, candidates)``."""
    h = as_majorana(h)
    forest = _Forest.initial(h.n_modes)
    terms = _terms(h)
    out = []
    for step in trace:
        chosen = naive_weight(terms, step.children, forest.leaves_of)
        weights = [naive_weight(terms, sel, forest.leaves_of) for sel in forest.candidates(vacuum)]
        out.append((chosen, min(weights), len(weights)))
        forest.attach(step.children)
    return out


def reference_build(h, vacuum: bool = True) -> TernaryTree:
    """Greedy tree with the same tie-break as :mod:`f2q.hatt`, written without its shortcuts.

    The tie-break key is the scanned pair ``(O_X, O_Z)`` before any X/Y swap
    for the vacuum variant, and the sorted triple otherwise.
    """
    h = as_majorana(h)
    n = h.n_modes
    forest = _Forest.initial(n)
    terms = _terms(h)
    for _ in range(n):
        best = None
        if vacuum:
            last = 2 * n
            for ox, oz in itertools.permutations(forest.live, 2):
                x = forest.desc_z(ox)
                if x == last:
                    continue
                oy = forest.owner(x ^ 1)
                if oy in (ox, oz):
                    continue
                sel = (oy, ox, oz) if x & 1 else (ox, oy, oz)
                key = (naive_weight(terms, sel, forest.leaves_of), ox, oz)
                if best is None or key < best[0]:
                    best = (key, sel)
        else:
            for sel in itertools.combinations(sorted(forest.live), 3):
                key = (naive_weight(terms, sel, forest.leaves_of),) + sel
                if best is None or key < best[0]:
                    best = (key, sel)
        if best is None:
            raise RuntimeError("no feasible selection")
        forest.attach(best[1])
    return TernaryTree.from_children(n, forest.children)
