"""Hamiltonian-independent mappings: Jordan-Wigner, Bravyi-Kitaev, balanced ternary tree."""

from __future__ import annotations

from collections import deque

from .mapping import Mapping, Method, vacuum_pair_predicate
from .pauli import PauliString, multiply
from .tree import TernaryTree, build_balanced, desc_z, extract_strings


def _check_modes(n_modes: int):
    if n_modes < 1:
        raise ValueError(f"n_modes must be >= 1, got {n_modes}")


def jordan_wigner(n_modes: int) -> Mapping:
    _check_modes(n_modes)
    strings = []
    for j in range(n_modes):
        zs = (1 << j) - 1
        strings.append(PauliString(n_modes, 1 << j, zs))
        strings.append(PauliString(n_modes, 1 << j, zs | (1 << j)))
    return Mapping(n_modes, strings, Method.JW, vacuum_preserving=True)


def _fenwick_update_set(j: int, n: int) -> set[int]:
    out = set()
    k = j
    while k < n:
        out.add(k)
        k |= k + 1
    return out


def _fenwick_prefix_set(j: int) -> set[int]:
    """Qubits whose XOR is the parity of occupations ``0 .. j-1``."""
    out = set()
    k = j - 1
    while k >= 0:
        out.add(k)
        k = (k & (k + 1)) - 1
    return out


def _mask(qubits) -> int:
    m = 0
    for q in qubits:
        m |= 1 << q
    return m


def bravyi_kitaev(n_modes: int) -> Mapping:
    """Fenwick-tree Bravyi-Kitaev encoding; valid for any ``n_modes``.

    Qubit ``k`` stores the occupation parity of modes
    ``(k & (k+1)) .. k``. ``M_2j = X_update Z_parity`` and
    ``M_2j+1 = i M_2j Z_occupation``, where the occupation set recovers ``n_j``.
    """
    _check_modes(n_modes)
    strings = []
    for j in range(n_modes):
        update = _mask(_fenwick_update_set(j, n_modes))
        parity = _fenwick_prefix_set(j)
        occupation = _fenwick_prefix_set(j + 1) ^ parity
        even = PauliString(n_modes, update, _mask(parity))
        odd = multiply(even, PauliString(n_modes, 0, _mask(occupation), phase=1))
        strings += [even, odd]
    m = Mapping(n_modes, strings, Method.BK)
    return Mapping(n_modes, m.strings, Method.BK, vacuum_preserving=vacuum_pair_predicate(m))


def tree_pairs(tree: TernaryTree) -> list[tuple[int, int]]:
    """Per internal node in breadth-first order: ``(desc_Z(x child), desc_Z(y child))``."""
    pairs = []
    queue = deque([tree.root])
    while queue:
        node = queue.popleft()
        if tree.is_leaf(node):
            continue
        x, y, z = tree.children[node]
        pairs.append((desc_z(tree, x), desc_z(tree, y)))
        queue.extend((x, y, z))
    return pairs


def balanced_ternary_tree(n_modes: int, assignment: str = "vacuum") -> Mapping:
    """Balanced ternary tree mapping.

    ``assignment="vacuum"`` pairs the X- and Y-side Z-descendants of every
    internal node onto ``(M_2k, M_2k+1)``; ``"leaf-order"`` uses ``S_i`` for
    ``M_i`` directly. Either way the root's Z-descendant is dropped.
    """
    _check_modes(n_modes)
    tree = build_balanced(n_modes)
    strings = extract_strings(tree)
    if assignment == "leaf-order":
        dropped = desc_z(tree, tree.root)
        chosen = [strings[i] for i in range(tree.n_leaves) if i != dropped]
        m = Mapping(n_modes, chosen, Method.BTT, tree=tree)
        return Mapping(n_modes, chosen, Method.BTT, vacuum_pair_predicate(m), tree)
    if assignment != "vacuum":
        raise ValueError(f"unknown assignment {assignment!r}; use 'vacuum' or 'leaf-order'")
    chosen = []
    for x_leaf, y_leaf in tree_pairs(tree):
        chosen += [strings[x_leaf], strings[y_leaf]]
    return Mapping(n_modes, chosen, Method.BTT, vacuum_preserving=True, tree=tree)
