"""Complete ternary trees and root-to-leaf Pauli-string extraction.

For an ``N``-mode tree the node ids are laid out as:

* ``0 .. 2N``      leaves (leaf ``i`` carries string ``S_i``)
* ``2N+1 .. 3N``   internal nodes; node ``2N+1+q`` acts on qubit ``q``
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

from .pauli import PauliString, SingleQubitPauli

BRANCHES = ("X", "Y", "Z")


class TreeError(ValueError):
    pass


def qubit_of(node_id: int, n_modes: int) -> int:
    return node_id - (2 * n_modes + 1)


def internal_id(qubit: int, n_modes: int) -> int:
    return 2 * n_modes + 1 + qubit


@dataclass(frozen=True)
class TernaryTree:
    n_modes: int
    children: tuple  # node id -> (x, y, z) or None for leaves
    parent: tuple  # node id -> (parent id, branch) or None for the root
    root: int

    @classmethod
    def from_children(cls, n_modes: int, children: dict[int, tuple[int, int, int]]) -> "TernaryTree":
        """Assemble and validate a complete tree from ``{internal id: (x, y, z)}``."""
        if n_modes < 1:
            raise TreeError("n_modes must be >= 1")
        n_nodes = 3 * n_modes + 1
        n_leaves = 2 * n_modes + 1
        kids: list = [None] * n_nodes
        parent: list = [None] * n_nodes
        for node, triple in children.items():
            if not n_leaves <= node < n_nodes:
                raise TreeError(f"node {node} is not an internal id")
            if len(triple) != 3:
                raise TreeError(f"internal node {node} needs exactly three children")
            kids[node] = tuple(triple)
            for branch, child in zip(BRANCHES, triple):
                if not 0 <= child < n_nodes:
                    raise TreeError(f"child id {child} out of range")
                if parent[child] is not None:
                    raise TreeError(f"node {child} has two parents")
                parent[child] = (node, branch)
        missing = [i for i in range(n_leaves, n_nodes) if kids[i] is None]
        if missing:
            raise TreeError(f"incomplete tree: internal nodes {missing} have no children")
        roots = [i for i in range(n_nodes) if parent[i] is None]
        if len(roots) != 1:
            raise TreeError(f"expected exactly one root, found {roots}")
        tree = cls(n_modes, tuple(kids), tuple(parent), roots[0])
        if len(list(tree.iter_nodes())) != n_nodes:
            raise TreeError("tree contains a cycle or unreachable nodes")
        return tree

    @property
    def n_leaves(self) -> int:
        return 2 * self.n_modes + 1

    def is_leaf(self, node: int) -> bool:
        return node < self.n_leaves

    def iter_nodes(self):
        """Pre-order walk from the root, children in X, Y, Z order."""
        stack = [self.root]
        seen = set()
        while stack:
            node = stack.pop()
            if node in seen:
                raise TreeError("cycle detected")
            seen.add(node)
            yield node
            if self.children[node] is not None:
                stack.extend(reversed(self.children[node]))

    def leaves_in_order(self) -> list[int]:
        return [n for n in self.iter_nodes() if self.is_leaf(n)]

    def path_to(self, leaf: int) -> list[tuple[int, str]]:
        """``(internal node, branch taken)`` pairs from the root down to ``leaf``."""
        path = []
        node = leaf
        while self.parent[node] is not None:
            pid, branch = self.parent[node]
            path.append((pid, branch))
            node = pid
        path.reverse()
        return path

    def depth(self) -> int:
        return max(len(self.path_to(leaf)) for leaf in range(self.n_leaves))

    def to_sexpr(self, node: int | None = None) -> str:
        node = self.root if node is None else node
        if self.is_leaf(node):
            return f"leaf{node}"
        parts = " ".join(f"({b} {self.to_sexpr(c)})" for b, c in zip(BRANCHES, self.children[node]))
        return f"(q{qubit_of(node, self.n_modes)} {parts})"


_SEXPR_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_sexpr(text: str, n_modes: int) -> TernaryTree:
    tokens = _SEXPR_TOKEN.findall(text)
    pos = 0
    children: dict[int, tuple[int, int, int]] = {}

    def expect(tok):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            raise TreeError(f"expected {tok!r} at token {pos}")
        pos += 1

    def node() -> int:
        nonlocal pos
        tok = tokens[pos]
        if tok.startswith("leaf"):
            pos += 1
            return int(tok[4:])
        expect("(")
        qtok = tokens[pos]
        if not qtok.startswith("q"):
            raise TreeError(f"expected qubit label, got {qtok!r}")
        pos += 1
        nid = internal_id(int(qtok[1:]), n_modes)
        kids = []
        for branch in BRANCHES:
            expect("(")
            expect(branch)
            kids.append(node())
            expect(")")
        expect(")")
        children[nid] = tuple(kids)
        return nid

    node()
    if pos != len(tokens):
        raise TreeError("trailing tokens after tree")
    return TernaryTree.from_children(n_modes, children)


def extract_strings(tree: TernaryTree) -> list[PauliString]:
    """All ``2N+1`` root-to-leaf strings, indexed by leaf id."""
    n = tree.n_modes
    out = []
    for leaf in range(tree.n_leaves):
        ops = {qubit_of(pid, n): SingleQubitPauli[branch] for pid, branch in tree.path_to(leaf)}
        out.append(PauliString.from_ops(ops, n))
    return out


def desc_z(tree: TernaryTree, node: int) -> int:
    """Leaf reached from ``node`` by following Z branches."""
    while not tree.is_leaf(node):
        node = tree.children[node][2]
    return node


def subtree_leaf_count(tree: TernaryTree, node: int) -> int:
    if tree.is_leaf(node):
        return 1
    return sum(subtree_leaf_count(tree, c) for c in tree.children[node])


def build_balanced(n_modes: int) -> TernaryTree:
    """Minimum-depth complete tree: qubits fill slots breadth-first, leaves numbered left to right."""
    if n_modes < 1:
        raise TreeError("n_modes must be >= 1")
    # shape first, with placeholder leaves
    slots: dict[int, list] = {0: [None, None, None]}
    queue = deque([0])
    next_qubit = 1
    while queue:
        q = queue.popleft()
        for b in range(3):
            if next_qubit < n_modes:
                slots[q][b] = ("q", next_qubit)
                slots[next_qubit] = [None, None, None]
                queue.append(next_qubit)
                next_qubit += 1
    children: dict[int, tuple[int, int, int]] = {}
    leaf_counter = 0

    def assign(q: int) -> int:
        nonlocal leaf_counter
        kids = []
        for slot in slots[q]:
            if slot is None:
                kids.append(leaf_counter)
                leaf_counter += 1
            else:
                kids.append(assign(slot[1]))
        nid = internal_id(q, n_modes)
        children[nid] = tuple(kids)
        return nid

    assign(0)
    return TernaryTree.from_children(n_modes, children)


@dataclass
class DescMaps:
    """Cached Z-descendant maps: ``down[node] = desc_Z(node)`` and its inverse on live nodes."""

    down: dict[int, int] = field(default_factory=dict)
    up: dict[int, int] = field(default_factory=dict)

    @classmethod
    def initial(cls, n_modes: int) -> "DescMaps":
        leaves = range(2 * n_modes + 1)
        return cls({i: i for i in leaves}, {i: i for i in leaves})

    def update(self, new: int, x: int, y: int, z: int) -> "DescMaps":
        """Record that ``new`` adopted ``(x, y, z)``; O(1)."""
        # X and Y descendants become paired and leave the up-map
        self.up.pop(self.down[x], None)
        self.up.pop(self.down[y], None)
        zdesc = self.down[z]
        self.down[new] = zdesc
        self.up[zdesc] = new
        return self


def maps_update(maps: DescMaps, new: int, x: int, y: int, z: int) -> DescMaps:
    return maps.update(new, x, y, z)
