"""Hamiltonian-adaptive ternary tree (HATT) construction.

The tree is grown bottom-up. Step ``i`` picks three live nodes
``(O_X, O_Y, O_Z)`` from the node set, makes them the X/Y/Z children of
internal node ``2N+1+i`` (qubit ``i``) and greedily minimises the Pauli
weight the Hamiltonian picks up on that qubit.

A term contributes weight 1 on qubit ``i`` when it touches one or two of the
selected nodes (the single-qubit operator is X, Y, Z or a product of two of
them) and 0 when it touches none or all three (``XYZ = iI``). With
``count[o]`` terms touching ``o`` and ``pair[o][p]`` terms touching both,
that is ``sum(count) - sum(pair)`` over the selection, which makes each
candidate O(1) to score.

With ``vacuum=True`` only ``(O_X, O_Z)`` are free: ``O_Y`` is the live node
whose Z-descendant is the partner leaf of ``desc_Z(O_X)``, so every
``(S_2l, S_2l+1)`` ends up sharing an (X, Y) pair and the mapping preserves
the vacuum.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .fermion import MajoranaHamiltonian, as_majorana
from .mapping import Mapping, Method
from .pauli import PauliString
from .tree import DescMaps, TernaryTree, extract_strings

logger = logging.getLogger(__name__)

_BIG = 1 << 62


class ConstructionError(RuntimeError):
    pass


# -- functional form of the per-step operations ------------------------------------


@dataclass(frozen=True)
class ReducedHamiltonian:
    """Terms as sets of live node ids; coefficients do not affect the weight and are dropped."""

    terms: tuple[frozenset, ...]
    n_alive: int

    @classmethod
    def from_majorana(cls, h: MajoranaHamiltonian) -> "ReducedHamiltonian":
        return cls(tuple(frozenset(t.indices) for t in h.non_identity_terms), 2 * h.n_modes + 1)


def weight_on_qubit(h: ReducedHamiltonian, sel) -> int:
    sel = set(sel)
    return sum(1 for term in h.terms if 0 < len(term & sel) < 3)


def reduce(h: ReducedHamiltonian, sel, new_id: int) -> ReducedHamiltonian:
    """Replace the selected nodes by their new parent (kept once per odd overlap)."""
    sel = frozenset(sel)
    out = []
    for term in h.terms:
        k = len(term & sel)
        term = term - sel
        if k & 1:
            term = term | {new_id}
        out.append(term)
    return ReducedHamiltonian(tuple(out), h.n_alive - 2)


def walk_tree(tree: TernaryTree) -> list[PauliString]:
    return extract_strings(tree)


# -- incremental builder -----------------------------------------------------------


@dataclass(frozen=True)
class Step:
    step: int
    node: int
    children: tuple[int, int, int]
    weight: int
    scanned: tuple[int, ...]
    evaluated: int
    discarded: int

    def to_json(self) -> dict:
        x, y, z = self.children
        return {
            "step": self.step,
            "node": self.node,
            "x": x,
            "y": y,
            "z": z,
            "weight": self.weight,
            "scanned": list(self.scanned),
            "evaluated": self.evaluated,
            "discarded": self.discarded,
        }


class HattBuilder:
    """Step-wise HATT construction.

    Parameters
    ----------
    hamiltonian : MajoranaHamiltonian or FermionicHamiltonian
    vacuum : bool
        Pair operators during construction (optimised HATT). ``False`` runs
        the unrestricted triple scan.
    pairing : {"maps", "traverse"}
        How ``desc_Z`` and the walk back up to the node set are answered:
        O(1) cached maps, or explicit walks through the partial tree.
    n_jobs : int, optional
        Split the candidate scan across threads. The reduction is keyed on
        ``(weight, scan key)`` so the result matches the serial scan exactly.
    """

    def __init__(self, hamiltonian, *, vacuum: bool = True, pairing: str = "maps", n_jobs: int | None = None):
        if pairing not in ("maps", "traverse"):
            raise ValueError(f"pairing must be 'maps' or 'traverse', got {pairing!r}")
        h = as_majorana(hamiltonian)
        self.hamiltonian = h
        self.vacuum = vacuum
        self.pairing = pairing
        self.n_jobs = n_jobs
        n = h.n_modes
        self.n_modes = n
        n_nodes = 3 * n + 1
        self._last_leaf = 2 * n
        self._live = list(range(2 * n + 1))
        self._pos = {o: i for i, o in enumerate(self._live)}
        self._children: dict[int, tuple[int, int, int]] = {}
        self._parent: dict[int, int] = {}
        self.maps = DescMaps.initial(n)
        self.trace: list[Step] = []

        self._terms = [frozenset(t.indices) for t in h.non_identity_terms]
        self._node_terms: list[set[int]] = [set() for _ in range(n_nodes)]
        self._count = [0] * n_nodes
        self._pair = [[0] * n_nodes for _ in range(n_nodes)]
        for t, term in enumerate(self._terms):
            self._add_term(t, term)

    # bookkeeping

    def _add_term(self, t: int, term):
        count, pair = self._count, self._pair
        for a in term:
            count[a] += 1
            self._node_terms[a].add(t)
            row = pair[a]
            for b in term:
                if b != a:
                    row[b] += 1

    def _remove_term(self, t: int, term):
        count, pair = self._count, self._pair
        for a in term:
            count[a] -= 1
            self._node_terms[a].discard(t)
            row = pair[a]
            for b in term:
                if b != a:
                    row[b] -= 1

    @property
    def step_index(self) -> int:
        return len(self._children)

    @property
    def done(self) -> bool:
        return self.step_index == self.n_modes

    @property
    def node_set(self) -> tuple[int, ...]:
        return tuple(self._live)

    def reduced_hamiltonian(self) -> ReducedHamiltonian:
        return ReducedHamiltonian(tuple(self._terms), len(self._live))

    def selection_weight(self, children) -> int:
        a, b, c = children
        count, pair = self._count, self._pair
        return count[a] + count[b] + count[c] - pair[a][b] - pair[a][c] - pair[b][c]

    # Z-descendant queries

    def desc_z(self, node: int) -> int:
        if self.pairing == "maps":
            return self.maps.down[node]
        while node in self._children:
            node = self._children[node][2]
        return node

    def live_ancestor(self, leaf: int) -> int:
        """The node-set member whose subtree holds ``leaf``."""
        if self.pairing == "maps":
            return self.maps.up[leaf]
        node = leaf
        while node not in self._pos:
            node = self._parent[node]
        return node

    def resolve(self, ox: int, oz: int) -> tuple[tuple[int, int, int] | None, str | None]:
        """Children chosen for the scanned pair ``(O_X, O_Z)``, or ``None`` and a reason."""
        if ox == oz:
            return None, "same-node"
        x = self.desc_z(ox)
        if x == self._last_leaf:
            return None, "rightmost-leaf"
        if x & 1:
            oy = self.live_ancestor(x - 1)
            kids = (oy, ox, oz)
        else:
            oy = self.live_ancestor(x + 1)
            kids = (ox, oy, oz)
        if oy == oz:
            return None, "y-collision"
        return kids, None

    def candidates(self) -> Iterator[tuple[tuple[int, ...], tuple[int, int, int] | None, str | None]]:
        """Every scanned key in scan order with its resolution; for inspection and tests."""
        live = self._live
        if self.vacuum:
            for ox in live:
                for oz in live:
                    if ox != oz:
                        kids, reason = self.resolve(ox, oz)
                        yield (ox, oz), kids, reason
        else:
            m = len(live)
            for i in range(m):
                for j in range(i + 1, m):
                    for k in range(j + 1, m):
                        triple = (live[i], live[j], live[k])
                        yield triple, triple, None

    # scanning

    def _scan_pair_rows(self, rows):
        live, pos = self._live, self._pos
        count, pair = self._count, self._pair
        last = self._last_leaf
        desc_z, live_ancestor = self.desc_z, self.live_ancestor
        best = None
        valid_rows = 0
        for ox in rows:
            x = desc_z(ox)
            if x == last:
                continue
            valid_rows += 1
            if x & 1:
                oy = live_ancestor(x - 1)
                xy = (oy, ox)
            else:
                oy = live_ancestor(x + 1)
                xy = (ox, oy)
            rx, ry = pair[ox], pair[oy]
            base = count[ox] + count[oy] - rx[oy]
            row = [count[z] - rx[z] - ry[z] for z in live]
            row[pos[ox]] = row[pos[oy]] = _BIG
            wmin = min(row)
            if wmin == _BIG:
                continue
            w = base + wmin
            if best is None or w < best[0]:
                oz = live[row.index(wmin)]
                best = (w, (ox, oz), xy + (oz,))
        return best, valid_rows

    def _scan_triple_rows(self, rows):
        live = self._live
        count, pair = self._count, self._pair
        m = len(live)
        best = None
        for i in rows:
            a = live[i]
            ra, ca = pair[a], count[a]
            for j in range(i + 1, m - 1):
                b = live[j]
                rb = pair[b]
                tail = live[j + 1:]
                row = [count[c] - ra[c] - rb[c] for c in tail]
                wmin = min(row)
                w = ca + count[b] - ra[b] + wmin
                if best is None or w < best[0]:
                    c = tail[row.index(wmin)]
                    best = (w, (a, b, c), (a, b, c))
        return best, None

    def _chunks(self, items):
        k = max(1, min(self.n_jobs or 1, len(items)))
        size = -(-len(items) // k)
        return [items[i:i + size] for i in range(0, len(items), size)]

    def scan(self):
        """Best ``(weight, scan key, children, evaluated, discarded)`` for the current step."""
        m = len(self._live)
        if m < 3:
            raise ConstructionError("node set exhausted")
        if self.vacuum:
            rows, fn = list(self._live), self._scan_pair_rows
        else:
            rows, fn = list(range(m - 2)), self._scan_triple_rows
        if self.n_jobs and self.n_jobs > 1:
            chunks = self._chunks(rows)
            with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
                results = list(pool.map(fn, chunks))
        else:
            results = [fn(rows)]
        found = [r for r, _ in results if r is not None]
        if not found:
            raise ConstructionError(f"no feasible selection at step {self.step_index}")
        w, key, kids = min(found, key=lambda r: (r[0], r[1]))
        if self.vacuum:
            valid = sum(v for _, v in results)
            evaluated = valid * (m - 2)
            discarded = (m - valid) * (m - 1) + valid
        else:
            evaluated = m * (m - 1) * (m - 2) // 6
            discarded = 0
        return w, key, kids, evaluated, discarded

    def apply(self, children: tuple[int, int, int]) -> int:
        """Attach ``children`` under the next internal node and reduce the Hamiltonian."""
        if self.done:
            raise ConstructionError("tree already complete")
        if len(set(children)) != 3 or any(c not in self._pos for c in children):
            raise ConstructionError(f"selection {children} is not three distinct live nodes")
        new = 2 * self.n_modes + 1 + self.step_index
        sel = frozenset(children)
        touched = set().union(*(self._node_terms[c] for c in children))
        for t in sorted(touched):
            term = self._terms[t]
            self._remove_term(t, term)
            k = len(term & sel)
            term = term - sel
            if k & 1:
                term = term | {new}
            self._terms[t] = term
            self._add_term(t, term)
        self._children[new] = tuple(children)
        for c in children:
            self._parent[c] = new
        self._live = [o for o in self._live if o not in sel] + [new]
        self._pos = {o: i for i, o in enumerate(self._live)}
        self.maps.update(new, *children)
        return new

    def step(self) -> Step:
        w, key, kids, evaluated, discarded = self.scan()
        index = self.step_index
        new = self.apply(kids)
        rec = Step(index, new, kids, w, key, evaluated, discarded)
        self.trace.append(rec)
        logger.debug("step %d: %s -> node %d (weight %d)", rec.step, kids, new, w)
        return rec

    def tree(self) -> TernaryTree:
        if not self.done:
            raise ConstructionError("tree is not complete yet")
        return TernaryTree.from_children(self.n_modes, self._children)

    def run(self) -> Mapping:
        while not self.done:
            self.step()
        tree = self.tree()
        strings = extract_strings(tree)
        if self.vacuum:
            root_desc = self.desc_z(tree.root)
            if root_desc != self._last_leaf:
                raise ConstructionError(f"unpaired leaf is {root_desc}, expected {self._last_leaf}")
        method = Method.HATT if self.vacuum else Method.HATT_UNOPT
        return Mapping(self.n_modes, strings[: 2 * self.n_modes], method, self.vacuum, tree)


def build(hamiltonian, *, pairing: str = "maps", n_jobs: int | None = None) -> Mapping:
    """Vacuum-preserving HATT mapping."""
    return HattBuilder(hamiltonian, vacuum=True, pairing=pairing, n_jobs=n_jobs).run()


def build_unopt(hamiltonian, *, n_jobs: int | None = None) -> Mapping:
    """Unrestricted triple-scan HATT; does not preserve the vacuum."""
    return HattBuilder(hamiltonian, vacuum=False, n_jobs=n_jobs).run()
