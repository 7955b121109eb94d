"""The ``Mapping`` value: one Pauli string per Majorana operator."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .pauli import PauliString, action_on_zero, anticommutes
from .tree import TernaryTree


class Method(str, enum.Enum):
    JW = "jw"
    BK = "bk"
    BTT = "btt"
    HATT_UNOPT = "hatt-unopt"
    HATT = "hatt"


@dataclass(frozen=True)
class Mapping:
    n_modes: int
    strings: tuple[PauliString, ...]
    method: Method
    vacuum_preserving: bool = False
    tree: TernaryTree | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        object.__setattr__(self, "strings", tuple(self.strings))
        if len(self.strings) != 2 * self.n_modes:
            raise ValueError(f"expected {2 * self.n_modes} strings, got {len(self.strings)}")
        for s in self.strings:
            if s.n_qubits != self.n_modes:
                raise ValueError("every string must act on n_modes qubits")

    def __getitem__(self, j: int) -> PauliString:
        return self.strings[j]

    def to_json(self) -> dict:
        return {
            "n_modes": self.n_modes,
            "method": self.method.value,
            "vacuum_preserving": self.vacuum_preserving,
            "strings": [s.to_label() for s in self.strings],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "Mapping":
        strings = tuple(PauliString.from_label(s) for s in data["strings"])
        return cls(int(data["n_modes"]), strings, Method(data["method"]), bool(data["vacuum_preserving"]))

    @classmethod
    def loads(cls, text: str) -> "Mapping":
        return cls.from_json(json.loads(text))


def is_valid_pair(a: PauliString, b: PauliString) -> bool:
    """``(a, b)`` has exactly one ``(X, Y)`` position and acts alike on ``|0>`` elsewhere.

    Global phases must match too, otherwise ``(a + i b)/2`` does not
    annihilate ``|0...0>``.
    """
    if a.n_qubits != b.n_qubits or a.phase != b.phase:
        return False
    xy_positions = 0
    for q in range(a.n_qubits):
        pa, pb = a.op(q), b.op(q)
        if pa.name == "X" and pb.name == "Y":
            xy_positions += 1
        elif action_on_zero(pa) is not action_on_zero(pb):
            return False
    return xy_positions == 1


def vacuum_pair_predicate(m: Mapping) -> bool:
    return all(is_valid_pair(m.strings[2 * j], m.strings[2 * j + 1]) for j in range(m.n_modes))


def check_anticommutation(strings) -> bool:
    """Pairwise anticommuting, non-identity, Hermitian-phase and distinct."""
    strings = list(strings)
    keys = set()
    for s in strings:
        if s.is_identity() or s.phase % 2:
            return False
        keys.add((s.x, s.z))
    if len(keys) != len(strings):
        return False
    return all(anticommutes(a, b) for i, a in enumerate(strings) for b in strings[i + 1:])
