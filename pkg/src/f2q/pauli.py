"""Pauli strings over N qubits in symplectic (x, z) bitmask form.

Qubit ``k`` is bit ``k`` of both masks. The dense text form lists the
highest qubit first, so ``"XYIZ"`` is X on qubit 3 and Z on qubit 0.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass


class SingleQubitPauli(enum.Enum):
    I = (0, 0)
    X = (1, 0)
    Y = (1, 1)
    Z = (0, 1)

    @property
    def x(self) -> int:
        return self.value[0]

    @property
    def z(self) -> int:
        return self.value[1]

    @classmethod
    def from_bits(cls, x: int, z: int) -> "SingleQubitPauli":
        return _FROM_BITS[(x & 1, z & 1)]


_FROM_BITS = {p.value: p for p in SingleQubitPauli}


class ZeroAction(enum.Enum):
    """What a single-qubit Pauli does to ``|0>``."""

    KEEP_ZERO = "keep"
    FLIP_TO_ONE = "flip"
    FLIP_TO_ONE_WITH_PHASE_I = "flip_i"


def action_on_zero(op: SingleQubitPauli) -> ZeroAction:
    if op is SingleQubitPauli.X:
        return ZeroAction.FLIP_TO_ONE
    if op is SingleQubitPauli.Y:
        return ZeroAction.FLIP_TO_ONE_WITH_PHASE_I
    return ZeroAction.KEEP_ZERO


_PHASE_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}
_PREFIX_PHASE = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}
_DENSE_RE = re.compile(r"^\s*([+-]?i?)\s*([IXYZ]+)\s*$")
_COMPACT_TOKEN_RE = re.compile(r"^([XYZ])(\d+)$")


@dataclass(frozen=True, slots=True)
class PauliString:
    """Tensor product of single-qubit Paulis times ``i**phase``.

    ``phase`` is the exponent of ``i`` and is kept in ``{0, 1, 2, 3}``.
    """

    n_qubits: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.n_qubits < 0:
            raise ValueError("n_qubits must be non-negative")
        limit = 1 << self.n_qubits
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError(f"bitmasks do not fit in {self.n_qubits} qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, op: SingleQubitPauli | str) -> "PauliString":
        if isinstance(op, str):
            op = SingleQubitPauli[op]
        if not 0 <= qubit < n_qubits:
            raise ValueError(f"qubit {qubit} out of range for {n_qubits} qubits")
        return cls(n_qubits, op.x << qubit, op.z << qubit)

    @classmethod
    def from_ops(cls, ops: dict[int, SingleQubitPauli | str], n_qubits: int, phase: int = 0) -> "PauliString":
        x = z = 0
        for qubit, op in ops.items():
            if isinstance(op, str):
                op = SingleQubitPauli[op]
            if not 0 <= qubit < n_qubits:
                raise ValueError(f"qubit {qubit} out of range for {n_qubits} qubits")
            x |= op.x << qubit
            z |= op.z << qubit
        return cls(n_qubits, x, z, phase)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse the dense form, e.g. ``"XYIZ"`` or ``"-iXZ"``."""
        m = _DENSE_RE.match(label)
        if m is None:
            raise ValueError(f"not a dense Pauli label: {label!r}")
        prefix, body = m.groups()
        n = len(body)
        x = z = 0
        for pos, ch in enumerate(body):
            qubit = n - 1 - pos
            op = SingleQubitPauli[ch]
            x |= op.x << qubit
            z |= op.z << qubit
        return cls(n, x, z, _PREFIX_PHASE[prefix])

    @classmethod
    def from_compact(cls, text: str, n_qubits: int) -> "PauliString":
        """Parse the compact form, e.g. ``"X3 Y2 Z0"``; ``""`` or ``"I"`` is identity."""
        text = text.strip()
        phase = 0
        for prefix in ("-i", "+i", "i", "-", "+"):
            if text.startswith(prefix):
                phase = _PREFIX_PHASE[prefix]
                text = text[len(prefix):].strip()
                break
        ops: dict[int, str] = {}
        if text and text != "I":
            for token in text.split():
                m = _COMPACT_TOKEN_RE.match(token)
                if m is None:
                    raise ValueError(f"bad compact Pauli token {token!r}")
                qubit = int(m.group(2))
                if qubit in ops:
                    raise ValueError(f"qubit {qubit} appears twice in {text!r}")
                ops[qubit] = m.group(1)
        return cls.from_ops(ops, n_qubits, phase)

    def op(self, qubit: int) -> SingleQubitPauli:
        return SingleQubitPauli.from_bits(self.x >> qubit, self.z >> qubit)

    def ops(self) -> list[SingleQubitPauli]:
        """Operators indexed by qubit (index 0 is qubit 0)."""
        return [self.op(q) for q in range(self.n_qubits)]

    @property
    def support(self) -> int:
        return self.x | self.z

    def is_identity(self) -> bool:
        return self.support == 0

    def without_phase(self) -> "PauliString":
        return PauliString(self.n_qubits, self.x, self.z)

    def to_label(self, with_phase: bool = True) -> str:
        body = "".join(self.op(q).name for q in reversed(range(self.n_qubits)))
        return (_PHASE_PREFIX[self.phase] if with_phase else "") + body

    def to_compact(self, with_phase: bool = True) -> str:
        parts = [f"{self.op(q).name}{q}" for q in reversed(range(self.n_qubits)) if (self.support >> q) & 1]
        body = " ".join(parts) if parts else "I"
        return (_PHASE_PREFIX[self.phase] if with_phase else "") + body

    def __str__(self) -> str:
        return self.to_label()

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)


def _check_same_size(a: PauliString, b: PauliString):
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"length mismatch: {a.n_qubits} vs {b.n_qubits} qubits")


def _phase_of_product(x1: int, z1: int, x2: int, z2: int) -> int:
    # per-qubit XY=iZ, YZ=iX, ZX=iY count +1; reversed orders count -1
    xa, ya, za = x1 & ~z1, x1 & z1, z1 & ~x1
    xb, yb, zb = x2 & ~z2, x2 & z2, z2 & ~x2
    plus = (xa & yb) | (ya & zb) | (za & xb)
    minus = (xa & zb) | (ya & xb) | (za & yb)
    return plus.bit_count() - minus.bit_count()


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Group product ``a @ b`` with exact phase."""
    _check_same_size(a, b)
    phase = a.phase + b.phase + _phase_of_product(a.x, a.z, b.x, b.z)
    return PauliString(a.n_qubits, a.x ^ b.x, a.z ^ b.z, phase)


def product(strings, n_qubits: int) -> PauliString:
    """Ordered product of an iterable of strings (identity if empty)."""
    out = PauliString.identity(n_qubits)
    for s in strings:
        out = multiply(out, s)
    return out


def weight(s: PauliString) -> int:
    return s.support.bit_count()


def symplectic_product(a: PauliString, b: PauliString) -> int:
    _check_same_size(a, b)
    return ((a.x & b.z) ^ (a.z & b.x)).bit_count() & 1


def anticommutes(a: PauliString, b: PauliString) -> bool:
    return symplectic_product(a, b) == 1
