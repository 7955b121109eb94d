"""Trotter circuits for qubit Hamiltonians, gate metrics and OpenQASM 2.0 text."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass

from .apply import QubitHamiltonian
from .pauli import PauliString

HERMITIAN_TOL = 1e-9


@dataclass(frozen=True)
class Gate:
    kind: str  # "h", "rx", "rz" or "cx"
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        arity = 2 if self.kind == "cx" else 1
        if self.kind not in ("h", "rx", "rz", "cx"):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} acts on {arity} qubit(s)")
        if self.kind == "cx" and self.qubits[0] == self.qubits[1]:
            raise ValueError("CNOT control equals target")
        if (self.angle is None) != (self.kind in ("h", "cx")):
            raise ValueError(f"angle mismatch for {self.kind}")


def H(q: int) -> Gate:
    return Gate("h", (q,))


def RX(theta: float, q: int) -> Gate:
    return Gate("rx", (q,), float(theta))


def RZ(theta: float, q: int) -> Gate:
    return Gate("rz", (q,), float(theta))


def CNOT(control: int, target: int) -> Gate:
    return Gate("cx", (control, target))


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        for g in self.gates:
            if any(not 0 <= q < self.n_qubits for q in g.qubits):
                raise ValueError(f"gate {g} outside {self.n_qubits} qubits")


def trotter_term(s: PauliString, theta: float) -> list[Gate]:
    """Gates implementing ``exp(-i theta S)``; the target is the lowest involved qubit."""
    involved = [q for q in reversed(range(s.n_qubits)) if (s.support >> q) & 1]
    if not involved:
        raise ValueError("identity string has no circuit (global phase only)")
    target = involved[-1]
    basis, unbasis = [], []
    for q in involved:
        op = s.op(q).name
        if op == "X":
            basis.append(H(q))
            unbasis.append(H(q))
        elif op == "Y":
            basis.append(RX(math.pi / 2, q))
            unbasis.append(RX(-math.pi / 2, q))
    ladder = [CNOT(q, target) for q in involved if q != target]
    return basis + ladder + [RZ(2 * theta, target)] + ladder[::-1] + unbasis[::-1]


def trotterize(q: QubitHamiltonian, t: float, n_steps: int = 1) -> Circuit:
    """First-order product formula for ``exp(-i H t)`` over ``n_steps`` slices."""
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    for s, c in q.terms:
        if abs(c.imag) > HERMITIAN_TOL:
            raise ValueError(f"non-Hermitian coefficient {c} on {s.to_label()}")
    block = []
    for s, c in q.terms:
        if not s.is_identity():
            block += trotter_term(s, c.real * t / n_steps)
    return Circuit(q.n_qubits, tuple(block * n_steps))


@dataclass(frozen=True)
class CircuitMetrics:
    cnot_count: int
    single_qubit_count: int
    depth: int

    def to_json(self) -> dict:
        return {"cnot_count": self.cnot_count, "single_qubit_count": self.single_qubit_count, "depth": self.depth}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def metrics(c: Circuit) -> CircuitMetrics:
    """Gate counts and unit-cost ASAP depth."""
    busy = [0] * c.n_qubits
    cnots = 0
    for g in c.gates:
        if g.kind == "cx":
            cnots += 1
        layer = max(busy[q] for q in g.qubits) + 1
        for q in g.qubits:
            busy[q] = layer
    return CircuitMetrics(cnots, len(c.gates) - cnots, max(busy, default=0))


def emit_qasm(c: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.n_qubits}];"]
    for g in c.gates:
        if g.kind == "cx":
            lines.append(f"cx q[{g.qubits[0]}],q[{g.qubits[1]}];")
        elif g.angle is None:
            lines.append(f"{g.kind} q[{g.qubits[0]}];")
        else:
            lines.append(f"{g.kind}({g.angle!r}) q[{g.qubits[0]}];")
    return "\n".join(lines) + "\n"


_QREG = re.compile(r"^qreg\s+q\[(\d+)\];$")
_GATE = re.compile(r"^(h|rx|rz|cx)(?:\(([^)]*)\))?\s+q\[(\d+)\](?:\s*,\s*q\[(\d+)\])?;$")


def parse_qasm(text: str) -> Circuit:
    """Read back the subset written by :func:`emit_qasm`."""
    n_qubits = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line or line.startswith("OPENQASM") or line.startswith("include"):
            continue
        m = _QREG.match(line)
        if m:
            n_qubits = int(m.group(1))
            continue
        m = _GATE.match(line)
        if m is None:
            raise ValueError(f"line {lineno}: unsupported statement {line!r}")
        kind, angle, q0, q1 = m.groups()
        qubits = (int(q0),) if q1 is None else (int(q0), int(q1))
        gates.append(Gate(kind, qubits, None if angle is None else float(angle)))
    if n_qubits is None:
        raise ValueError("missing qreg declaration")
    return Circuit(n_qubits, tuple(gates))
