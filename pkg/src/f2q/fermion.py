"""Fermionic and Majorana Hamiltonians.

Text formats (``.fop`` for ladder operators, ``.mop`` for Majoranas)::

    # comment
    modes 3
    (1,0) : 0^ 0
    (2,0) : 1^ 2^ 1 2

A ladder op is ``<mode>^`` (creation) or ``<mode>`` (annihilation); a
Majorana op is ``m<index>`` with index in ``0..2N-1``. An empty op list is
the identity.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from pathlib import Path

TOL = 1e-12
HERMITIAN_TOL = 1e-9


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class LadderTerm:
    coefficient: complex
    ops: tuple[tuple[int, bool], ...]  # (mode, is_creation)

    def __str__(self) -> str:
        body = " ".join(f"{m}^" if dag else f"{m}" for m, dag in self.ops)
        return f"{_fmt_coeff(self.coefficient)} : {body}".rstrip()


@dataclass(frozen=True)
class FermionicHamiltonian:
    n_modes: int
    terms: tuple[LadderTerm, ...] = ()

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValueError("n_modes must be >= 1")
        for term in self.terms:
            for mode, _ in term.ops:
                if not 0 <= mode < self.n_modes:
                    raise ValueError(f"mode {mode} out of range for {self.n_modes} modes")

    def dumps(self) -> str:
        lines = [f"modes {self.n_modes}"]
        lines += [str(t) for t in self.terms]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MajoranaMonomial:
    coefficient: complex
    indices: tuple[int, ...]

    def __str__(self) -> str:
        body = " ".join(f"m{i}" for i in self.indices)
        return f"{_fmt_coeff(self.coefficient)} : {body}".rstrip()


@dataclass(frozen=True)
class MajoranaHamiltonian:
    """Sum of normal-ordered Majorana monomials, one per index tuple."""

    n_modes: int
    terms: tuple[MajoranaMonomial, ...] = field(default=())

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValueError("n_modes must be >= 1")
        seen = set()
        for t in self.terms:
            if any(b <= a for a, b in zip(t.indices, t.indices[1:])):
                raise ValueError(f"indices not strictly increasing: {t.indices}")
            if t.indices and (t.indices[0] < 0 or t.indices[-1] >= 2 * self.n_modes):
                raise ValueError(f"Majorana index out of range in {t.indices}")
            if t.indices in seen:
                raise ValueError(f"duplicate monomial {t.indices}")
            seen.add(t.indices)

    @classmethod
    def from_dict(cls, n_modes: int, coeffs: dict[tuple[int, ...], complex], tol: float = TOL):
        terms = tuple(
            MajoranaMonomial(complex(c), idx) for idx, c in sorted(coeffs.items()) if abs(c) >= tol
        )
        return cls(n_modes, terms)

    @classmethod
    def from_products(cls, n_modes: int, products, tol: float = TOL) -> "MajoranaHamiltonian":
        """Build from ``(coefficient, index sequence)`` pairs in any order."""
        acc: dict[tuple[int, ...], complex] = {}
        for coeff, seq in products:
            for i in seq:
                if not 0 <= i < 2 * n_modes:
                    raise ValueError(f"Majorana index {i} out of range for {n_modes} modes")
            sign, idx = normal_order(seq)
            acc[idx] = acc.get(idx, 0) + sign * coeff
        return cls.from_dict(n_modes, acc, tol)

    def as_dict(self) -> dict[tuple[int, ...], complex]:
        return {t.indices: t.coefficient for t in self.terms}

    @property
    def non_identity_terms(self) -> tuple[MajoranaMonomial, ...]:
        return tuple(t for t in self.terms if t.indices)

    def dumps(self) -> str:
        lines = [f"modes {self.n_modes}"]
        lines += [str(t) for t in self.terms]
        return "\n".join(lines) + "\n"


def _fmt_coeff(c: complex) -> str:
    c = complex(c)
    return f"({c.real!r},{c.imag!r})"


def normal_order(seq) -> tuple[int, tuple[int, ...]]:
    """Sort a Majorana product, returning ``(sign, indices)``.

    Distinct Majoranas anticommute and each squares to the identity, so the
    result is strictly increasing.
    """
    seq = list(seq)
    inversions = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    out: list[int] = []
    for i in sorted(seq):
        if out and out[-1] == i:
            out.pop()
        else:
            out.append(i)
    return (-1 if inversions & 1 else 1), tuple(out)


# -- parsing -------------------------------------------------------------------

_COEFF_RE = re.compile(r"^\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)$")


def _parse_lines(text: str, parse_op):
    n_modes = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n_modes is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "modes":
                raise ParseError("expected header 'modes <N>'", lineno)
            try:
                n_modes = int(parts[1])
            except ValueError:
                raise ParseError(f"bad mode count {parts[1]!r}", lineno) from None
            if n_modes < 1:
                raise ParseError("mode count must be >= 1", lineno)
            continue
        if ":" not in line:
            raise ParseError("expected '(<re>,<im>) : <ops>'", lineno)
        coeff_txt, ops_txt = line.split(":", 1)
        m = _COEFF_RE.match(coeff_txt.strip())
        if m is None:
            raise ParseError(f"bad coefficient {coeff_txt.strip()!r}", lineno)
        try:
            coeff = complex(float(m.group(1)), float(m.group(2)))
        except ValueError:
            raise ParseError(f"non-numeric coefficient {coeff_txt.strip()!r}", lineno) from None
        ops = tuple(parse_op(tok, n_modes, lineno) for tok in ops_txt.split())
        rows.append((coeff, ops))
    if n_modes is None:
        raise ParseError("missing 'modes <N>' header")
    return n_modes, rows


def _parse_ladder_op(tok: str, n_modes: int, lineno: int) -> tuple[int, bool]:
    dagger = tok.endswith("^")
    body = tok[:-1] if dagger else tok
    if not body.isdigit():
        raise ParseError(f"malformed operator {tok!r}", lineno)
    mode = int(body)
    if mode >= n_modes:
        raise ParseError(f"mode index {mode} >= declared modes {n_modes}", lineno)
    return mode, dagger


def _parse_majorana_op(tok: str, n_modes: int, lineno: int) -> int:
    if not (tok.startswith("m") and tok[1:].isdigit()):
        raise ParseError(f"malformed Majorana operator {tok!r}", lineno)
    idx = int(tok[1:])
    if idx >= 2 * n_modes:
        raise ParseError(f"Majorana index {idx} >= 2*modes = {2 * n_modes}", lineno)
    return idx


def parse_fermionic(text: str) -> FermionicHamiltonian:
    n_modes, rows = _parse_lines(text, _parse_ladder_op)
    return FermionicHamiltonian(n_modes, tuple(LadderTerm(c, ops) for c, ops in rows))


def parse_majorana(text: str, tol: float = TOL) -> MajoranaHamiltonian:
    n_modes, rows = _parse_lines(text, _parse_majorana_op)
    return MajoranaHamiltonian.from_products(n_modes, rows, tol)


def load_hamiltonian(path, tol: float = TOL) -> FermionicHamiltonian | MajoranaHamiltonian:
    """Read a ``.fop`` or ``.mop`` file, choosing the parser by extension."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".mop":
        return parse_majorana(text, tol)
    return parse_fermionic(text)


# -- Majorana form ---------------------------------------------------------------


def to_majorana(h: FermionicHamiltonian, tol: float = TOL) -> MajoranaHamiltonian:
    """Substitute ``a_j = (M_2j + i M_2j+1)/2`` and ``a_j^ = (M_2j - i M_2j+1)/2``."""
    acc: dict[tuple[int, ...], complex] = {}
    for term in h.terms:
        factors = [
            ((2 * mode, 0.5), (2 * mode + 1, -0.5j if dagger else 0.5j)) for mode, dagger in term.ops
        ]
        for choice in itertools.product(*factors):
            coeff = term.coefficient
            for _, c in choice:
                coeff *= c
            sign, idx = normal_order(i for i, _ in choice)
            acc[idx] = acc.get(idx, 0) + sign * coeff
    return MajoranaHamiltonian.from_dict(h.n_modes, acc, tol)


def as_majorana(h, tol: float = TOL) -> MajoranaHamiltonian:
    if isinstance(h, MajoranaHamiltonian):
        return h
    if isinstance(h, FermionicHamiltonian):
        return to_majorana(h, tol)
    raise TypeError(f"expected a Fermionic or Majorana Hamiltonian, got {type(h).__name__}")


def check_hermitian(h, tol: float = HERMITIAN_TOL) -> bool:
    """True iff ``h`` equals its adjoint.

    The adjoint of ``M_i1 ... M_ik`` reverses the product, which is a sign
    ``(-1)**(k(k-1)/2)`` after normal ordering.
    """
    mh = as_majorana(h, tol=0.0)
    for t in mh.terms:
        k = len(t.indices)
        sign = -1 if (k * (k - 1) // 2) & 1 else 1
        if abs(sign * t.coefficient.conjugate() - t.coefficient) > tol:
            return False
    return True


# -- generators ------------------------------------------------------------------


def hubbard_mode(site: int, spin: int) -> int:
    """Mode index of ``(site, spin)``; spin up is 0."""
    return 2 * site + spin


def lattice_bonds(rows: int, cols: int, periodic: bool = False) -> list[tuple[int, int]]:
    """Nearest-neighbour site pairs of a row-major ``rows x cols`` grid."""
    bonds = set()
    for r in range(rows):
        for c in range(cols):
            here = r * cols + c
            for dr, dc in ((0, 1), (1, 0)):
                rr, cc = r + dr, c + dc
                if periodic:
                    # a wrap on a length-2 axis would repeat the open bond
                    if (dr and rows > 2) or (dc and cols > 2):
                        rr, cc = rr % rows, cc % cols
                if rr >= rows or cc >= cols or (rr, cc) == (r, c):
                    continue
                there = rr * cols + cc
                bonds.add((min(here, there), max(here, there)))
    return sorted(bonds)


def gen_fermi_hubbard(rows: int, cols: int, t: float = 1.0, U: float = 1.0, periodic: bool = False) -> FermionicHamiltonian:
    if rows < 1 or cols < 1:
        raise ValueError(f"lattice must be at least 1x1, got {rows}x{cols}")
    n_sites = rows * cols
    terms = []
    if t != 0:
        for i, j in lattice_bonds(rows, cols, periodic):
            for spin in (0, 1):
                a, b = hubbard_mode(i, spin), hubbard_mode(j, spin)
                terms.append(LadderTerm(complex(t), ((a, True), (b, False))))
                terms.append(LadderTerm(complex(t), ((b, True), (a, False))))
    if U != 0:
        for i in range(n_sites):
            up, dn = hubbard_mode(i, 0), hubbard_mode(i, 1)
            terms.append(LadderTerm(complex(U), ((up, True), (up, False), (dn, True), (dn, False))))
    return FermionicHamiltonian(2 * n_sites, tuple(terms))
