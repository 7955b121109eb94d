"""``f2q`` command-line driver.

Exit codes: 0 ok, 1 usage, 2 parse or I/O error, 3 verification failure,
4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import bench
from .apply import QubitHamiltonian, map_hamiltonian, weight_report
from .circuit import emit_qasm, metrics, trotterize
from .estimators import make_mapper
from .fermion import TOL, ParseError, check_hermitian, gen_fermi_hubbard, load_hamiltonian
from .hatt import ConstructionError
from .mapping import Mapping, vacuum_pair_predicate
from .tree import TreeError
from . import verify as oracle

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VERIFY, EXIT_INTERNAL = 0, 1, 2, 3, 4
METHODS = ("jw", "bk", "btt", "hatt-unopt", "hatt")

log = logging.getLogger("f2q")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--tol", type=float, default=d(TOL), help="coefficient drop tolerance")
    p.add_argument("--trace", type=Path, default=d(None), help="write per-step HATT trace (JSON lines)")
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized checks")
    p.add_argument("--threads", type=int, default=d(None), help="threads for the HATT candidate scan")
    p.add_argument("-v", "--verbose", action="count", default=d(0))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="f2q", description="Fermion-to-qubit mappings and Trotter circuits.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="generate a benchmark Hamiltonian")
    g.add_argument("kind", choices=["fermi-hubbard"])
    g.add_argument("--rows", type=int, required=True)
    g.add_argument("--cols", type=int, required=True)
    g.add_argument("--t", type=float, default=1.0, help="hopping amplitude")
    g.add_argument("--u", type=float, default=1.0, help="on-site interaction")
    g.add_argument("--periodic", action="store_true")
    g.add_argument("-o", "--out", type=Path, help="output .fop file (default: stdout)")

    c = sub.add_parser("compile", parents=[common], help="map a Hamiltonian to qubits")
    c.add_argument("-i", "--input", type=Path, required=True, help=".fop or .mop file")
    c.add_argument("-m", "--mapping", choices=METHODS, default="hatt")
    c.add_argument("--assignment", choices=["vacuum", "leaf-order"], default="vacuum", help="btt only")
    c.add_argument("--pairing", choices=["maps", "traverse"], default="maps", help="hatt only")
    c.add_argument("-d", "--out-dir", type=Path, default=Path("."))
    c.add_argument("--tree", action="store_true", help="also write tree.sexpr for tree mappings")

    r = sub.add_parser("circuit", parents=[common], help="Trotter circuit and gate metrics")
    r.add_argument("-i", "--input", type=Path, required=True, help=".fop/.mop or qubit_hamiltonian.json")
    r.add_argument("-m", "--mapping", choices=METHODS, default="hatt", help="ignored for .json input")
    r.add_argument("--time", type=float, default=1.0)
    r.add_argument("--steps", type=int, default=1)
    r.add_argument("-d", "--out-dir", type=Path, default=Path("."))

    v = sub.add_parser("verify", parents=[common], help="check a mapping file")
    v.add_argument("mapping_json", type=Path)
    v.add_argument("-i", "--input", type=Path, help="Hamiltonian for the spectrum check")

    b = sub.add_parser("bench-scaling", parents=[common], help="HATT construction-time scaling")
    b.add_argument("--max-modes", type=int, default=128)
    b.add_argument("--repeats", type=int, default=1)
    b.add_argument("--methods", default="hatt-unopt,hatt")
    b.add_argument("-o", "--out", type=Path, help="CSV output (default: stdout)")
    return parser


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def cmd_gen(args) -> int:
    try:
        h = gen_fermi_hubbard(args.rows, args.cols, t=args.t, U=args.u, periodic=args.periodic)
    except ValueError as e:
        raise UsageError(str(e)) from None
    text = h.dumps()
    if args.out is None:
        sys.stdout.write(text)
    else:
        _write(args.out, text)
    return EXIT_OK


def _build_mapping(args, h):
    params = {}
    if args.mapping == "btt":
        params["assignment"] = args.assignment
    elif args.mapping in ("hatt", "hatt-unopt"):
        params["n_jobs"] = args.threads
        if args.mapping == "hatt":
            params["pairing"] = getattr(args, "pairing", "maps")
    mapper = make_mapper(args.mapping, **params).fit(h)
    if args.trace is not None:
        lines = [json.dumps(s.to_json()) + "\n" for s in getattr(mapper, "trace_", [])]
        _write(args.trace, "".join(lines))
    return mapper.mapping_


def cmd_compile(args) -> int:
    h = load_hamiltonian(args.input, args.tol)
    m = _build_mapping(args, h)
    q = map_hamiltonian(h, m, args.tol)
    out = args.out_dir
    _write(out / "mapping.json", m.dumps())
    _write(out / "qubit_hamiltonian.json", q.dumps())
    _write(out / "weights.json", weight_report(q).dumps())
    if args.tree and m.tree is not None:
        _write(out / "tree.sexpr", m.tree.to_sexpr() + "\n")
    log.info("total Pauli weight %d", weight_report(q).total_pauli_weight)
    return EXIT_OK


def cmd_circuit(args) -> int:
    if args.steps < 1:
        raise UsageError("--steps must be >= 1")
    if args.input.suffix == ".json":
        q = QubitHamiltonian.loads(args.input.read_text())
    else:
        h = load_hamiltonian(args.input, args.tol)
        q = map_hamiltonian(h, _build_mapping(args, h), args.tol)
    if not q.is_hermitian():
        print("error: Hamiltonian is not Hermitian", file=sys.stderr)
        return EXIT_VERIFY
    circ = trotterize(q, args.time, args.steps)
    _write(args.out_dir / "circuit.qasm", emit_qasm(circ))
    _write(args.out_dir / "metrics.json", metrics(circ).dumps())
    return EXIT_OK


def _verify_rows(m: Mapping, h) -> list[tuple[str, str]]:
    rows = [("anticommutation (symplectic)", "pass" if oracle.check_majorana_algebra(m) else "FAIL")]
    predicate = vacuum_pair_predicate(m)
    if m.vacuum_preserving:
        rows.append(("valid pairs", "pass" if predicate else "FAIL"))
    if m.n_modes <= oracle.MAX_VACUUM_MODES:
        rows.append(("anticommutation (matrix)", "pass" if oracle.check_majorana_algebra(m, "matrix") else "FAIL"))
        dense = oracle.check_vacuum(m)
        if m.vacuum_preserving:
            rows.append(("vacuum (matrix)", "pass" if dense else "FAIL"))
        rows.append(("vacuum predicate agrees with matrix", "pass" if dense == predicate else "FAIL"))
    if h is not None and m.n_modes <= oracle.MAX_SPECTRUM_QUBITS:
        if not check_hermitian(h):
            rows.append(("spectrum vs jw", "skip (not Hermitian)"))
        else:
            ours = oracle.spectrum(map_hamiltonian(h, m))
            ref = oracle.spectrum(map_hamiltonian(h, make_mapper("jw").fit(h).mapping_))
            rows.append(("spectrum vs jw", "pass" if np.allclose(ours, ref, atol=1e-9, rtol=0) else "FAIL"))
    return rows


def cmd_verify(args) -> int:
    try:
        m = Mapping.loads(args.mapping_json.read_text())
    except (KeyError, TypeError) as e:
        raise ParseError(f"malformed mapping file: {e}") from None
    h = None
    if args.input is not None:
        h = load_hamiltonian(args.input, args.tol)
        if h.n_modes != m.n_modes:
            raise UsageError(f"Hamiltonian has {h.n_modes} modes, mapping has {m.n_modes}")
    rows = _verify_rows(m, h)
    width = max(len(name) for name, _ in rows)
    for name, status in rows:
        print(f"{name:<{width}}  {status}")
    return EXIT_VERIFY if any(s == "FAIL" for _, s in rows) else EXIT_OK


def cmd_bench_scaling(args) -> int:
    try:
        grid = bench.grid_up_to(args.max_modes)
    except ValueError as e:
        raise UsageError(str(e)) from None
    methods = tuple(s.strip() for s in args.methods.split(",") if s.strip())
    unknown = [m for m in methods if m not in bench.METHODS]
    if unknown:
        raise UsageError(f"unknown method(s): {', '.join(unknown)}")
    rows, slopes = bench.run_scaling(grid, methods, args.repeats, args.threads)
    text = bench.rows_to_csv(rows)
    if args.out is None:
        sys.stdout.write(text)
    else:
        _write(args.out, text)
    for method, slope in slopes.items():
        print(f"slope {method}: {slope:.3f}", file=sys.stderr)
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "compile": cmd_compile,
    "circuit": cmd_circuit,
    "verify": cmd_verify,
    "bench-scaling": cmd_bench_scaling,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, TreeError, json.JSONDecodeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (ConstructionError, AssertionError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
