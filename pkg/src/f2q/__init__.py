"""Fermion-to-qubit mappings with Hamiltonian-adaptive ternary trees."""

from .apply import QubitHamiltonian, WeightReport, map_hamiltonian, total_weight, weight_report
from .baselines import balanced_ternary_tree, bravyi_kitaev, jordan_wigner
from .circuit import Circuit, CircuitMetrics, Gate, emit_qasm, metrics, parse_qasm, trotter_term, trotterize
from .estimators import (
    BalancedTernaryTreeMapper,
    BravyiKitaevMapper,
    HATTMapper,
    JordanWignerMapper,
    make_mapper,
)
from .fermion import (
    FermionicHamiltonian,
    LadderTerm,
    MajoranaHamiltonian,
    MajoranaMonomial,
    ParseError,
    gen_fermi_hubbard,
    load_hamiltonian,
    parse_fermionic,
    parse_majorana,
    to_majorana,
)
from .hatt import ConstructionError, HattBuilder, build, build_unopt
from .mapping import Mapping, Method, check_anticommutation, is_valid_pair, vacuum_pair_predicate
from .pauli import PauliString, anticommutes, multiply
from .tree import DescMaps, TernaryTree, extract_strings, parse_sexpr

__version__ = "0.1.0"
