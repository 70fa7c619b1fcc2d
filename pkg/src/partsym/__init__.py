"""Finite, executable models of partial-bijection monoids, Munn semigroups,
clopen lattices of Cantor space and prefix-exchange homeomorphisms."""

from .clopen import Clopen, enumerate_base, is_hereditary_sublattice, tilde_truncated
from .errors import (InconsistencyError, InternalConsistencyError, MalformedQuery, PartsymError,
                     ResourceLimit)
from .homeo import PrefixMap, apply_point, pm_compose, pm_invert
from .lattice_iso import TruncatedLatticeMap, decode, encode
from .pbij import (FiniteInverseSemigroup, PartialBijection, SequenceWindow, check_convergence,
                   compose, invert, tau_pp_distance, wagner_preston)
from .semilattice import FiniteSemilattice, munn_semigroup

__version__ = "0.1.0"

__all__ = [
    "Clopen", "enumerate_base", "is_hereditary_sublattice", "tilde_truncated",
    "InconsistencyError", "InternalConsistencyError", "MalformedQuery", "PartsymError",
    "ResourceLimit", "PrefixMap", "apply_point", "pm_compose", "pm_invert",
    "TruncatedLatticeMap", "decode", "encode", "FiniteInverseSemigroup", "PartialBijection",
    "SequenceWindow", "check_convergence", "compose", "invert", "tau_pp_distance",
    "wagner_preston", "FiniteSemilattice", "munn_semigroup",
]
