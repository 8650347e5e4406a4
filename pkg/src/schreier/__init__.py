"""Schreier families, repeated averages and Schreier-space norms in exact arithmetic."""

from .averages import (RunVector, interval_average, isometric_c0_select, repeated_average,
                       repeated_averages, small_beta_vector, verify_weak_summing)
from .caps import DEFAULT_CAPS, Caps, CheckFailure, DomainError, ResourceCapError
from .families import (block_end, greedy_blocks, is_maximal, is_member, is_member_An,
                       is_member_modified, maximal_partition, tau, tau_oracle)
from .norms import An_seminorm, dual_norm, dual_norm_oracle, norm_oracle, schreier_norm
from .operators import (FiniteOperator, IndexMap, build_ss_chain, collapse_map,
                        dyadic_family, formal_identity, non_ss_witness, op_norm, ss_witness,
                        xi_injectivity_report)
from .ordinal import Ordinal, fundamental_sequence, i_set, ordinal, r_set
from .pairs import SchreierPair, build_pair, verify_pair
from .sets import FiniteSet
from .streams import IndexStream
from .vectors import RationalVector

__all__ = [
    "RunVector", "interval_average", "isometric_c0_select", "repeated_average",
    "repeated_averages", "small_beta_vector", "verify_weak_summing", "DEFAULT_CAPS", "Caps",
    "CheckFailure", "DomainError", "ResourceCapError", "block_end", "greedy_blocks",
    "is_maximal", "is_member", "is_member_An", "is_member_modified", "maximal_partition",
    "tau", "tau_oracle", "An_seminorm", "dual_norm", "dual_norm_oracle", "norm_oracle",
    "schreier_norm", "FiniteOperator", "IndexMap", "build_ss_chain", "collapse_map",
    "dyadic_family", "formal_identity", "non_ss_witness", "op_norm", "ss_witness",
    "xi_injectivity_report", "ordinal", "Ordinal", "fundamental_sequence", "i_set", "r_set",
    "SchreierPair", "build_pair", "verify_pair", "FiniteSet", "IndexStream",
    "RationalVector",
]

__version__ = "0.1.0"
