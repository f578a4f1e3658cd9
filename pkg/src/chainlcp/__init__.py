"""Linear complementary pairs of group codes over finite chain rings."""

from .chain_ring import ChainRing, RingElement, make_ring, parse_ring
from .errors import (BudgetExceeded, CapacityError, ChainLcpError, DimensionMismatch, InvalidRing,
                     InvalidTable, NonUnit, NotFree, RingMismatch, ZeroCode)
from .finite_group import CoordinatePermutation, GroupTable, inversion_permutation, make_group, parse_group
from .group_algebra import CentralIdempotent, GroupAlgebra
from .lcp import (LcpPair, LcpReport, brute_force_lcp_census, check_lcp, lcp_pairs_from_idempotents,
                  one_sided_witness_search, security_parameter, verify_equivalence)
from .linear_code import LinearCode, NormalForm, normalize

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "CapacityError", "CentralIdempotent", "ChainLcpError", "ChainRing",
    "CoordinatePermutation", "DimensionMismatch", "GroupAlgebra", "GroupTable", "InvalidRing",
    "InvalidTable", "LcpPair", "LcpReport", "LinearCode", "NonUnit", "NormalForm", "NotFree",
    "RingElement", "RingMismatch", "ZeroCode", "brute_force_lcp_census", "check_lcp",
    "inversion_permutation", "lcp_pairs_from_idempotents", "make_group", "make_ring", "normalize",
    "one_sided_witness_search", "parse_group", "parse_ring", "security_parameter", "verify_equivalence",
]
