"""Exact certification of the rho-function criteria for L^2(G/H).

For a reductive pair (G, H) the package builds the restricted weights of
g, h and q = g/h on a split abelian subspace a of h, decides
``rho_g <= 2 rho_q`` (temperedness) and ``rho_g < 2 rho_q`` off the origin
(square integrability) exactly, and derives discrete-series conclusions.
"""

from .classify import (
    DiscConclusion,
    DiscG,
    DiscGH,
    SOBlockSpec,
    classify_so_pair,
    conclude_from_corollary,
    disc_nonempty_ambient,
    is_symmetric_so_pair,
)
from .engine import CriterionVerdict, RhoFunction, Status, decide_strict, decide_tempered, rho_eval
from .errors import (
    InvalidInput,
    InvalidSpec,
    NotASubmodule,
    ResourceLimit,
    RhoCertError,
    ZeroFunctional,
)
from .geometry import LinearFunctional, RaySet, canonicalize, enumerate_test_rays, rank
from .report import Report, run_check
from .specio import parse_spec
from .weights import (
    SL,
    SO,
    Generic,
    PairSpec,
    RestrictedPairData,
    SLBlocks,
    SOBlocks,
    SOinSL,
    WeightMultiset,
    build_generic,
    build_sl_blocks,
    build_so_blocks,
    build_so_in_sl,
)

__version__ = "0.1.0"
