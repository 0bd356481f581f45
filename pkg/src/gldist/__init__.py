"""Multisegment combinatorics for conjugate self-duality, base change and
GL_n(F)-distinction of representations of GL_n(E)."""

from .basechange import BaseChangeClass, ParamFactor, bc_class, param_factors, total_degree
from .catalog import CatalogEntry
from .core import (
    HalfInt,
    LineSpec,
    MultiSegment,
    RepSpec,
    Segment,
    Universe,
    chi_twist,
    conj_dual,
    contragredient,
    coverage,
    is_conj_self_dual,
    is_linked,
    is_rigid,
    make_segment,
    precedes,
    standard_order,
    supp,
    tau_conj,
)
from .distinction import (
    DistinctionVerdict,
    InducedVerdict,
    check_witness,
    gamma_of,
    induced_distinction,
    is_ladder,
    is_proper_ladder,
    ladder_distinction,
    mutually_unlinked,
    proper_ladder_factors,
    rf_case,
)
from .dsl import (
    format_multisegment,
    format_rep,
    load_universe,
    parse_multisegment,
    parse_rep,
    parse_universe,
    universe_from_json,
)
from .errors import *  # noqa: F401,F403
from .involution import MwTrace, mw_dual, zelevinsky_dual

__version__ = "0.1.0"
