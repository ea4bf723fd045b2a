"""Cech complexes, a domination order on simplicial complex classes, and
stratified paths of moving point configurations."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .cech import Filtration, cech_complex, cech_filtration
from .complexes import (
    CapExceeded,
    IsoClass,
    SimplicialComplex,
    SimplicialMap,
    are_isomorphic,
    canonical_form,
    compose,
    identity_map,
    is_simplicial,
    make_complex,
)
from .geometry import (
    DELTA_PT,
    EPS_GEO,
    Ball,
    PointConfig,
    RanPoint,
    cech_radius,
    cech_radius_set_distance,
    cech_set,
    hausdorff,
    meb,
    set_distance,
    sup_distance,
)
from .paths import (
    ChainFiltration,
    PLPath,
    ZigzagDiagram,
    as_filtration,
    cech_path,
    entrance_map,
    evaluate,
    transitions,
    zigzag,
)
from .scposet import (
    HasseDiagram,
    PosetUniverse,
    dominates,
    enumerate_classes,
    export_dot,
    hasse,
    upset,
)
from .strat import (
    FrontierReport,
    ParametricFamily,
    SafeBall,
    StratumLabel,
    frontier_check,
    local_map,
    r1,
    r2,
    r2_prime,
    stratum_label,
    tilde_r,
    two_point_line_family,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "CapExceeded",
    "ChainFiltration",
    "DELTA_PT",
    "EPS_GEO",
    "Filtration",
    "FrontierReport",
    "HasseDiagram",
    "IsoClass",
    "KERNEL_BACKEND",
    "PLPath",
    "ParametricFamily",
    "PointConfig",
    "PosetUniverse",
    "RanPoint",
    "SafeBall",
    "SimplicialComplex",
    "SimplicialMap",
    "StratumLabel",
    "ZigzagDiagram",
    "are_isomorphic",
    "as_filtration",
    "canonical_form",
    "cech_complex",
    "cech_filtration",
    "cech_path",
    "cech_radius",
    "cech_radius_set_distance",
    "cech_set",
    "compose",
    "dominates",
    "entrance_map",
    "enumerate_classes",
    "evaluate",
    "export_dot",
    "frontier_check",
    "hasse",
    "hausdorff",
    "identity_map",
    "is_simplicial",
    "local_map",
    "make_complex",
    "meb",
    "r1",
    "r2",
    "r2_prime",
    "set_distance",
    "stratum_label",
    "sup_distance",
    "tilde_r",
    "transitions",
    "two_point_line_family",
    "upset",
    "zigzag",
]
