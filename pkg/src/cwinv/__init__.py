"""Homological invariants of edge ideals, Cameron-Walker graphs and lattice-point sets."""

from .cameron_walker import (
    CwShape,
    build_cw,
    construct,
    cw_invariants,
    depth_via_fV,
    enumerate_shapes,
    independence_domination,
    parse_shape,
    recognize_cw,
)
from .canon import canonical_form
from .generate import enumerate_connected_graphs
from .graph import (
    Graph,
    GraphFormatError,
    emit_graph6,
    independence_number,
    matching_numbers,
    parse_graph6,
    s_suspension,
)
from .kernels import BACKEND
from .lattice import (
    LatticePointSet,
    audit_inequalities,
    closed_form_set,
    enumerate_cw_sets,
    enumerate_graph_pair_set,
    is_convex,
    witness_for_point,
)
from .oracle import GF2, Field, InvariantBundle, betti_table, oracle_invariants, parse_field

__version__ = "0.1.0"
