"""Exact computations for singular foliations on surfaces.

Modules: germ (parsing and linear classification), blowup (reduction of
singularities), localindex (Camacho-Sad and Z indices), dualgraph (pattern
classification), lattice (Mumford pairing and discrepancies), quotsing (cyclic
quotient singularities), numerics (Riemann-Roch bookkeeping and bounds).
"""

from __future__ import annotations

from .blowup import blow_up_origin, seidenberg_reduce, verify_pos_rat_structure
from .dualgraph import DualGraph, detect_patterns, propagate_chain_eigenvalues
from .errors import FolsurfError, InputError
from .germ import PlaneGerm, classify_at_origin, parse_germ
from .lattice import ExceptionalLattice, mumford_pullback
from .localindex import index_record, series_oracle_cs_z
from .numerics import InvariantSheet, effective_bounds, extract_invariants, hilbert_function
from .quotsing import hj_expand, quotient_foliation_charts

__all__ = [
    "DualGraph",
    "ExceptionalLattice",
    "FolsurfError",
    "InputError",
    "InvariantSheet",
    "PlaneGerm",
    "blow_up_origin",
    "classify_at_origin",
    "detect_patterns",
    "effective_bounds",
    "extract_invariants",
    "hilbert_function",
    "hj_expand",
    "index_record",
    "mumford_pullback",
    "parse_germ",
    "propagate_chain_eigenvalues",
    "quotient_foliation_charts",
    "seidenberg_reduce",
    "series_oracle_cs_z",
    "verify_pos_rat_structure",
]
