"""Exact GKM combinatorics of regular semisimple Hessenberg varieties."""

from .perms import Composition, Permutation, compose
from .polys import MultiPoly, parse_poly
from .gkm import GkmGraph, HessenbergFunction, edge_kind, l_h, poincare_coefficients
from .reach import build_cell_digraph, j_family, set_reachable, support_A, vertex_reachable
from .cells import (
    EigenvalueVector,
    build_cell_chart,
    fixed_point_oracle,
    minimal_path_coefficient,
    minor_reachability_certificate,
    prime_eigenvalues,
)
from .classes import (
    EquivariantClass,
    expand_in_basis,
    gkm_check,
    interpolate_class,
    permutohedral_class,
    reduce_to_ordinary,
    top_value,
)
from .dot import action_matrix, dot, perm_si_action
from .decomp import erase, g_set, sigma_hat, verify_decomposition, verify_wz_completeness
from .chromatic import chromatic_qsym, frobenius_of_degree, verify_shareshian_wachs
from .symfunc import SymFunc

__all__ = [
    "Composition",
    "EigenvalueVector",
    "EquivariantClass",
    "GkmGraph",
    "HessenbergFunction",
    "MultiPoly",
    "Permutation",
    "SymFunc",
    "action_matrix",
    "build_cell_chart",
    "build_cell_digraph",
    "chromatic_qsym",
    "compose",
    "dot",
    "edge_kind",
    "erase",
    "expand_in_basis",
    "fixed_point_oracle",
    "frobenius_of_degree",
    "g_set",
    "gkm_check",
    "interpolate_class",
    "j_family",
    "l_h",
    "minimal_path_coefficient",
    "minor_reachability_certificate",
    "parse_poly",
    "perm_si_action",
    "permutohedral_class",
    "poincare_coefficients",
    "prime_eigenvalues",
    "reduce_to_ordinary",
    "set_reachable",
    "sigma_hat",
    "support_A",
    "top_value",
    "verify_decomposition",
    "verify_shareshian_wachs",
    "verify_wz_completeness",
    "vertex_reachable",
]
