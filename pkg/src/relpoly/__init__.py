"""Exact reliability polynomials, their H/J transforms and stability certificates."""
from __future__ import annotations

from .errors import DomainError, FormatError, InconclusiveError, RefusalError
from .hypercube import CubeStatus, CubeVerdict, PolyCube, cube_falsify
from .matroidfv import SetSystem, class_membership, f_vector, hj_setsystem, uniform_H
from .netgraph import Multigraph, parse_graph, thick_cycle, thick_path
from .polycore import Poly, mobius_q_to_u, mobius_u_to_q
from .realroot import Method, StabilityVerdict, Status, hermite_biehler, interlaces, schur_quasi_stable
from .relical import ReliabilityReport, h_poly, j_poly, reliability_poly, report

__version__ = "0.1.0"

__all__ = [
    "CubeStatus", "CubeVerdict", "DomainError", "FormatError", "InconclusiveError", "Method",
    "Multigraph", "Poly", "PolyCube", "RefusalError", "ReliabilityReport", "SetSystem",
    "StabilityVerdict", "Status", "class_membership", "cube_falsify", "f_vector", "h_poly",
    "hermite_biehler", "hj_setsystem", "interlaces", "j_poly", "mobius_q_to_u", "mobius_u_to_q",
    "parse_graph", "reliability_poly", "report", "schur_quasi_stable", "thick_cycle", "thick_path",
    "uniform_H",
]
