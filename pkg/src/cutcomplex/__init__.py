"""Total cut and cut complexes of graphs, their Morse matchings and integral homology."""
from .complexes import CUT, TOTAL, ComplexSpec, FVector, cut, f_vector, faces_of_dim, facets, is_face, total_cut
from .graphs import Graph, cartesian_product, circulant, complete, cycle, cycle_power, path
from .homology import BettiReport, reduced_homology, smith_normal_form
from .morse import HomotopyClaim, homotopy_claim, run_element_matchings, verify_acyclic

__all__ = [
    "CUT", "TOTAL", "ComplexSpec", "FVector", "cut", "f_vector", "faces_of_dim", "facets", "is_face",
    "total_cut", "Graph", "cartesian_product", "circulant", "complete", "cycle", "cycle_power", "path",
    "BettiReport", "reduced_homology", "smith_normal_form", "HomotopyClaim", "homotopy_claim",
    "run_element_matchings", "verify_acyclic",
]
