"""Solution-free sets over prime fields.

Classify homogeneous linear equations by zero-sum coefficient subsets, bound
independence numbers of the Cayley graphs their sets generate, extract
distinct-entry solutions from dense sets through a rainbow-path pipeline,
build certified solution-free constructions, and map the density landscape.
"""

from .cayley import AlphaResult, CayleyGraph, PrimeField, Subgraph, alpha_exact, \
    alpha_upper_from_clique, alpha_upper_ratio, build_cayley, clique_lower, \
    greedy_independent, induce_interval, is_prime, next_prime
from .constructs import ConstructionReport, SparseGraph, construct_nondegenerate, \
    construct_poly_lower, construct_schur_lower, gen_high_girth, \
    gen_triangle_free, verify_solution_free
from .density import CurveResult, DensityPoint, density_curve, exact_D, \
    heuristic_D, write_density_csv
from .equations import Classification, Equation, classify, parse_equation, \
    reorder_for_witness
from .rainbow import ColoredDigraph, RainbowPath, RestrictedSystem, \
    find_rainbow_exhaustive, find_rainbow_greedy, load_instance, save_instance, \
    verify_rainbow
from .solutions import SolutionTuple, count_solutions_all, \
    count_solutions_distinct, extract_disjoint_solutions, find_any_solution, \
    find_distinct_solution
from .witness import PipelineConfig, WitnessReport, check_hypothesis, \
    find_solution_via_rainbow

__version__ = "0.1.0"

__all__ = [
    "AlphaResult", "CayleyGraph", "Classification", "ColoredDigraph",
    "ConstructionReport", "CurveResult", "DensityPoint", "Equation",
    "PipelineConfig", "PrimeField", "RainbowPath", "RestrictedSystem",
    "SolutionTuple", "SparseGraph", "Subgraph", "WitnessReport",
    "alpha_exact", "alpha_upper_from_clique", "alpha_upper_ratio",
    "build_cayley", "check_hypothesis", "classify", "clique_lower",
    "construct_nondegenerate", "construct_poly_lower", "construct_schur_lower",
    "count_solutions_all", "count_solutions_distinct", "density_curve",
    "exact_D", "extract_disjoint_solutions", "find_any_solution",
    "find_distinct_solution", "find_rainbow_exhaustive", "find_rainbow_greedy",
    "find_solution_via_rainbow", "gen_high_girth", "gen_triangle_free",
    "greedy_independent", "heuristic_D", "induce_interval", "is_prime",
    "load_instance", "next_prime", "parse_equation", "reorder_for_witness",
    "save_instance", "verify_rainbow", "verify_solution_free",
    "write_density_csv", "__version__",
]
