"""Formal abductive and contrastive explanations for decision trees."""

from .contrastive import all_cpxps, cxps_instance
from .encode import encode_path, encode_unrestricted, explain_horn, smallest_horn
from .enumerate import enumerate_apxps, enumerate_by_size, enumerate_dual, min_hitting_set, smallest_apxp
from .explanation import Explanation
from .hitting import apxp_mhs, axp_mhs, minimal_hitting_set
from .horn import HornClause, HornProblem, horn_maxsat, horn_mcs, horn_sat
from .report import report
from .traversal import explain_traversal, reaches_other_class
from .tree import (DecisionTree, Path, TreeFormatError, chi_I, chi_P, classify, load_instance, load_tree,
                   open_tree, paths, rho, validate)
from .valuesets import Domain, ValueSet

__version__ = "0.1.0"


def backend() -> str:
    """Name of the active kernel implementation."""
    from . import kernels
    return kernels.BACKEND


__all__ = [
    "DecisionTree", "Domain", "Explanation", "HornClause", "HornProblem", "Path", "TreeFormatError", "ValueSet",
    "all_cpxps", "apxp_mhs", "axp_mhs", "backend", "chi_I", "chi_P", "classify", "cxps_instance",
    "encode_path", "encode_unrestricted", "enumerate_apxps", "enumerate_by_size", "enumerate_dual",
    "explain_horn", "explain_traversal", "horn_maxsat", "horn_mcs", "horn_sat", "load_instance", "load_tree",
    "min_hitting_set", "minimal_hitting_set", "open_tree", "paths", "reaches_other_class", "report", "rho",
    "smallest_apxp", "smallest_horn", "validate",
]
