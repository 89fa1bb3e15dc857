"""Intrinsic torsion and Ricci curvature of SL(n,R)-structures on Lie algebras.

Quick start::

    from paratorsion import parse_salamon, Structure, analyze
    rec = analyze(Structure(parse_salamon("0,0,0,12")))
    rec["torsion"]["class"]   # 'W2'
"""

from .analysis import __version__, analyze, all_agree
from .curvature import curvature_data, predicates
from .exalg import KERNEL, Form, ParseError, Tensor
from .liealg import LieAlgebra, check_jacobi, change_coframe, parse_salamon
from .pstruct import NotDirectError, PreconditionError, Structure
from .ricforms import ricci_prime_formula, ricci_second_formula, scalar_formula
from .search import run_search, verify_family
from .torsion import TorsionClass, classify, intrinsic_torsion, nijenhuis, product

__all__ = [
    "__version__", "KERNEL", "Form", "Tensor", "ParseError", "LieAlgebra", "parse_salamon",
    "check_jacobi", "change_coframe", "Structure", "NotDirectError", "PreconditionError",
    "intrinsic_torsion", "classify", "TorsionClass", "nijenhuis", "product",
    "curvature_data", "predicates", "ricci_prime_formula", "ricci_second_formula",
    "scalar_formula", "analyze", "all_agree", "run_search", "verify_family",
]
