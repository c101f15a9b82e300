"""Exact asymptotic Morse-number invariants of free chain complexes over Z[Z^m]."""
from .complex import (ChainMap, FreeComplex, augmentation, base_change, build, direct_sum,
                      direct_sum_all, free_model, make_complex, mapping_cone, principal,
                      suspension, tau, tau_basic, validate, zero_complex)
from .errors import (ComplexError, LatticeRankError, MorseError, NonUnimodular, NotDivisible,
                     OracleRefused, PolySyntaxError, ZeroClass)
from .invariants import (FittingIdeal, IdealClass, InvariantReport, betti_B, fitting_sequence,
                         main_bound, principal_invariants, rho_zeta, torsion_Q)
from .laurent import LaurentPoly
from .matrix import PolyMatrix, det, rank_ff, smith_divisors, snf
from .novikov import (basic_subcomplex, check_xi_generic, excluded_hyperplanes, rescale_basic,
                      to_xi_presentation, truncate)
from .oracle import (cyclic_cover_Z, finite_quotient_Z, homology_Z, banded_unit_check,
                     morse_number_Z, mu_series, slope_fit)
from .parsing import parse_poly
from .ring import (CohomologyClass, apply_basis_change, associated, classify, divides,
                   exact_divide, gcd, normalize, split_along_xi)

__version__ = "0.1.0"

__all__ = [
    "apply_basis_change",
    "associated",
    "augmentation",
    "banded_unit_check",
    "base_change",
    "basic_subcomplex",
    "betti_B",
    "build",
    "ChainMap",
    "check_xi_generic",
    "classify",
    "CohomologyClass",
    "ComplexError",
    "cyclic_cover_Z",
    "det",
    "direct_sum",
    "direct_sum_all",
    "divides",
    "exact_divide",
    "excluded_hyperplanes",
    "finite_quotient_Z",
    "fitting_sequence",
    "FittingIdeal",
    "free_model",
    "FreeComplex",
    "gcd",
    "homology_Z",
    "IdealClass",
    "InvariantReport",
    "LatticeRankError",
    "LaurentPoly",
    "main_bound",
    "make_complex",
    "mapping_cone",
    "morse_number_Z",
    "MorseError",
    "mu_series",
    "NonUnimodular",
    "normalize",
    "NotDivisible",
    "OracleRefused",
    "parse_poly",
    "PolyMatrix",
    "PolySyntaxError",
    "principal",
    "principal_invariants",
    "rank_ff",
    "rescale_basic",
    "rho_zeta",
    "slope_fit",
    "smith_divisors",
    "snf",
    "split_along_xi",
    "suspension",
    "tau",
    "tau_basic",
    "to_xi_presentation",
    "torsion_Q",
    "truncate",
    "validate",
    "zero_complex",
    "ZeroClass",
]
