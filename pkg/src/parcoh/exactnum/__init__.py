from .cyclotomic import (CycNum, as_cyc, cyc_embed, cyc_make, cyclotomic_poly,
                         denominator_support, euler_phi, min_poly_Q, omega,
                         sqrt_m3, sqrt_m7, zeta)
from .finite import (FqElem, factor_cyclotomic_mod_p, is_irreducible_mod_p,
                     multiplicative_order, residue)

__all__ = [
    "CycNum", "as_cyc", "cyc_embed", "cyc_make", "cyclotomic_poly",
    "denominator_support", "euler_phi", "min_poly_Q", "omega", "sqrt_m3",
    "sqrt_m7", "zeta", "FqElem", "factor_cyclotomic_mod_p",
    "is_irreducible_mod_p", "multiplicative_order", "residue",
]
