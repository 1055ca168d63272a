"""Exact computations with grade-3 ideals in k[x, y, z].

Strand-wise linear algebra over F_p (or Q) drives minimal free resolutions,
Macaulay inverse systems, Pfaffian ideals, trimming complexes and Koszul
homology products.
"""

from .complexes import BettiTable, ChainComplex, GradedFreeModule, GradedMap, betti_table, minimalize
from .field import DEFAULT_FIELD, PrimeField, RationalField, make_field
from .ideal import Ideal, minimal_generators, mu
from .inverse import (
    InverseSystem,
    annihilator,
    contract,
    genset_decomposition,
    inverse_system,
    is_compressed,
    profile,
    random_instance,
    socle,
    tipping_point,
)
from .pfaffian import SkewMatrix, build_U, build_V, pfaffian, submax_pfaffians
from .poly import HomogPoly, parse_poly
from .realize import realize
from .resolution import buchsbaum_eisenbud, minimal_free_resolution
from .tor import check_bounds, classify_G, delta_rank, koszul_tor
from .trimming import split_summands, trim_ideal, trimmed_betti, trimming_complex

__version__ = "0.1.0"
