"""Squarefree S- and E-modules, their complexes, and the functors between them."""

from .modules import (
    NEG_INF,
    HilbertData,
    SqModule,
    SqMorphism,
    alexander_module,
    alpha,
    direct_sum,
    dual_E,
    free_module,
    functor_E,
    functor_S,
    hilbert_data,
    hilbert_data_of_dims,
    hom_space,
    is_isomorphic,
    maximal_support,
    minimal_primes,
    residue_field,
    sr_module,
    zero_module,
)
from .complexes import (
    ChainMap,
    NotAChainMapError,
    SqComplex,
    alexander,
    as_complex,
    cohomology,
    cohomology_dims,
    complex_dual_E,
    complex_functor_E,
    complex_functor_S,
    mapping_cone,
    module_map_complex,
    shift,
)
from .free import FreeComplex
from .koszul import BettiTable, betti_koszul
from .resolution import Resolution, ext_dims, ext_modules, is_minimal_cover, min_free_resolution, minimal_cover

__all__ = [
    "NEG_INF", "HilbertData", "SqModule", "SqMorphism", "alexander_module", "alpha", "direct_sum",
    "dual_E", "free_module", "functor_E", "functor_S", "hilbert_data", "hilbert_data_of_dims",
    "hom_space", "is_isomorphic", "maximal_support", "minimal_primes", "residue_field", "sr_module",
    "zero_module", "ChainMap", "NotAChainMapError", "SqComplex", "alexander", "as_complex",
    "cohomology", "cohomology_dims", "complex_dual_E", "complex_functor_E", "complex_functor_S",
    "mapping_cone", "module_map_complex", "shift", "FreeComplex", "BettiTable", "betti_koszul",
    "Resolution", "ext_dims", "ext_modules", "is_minimal_cover", "min_free_resolution", "minimal_cover",
]
