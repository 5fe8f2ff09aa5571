"""Noncommutative-lattice model of the theta-quantized angular momentum operator."""

__version__ = "0.1.0"

from .crossed_product import build_algebra, build_clock, build_shift, span_rank, verify_relations
from .gauge import (
    ConvergenceError,
    GaugeCoefficient,
    TwoPointCalculus,
    curvature_coefficient,
    minimize_ym,
    pi_de,
    vector_potential,
    verify_sigma_minimum,
    ym_action,
)
from .poset import AlgebraElement, CirclePoset, build_poset, eval_bottom, eval_top, partial_order
from .spectra import (
    EigenPair,
    ThetaSector,
    continuum_eigenpair,
    covariant_minus_apply,
    dirac_spectrum_circulant,
    dirac_spectrum_dense,
    e2_commutator_residual,
    euclidean_generators,
    quadrature_inner,
    scaled_eigenpair,
    spectra_distance,
)
from .triple import (
    ModuleSection,
    SpectralTriple,
    build_connection,
    build_dirac,
    build_section,
    build_sigma,
    hermitian_structure,
    module_action,
    split_dirac,
    trace_product,
)
