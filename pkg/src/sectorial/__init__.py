"""Finite-dimensional toolkit for sectorial operators and linear relations:
numerical range sweeps, Cayley contraction triples, shifted resolvent
factorization, Schatten diagnostics, and first-order operator-differential
experiments."""

from ._version import VERSION as __version__
from .diffop import (
    DiffOpProblem,
    ObstructionSweep,
    RayleighSample,
    accretivity_equivalence_check,
    analytic_quotient,
    galerkin_matrix,
    obstruction_sweep,
    quadrature_quotient,
)
from .numlin import (
    EigenPair,
    general_eigs,
    hermitian_eigs,
    inner,
    operator_norm,
    orthonormal_basis,
    quadratic_form,
    schatten_norm,
    singular_values,
)
from .oprange import (
    RangeBoundary,
    SectorReport,
    classify_operator,
    imag_part,
    range_boundary,
    real_part,
    semi_angle,
)
from .relcalc import (
    ContractionTriple,
    LinearRelation,
    RelationFlags,
    cayley_triple,
    classify_relation,
    is_m_sectorial,
    projector_distance,
    random_sectorial_matrix,
    random_sectorial_relation,
    relation_from_contraction,
    relation_from_graph,
    rotate_relation,
)
from .spectheory import (
    FactorizationReport,
    SpectrumReport,
    factorize,
    normal_asymptotics_check,
    resolvent_schatten_profile,
    sector_spectrum_report,
)

__all__ = [name for name in dir() if not name.startswith("_")]
