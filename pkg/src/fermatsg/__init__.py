"""Exact homological computations over graded Fermat algebras."""
from .fields import GF, QQ, FieldSpec
from .grading import GradeElement, Weight, enumerate_window, in_L_plus, in_positive_span, normalize, phi
from .algebra import Monomial, RingElement, graded_piece_basis
from .gmod import ChainComplex, FreeModule, GradedMap
from .resolution import PeriodicResolution, build_resolution, check_exactness, check_matrix_factorization
from .homalg import ExtClass, YonedaEngine, ext_dim, gorenstein_check, rhom_into_free, yoneda_compose
from .dgcat import DGCategory, TwistedComplex, cone, directed_category, euler_matrix, pretr_hom, tensor
from .collection import (
    comparison_isomorphism,
    gram_matrix,
    index_set,
    kronecker_check,
    membership_in_T,
    reduce_class,
    verify_exceptional,
)

__version__ = "0.1.0"
