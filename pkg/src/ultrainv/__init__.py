"""Local commutants, girders and ultrainvariant-subspace lattices over
exact Gaussian rationals, with a float demo backend."""

from .analysis import (AlgebraVerdict, algebra_status, conjugate_problem,
                       is_invariant, is_ultrainvariant, reduce_components,
                       ultrainvariant_closure)
from .errors import (BadIndex, BadSplit, DimensionMismatch,
                     InputFileError, InternalInconsistency, NotNilpotent,
                     NotSquare, NotSquareAmbient, PreconditionViolated,
                     SingularU, SpectraOverlap, SpectrumIncomplete,
                     UltrainvError, ZeroWeight)
from .matrix import LinearFunctional, Matrix, eval_poly, outer_product
from .opspace import (OperatorSpace, apply_to_subspace, is_product_closed,
                      member, multiplier_space, unvec, vec)
from .scalar import EXACT, FLOAT, GaussianRational, as_exact
from .solver import (alg_of, commutant, girder, intertwiner_space,
                     largest_inner_algebra, left_module_algebra,
                     local_commutant, right_module_algebra)
from .spectral import (PrimaryDecomposition, SpectrumSpec, UltraLattice,
                       algebraic_ultra_lattice, ascent_descent,
                       find_rational_spectrum, float_spectrum,
                       local_spectrum, minimal_polynomial,
                       nilpotent_ultra_lattice, nilpotent_witness,
                       primary_decomposition, riesz_projection,
                       spectral_subspace, spectrum_from_roots)
from .subspace import (Subspace, canonicalize, contains, full_space, image,
                       join, kernel, map_subspace, meet, meet_join,
                       projection_matrix, zero_space)

__version__ = "0.1.0"
