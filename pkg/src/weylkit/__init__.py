"""Exact computation with invariant Weyl connections on metric Lie
algebras: Levi-Civita data, stretched-non-positive fields, a catalog of
4-dimensional families, and constructions with prescribed fields."""

__version__ = "0.1.0"

from .catalog import (ExpectedSnp, SweepEntry, SweepReport, build,
                      deterministic_draws, expected_snp, families,
                      family_def, milnor_matrix, random_params,
                      verify_classification)
from .constructors import (GtTensor, build_snp_extension, derivations, dyer,
                           gt_algebra, gt_surjective, heisenberg,
                           is_characteristically_nilpotent, n2_heisenberg,
                           parse_gt_tensor, skew_derivations,
                           standard_symplectic)
from .documents import dumps, from_document, loads, to_document
from .errors import (CentralField, DegenerateForm, DegeneratePlane,
                     DocumentError, DuplicateTerm, InadmissibleParams,
                     InexactSqrt, NonCommutingImages, NotADerivation,
                     NotInSnpSpace, NotNilpotent, NotPositiveDefinite,
                     NotSkewDerivation, NotSurjective, NotUnimodular,
                     OddDimension, ParseError, RangeError, WeylkitError,
                     ZeroField)
from .lie import (LieAlgebra, ValidationReport, abelian, ad_matrix, bracket,
                  center, derived_series, is_abelian, is_nilpotent,
                  is_solvable, is_unimodular, lower_central_series,
                  metabelian_signature, nilpotency_class, semidirect_sum,
                  subspace_bracket, transform, validate, vergne_type)
from .linalg import Subspace, span
from .metric import (Connection, InnerProduct, MetricLieAlgebra, OrthoFrame,
                     covariant_derivative, curvature_components,
                     curvature_tensor, is_parallel, levi_civita,
                     orthonormalize, sectional_curvature)
from .weyl import (SnpReport, StretchScan, StructureReport, WeylConnection,
                   check_w2, snp_space, stretch_scan, verify_structure,
                   weyl_connection, weyl_sectional, weyl_sectional_exact)

__all__ = [name for name in dir() if not name.startswith("_")]
