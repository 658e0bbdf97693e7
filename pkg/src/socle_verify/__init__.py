"""Modular group algebras of finite p-groups.

Builds kG for a p-group G over GF(p^n), computes the radical filtration
and the dimension-subgroup machinery attached to it, and checks that
every algebra automorphism scales the one-dimensional socle by the
(p-1)-st power of the determinant of its induced graded action.
"""

from .ffield import GF, FieldSpec, FieldElement, FieldMismatch, DomainError, parse_field_literal
from .pgroup import (
    PcGroup,
    GroupElement,
    Subgroup,
    GroupAutomorphism,
    PresentationError,
    InconsistentPresentation,
    RelationViolation,
    NotBijective,
    catalog,
    catalog_names,
)
from .groupalgebra import (
    GroupAlgebra,
    AlgebraElement,
    RadicalFiltration,
    FiltrationError,
    NotAUnit,
    dimension_subgroups_definitional,
    radical_filtration,
)
from .jennings import JenningsBasis, DimensionMismatch, build_jennings_basis
from .automorphisms import (
    AlgebraAutomorphism,
    GradedAction,
    VerificationReport,
    NotMultiplicative,
    SocleNotPreserved,
    FiltrationNotPreserved,
    LieSubspaceViolated,
    SingularLinearPart,
    verify_theorem,
    lambda_of,
    induced_blocks,
)
from .truncsym import TruncatedPolynomialRing, NotScalarMultiple, SingularMatrix

__version__ = "0.1.0"
