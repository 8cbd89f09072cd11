"""Certified canonical heights for endomorphisms of P^k over Q(t)."""

from .arith import RationalFunc, UniPoly, rf_eval, rf_normalize
from .endomorphism import (
    Endomorphism,
    ResultantCertificate,
    conjugate,
    endo_build,
    evaluate,
    height_defect_bound,
    morphism_check,
    orbit,
)
from .errors import (
    AllZero,
    DegreeTooSmall,
    DimensionMismatch,
    DivisionByZero,
    FFHeightError,
    InhomogeneousInput,
    NotAMorphism,
    NotAPoint,
    PoleAtParameter,
    ProblemSyntaxError,
    UnsupportedShape,
)
from .forms import HomogeneousForm
from .height import (
    HeightInterval,
    PositiveCertified,
    Preperiodic,
    Undecided,
    classify,
    functional_gap_data,
    hhat_interval,
    hhat_intervals,
)
from .heightseq import orbit_heights
from .isotrivial import (
    Inconclusive,
    Isotrivial,
    MultiplierInvariants,
    NonIsotrivial,
    fixed_point_data,
    isotriviality_verdict,
    multiplier_invariants,
)
from .problem import ProblemFile, parse_problem, serialize_problem
from .projective import ProjectivePoint, naive_height, pp_equals, pp_normalize, pp_specialize
from .scan import PointEnumSpec, ScanReport, enumerate_points, scan

__version__ = "0.1.0"
