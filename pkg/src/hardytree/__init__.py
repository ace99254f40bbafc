"""Level means, norms and multiplication operators on homogeneous rooted trees."""
from .errors import (
    DocumentError,
    HardyTreeError,
    InvalidExponents,
    LevelTooLarge,
    NotInvertible,
    NotSerializable,
    RootHasNoParent,
    SpectrumUndecided,
    TailMismatch,
)
from .functions import (
    DenseTruncated,
    FiniteSupport,
    FunctionRep,
    LevelSequence,
    PathSupported,
    PointwiseRule,
    Radial,
    Tail,
    as_exponent,
    linear_combination,
    multiply,
    point_mass,
)
from .operators import (
    Answer,
    Symbol,
    analyze,
    compactness_verdict,
    delta_lower_bound,
    essential_norm_upper,
    isometry_verdict,
    operator_norm,
    point_spectrum_sample,
    resolvent_symbol,
    spectrum_classify,
)
from .space import (
    Membership,
    Space,
    growth_bound,
    holder_vector_bounds,
    level_mean,
    level_means,
    membership,
    norm,
    truncate,
)
from .tree import ROOT, TreeGeometry, VertexId, enumeration_limit

__version__ = "0.1.0"
