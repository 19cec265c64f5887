"""Growth of power norms of 0/1 matrices: classification, admissible words,
extremal detection, and exhaustive desk-scale verification."""

from .classify import (
    DimensionResult,
    Growth,
    GrowthClass,
    SpectralRadiusResult,
    char_polynomial,
    classify,
    classify_report,
    dimension,
    is_binomial_extremal,
    is_sup_extremal,
    spectral_radius,
    sup_norm,
)
from .digraph import (
    COMPLEX,
    SCC,
    SIMPLE_CYCLE,
    TRIVIAL,
    CycleStructure,
    branching_certificate,
    cycle_structure,
    is_nilpotent,
    p2_power_oracle,
    reachable_from,
    satisfies_p2,
    sccs,
)
from .equivalence import (
    CanonicalForm,
    Permutation,
    apply_permutation,
    are_equivalent,
    canonical_form,
    extremal_sup_forms,
    is_permutation_matrix,
    is_strictly_lower_triangularizable,
    orbit,
)
from .errors import (
    CanonicalSizeLimitError,
    MatrixFormatError,
    NotInCycleSetError,
    P1ViolationError,
    P2ViolationError,
    PreconditionError,
    SizeMismatchError,
    UnboundedClassError,
    WordCapExceededError,
)
from .matrices import (
    BitMatrix,
    NatMatrix,
    binomial,
    bitmatrix,
    block_compose,
    make_I,
    make_J,
    make_L,
    make_T,
    multiply,
    norm,
    norm_sequence,
    p1_violation,
    power,
    satisfies_p1,
)
from .words import (
    InfiniteWordDescriptor,
    Word,
    WordCensus,
    admissible_words,
    admissible_words_between,
    count_infinite,
    infinite_word_census,
    metric_distance,
    periodic_word,
    word_to_text,
)

__version__ = "0.1.0"
