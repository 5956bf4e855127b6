"""Regular-open Boolean algebras of finite posets and the embedding a -> box diamond down(a, 0)."""

from .embedding import (
    MODES,
    Embedding,
    ExactnessReport,
    PreservationReport,
    check_preservation,
    dual_embed,
    embed,
    exactness,
    funayama_corollary_check,
    satisfies_jid,
    satisfies_mid,
)
from .errors import (
    CapacityExceeded,
    CycleDetected,
    DegeneratePoset,
    DuplicateName,
    ForeignElement,
    FunayamaError,
    LatticeSyntaxError,
    NotALattice,
    NotBounded,
    SpaceMismatch,
    UnknownElement,
    UnknownName,
    UnknownPair,
)
from .lattice_file import LatticeFile, parse_lattice, serialize_lattice
from .order import (
    BoundAdjunction,
    LatticeInfo,
    Poset,
    adjoin_bounds,
    canonical_form,
    classify,
    down_set,
    dual,
    from_covers,
    is_isomorphic,
    join,
    leq,
    meet,
)
from .pairspace import (
    DualIso,
    PairSet,
    PairSpace,
    below,
    box,
    build_pair_space,
    diamond,
    dual_iso,
    is_downset,
    regularize,
    swap_iso,
)
from .report import AnalysisReport, analyze
from .roalgebra import (
    RegularOpenAlgebra,
    Subalgebra,
    atoms,
    build_ro_algebra,
    generated_subalgebra,
    is_dense_subalgebra,
    macneille_iso_check,
    oracle_ro_enumerate,
    ro_join,
    ro_meet,
    ro_not,
    verify_boolean_axioms,
)
from .dot import emit_dot
from .zoo import (
    Problem1Status,
    SearchRecord,
    catalog,
    enumerate_lattices,
    enumerate_posets,
    footnote_check,
    search_problem1,
    survey_problem2,
)

__version__ = "0.1.0"
