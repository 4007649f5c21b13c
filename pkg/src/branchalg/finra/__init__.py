from .atoms import (
    AtomStructure,
    AtomStructureError,
    format_structure,
    from_cycles,
    make_proper_ra,
    parse_structure,
    verify_axioms,
)
from .enumeration import (
    SIGNATURES,
    STRETCH_SIGNATURES,
    TABLE_TOTALS,
    UnsupportedSignatureError,
    enumerate_integral,
    normalize_signature,
)
from .jlm import (
    FORMULAS,
    JlmRecord,
    KReport,
    check_jlm,
    check_k,
    profile_signature,
    profile_structures,
    profile_tsv,
)
from .represent import (
    NotTabular,
    PartialRep,
    StageReport,
    build_stage_rep,
    extend_comp,
    extend_join,
    functional_elements,
    hat,
    is_tabular,
    lemma_properties_hold,
    tabular_witness,
)

__all__ = [
    "AtomStructure",
    "AtomStructureError",
    "FORMULAS",
    "JlmRecord",
    "KReport",
    "NotTabular",
    "PartialRep",
    "SIGNATURES",
    "STRETCH_SIGNATURES",
    "StageReport",
    "TABLE_TOTALS",
    "UnsupportedSignatureError",
    "build_stage_rep",
    "check_jlm",
    "check_k",
    "enumerate_integral",
    "extend_comp",
    "extend_join",
    "format_structure",
    "from_cycles",
    "functional_elements",
    "hat",
    "is_tabular",
    "lemma_properties_hold",
    "make_proper_ra",
    "normalize_signature",
    "parse_structure",
    "profile_signature",
    "profile_structures",
    "profile_tsv",
    "tabular_witness",
    "verify_axioms",
]
