"""ravkit: exact numeric and symbolic engine for the OSSTMM v3 rav metric
and Trust Rule calculus, with an executable critique suite.

The package computes Actual Security in exact rational arithmetic
(:mod:`ravkit.metrics`), rebuilds the same pipeline as a symbolic
expression over formal unit variables (:mod:`ravkit.symbolic`), scores
applicant records with the quoted Trust Rules (:mod:`ravkit.trust`),
parses scope files, scanner XML and applicant CSVs (:mod:`ravkit.ingest`),
renders deterministic reports (:mod:`ravkit.report`), and packages the
known weaknesses of the metric as reproducible findings
(:mod:`ravkit.critique`).
"""

from .errors import (
    CsvFormatError,
    DomainError,
    InputError,
    RavkitError,
    ScanFormatError,
    ScopeFormatError,
    UndefinedTrustError,
    UndefinedWeightError,
    UnassignedVariableError,
    ZeroDenominatorError,
)
from .metrics import (
    AGGREGATE_CHANNEL,
    CHANNELS,
    LIMITATION_CATEGORIES,
    META_CLASS_A,
    META_CLASS_B,
    ControlClass,
    ControlCounts,
    LimitationCounts,
    MissingControls,
    PorosityCounts,
    RavBreakdown,
    Scope,
    Weights,
    actual_security,
    aggregate_scopes,
    base_value,
    limitation_weights,
    missing_controls,
    opsec_sum,
    security_limitations_sum,
    toy_scope,
)
from .polynomial import Polynomial, divide_exact, polynomial_gcd
from .ratfun import RationalFunction, ratfun_arith
from .symbolic import (
    EquivalenceResult,
    FormalVar,
    LogSquareAtom,
    SymbolicBreakdown,
    SymbolicScore,
    equivalent,
    symbolic_breakdown,
    symbolic_rav,
)
from .trust import (
    ApplicantRecord,
    Polarity,
    RatioRule,
    Reference,
    RuleResult,
    TrustProperty,
    TrustScore,
    consistency_ratios,
    consistency_score,
    porosity_rule,
    ratios_equal,
    score_applicant,
    trust_combine,
    unmonitored_hours_rule,
)
from .ingest import (
    ScanReport,
    ScopeDocument,
    ScopeEntry,
    import_scan_report,
    import_scan_xml,
    merge_scan_into_scope,
    parse_applicants_csv,
    parse_scope_document,
    parse_scope_file,
    render_scope_document,
)
from .report import parse_report, render_findings, render_report, render_trust_report
from .critique import (
    CollisionBounds,
    CritiqueFinding,
    collision_search,
    cross_class_counterexample,
    formula_discrepancy_demo,
    permutation_demo,
    prose_actual_security,
    trust_aggregation_demo,
    trust_equivalence_demo,
)

__version__ = "0.1.0"
