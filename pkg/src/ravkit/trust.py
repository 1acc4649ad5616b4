"""Trust Properties and ratio-based Trust Rules over applicant records.

Implements the hiring rules quoted from OSSTMM v3 chapter 5: the three
consistency ratios (unemployment gaps, criminal offenses per adult year,
neutral-or-negative references per past employer) averaged per rule 5.4,
the community-porosity ratio, and the unmonitored-hours ratio.  Every rule
value is an exact non-negative rational; degenerate denominators make a
ratio *undefined* rather than silently zero, and undefined ratios are
excluded from averages but reported with their reason.

Additional ratio rules can be attached declaratively via :class:`RatioRule`
(numerator field / denominator field / property); reference polarity is an
explicit input, never inferred.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

from .errors import DomainError, UndefinedTrustError

Rational = Union[int, Fraction]

COMBINE_MODES = ("average", "sum", "max")


class TrustProperty(enum.Enum):
    """The ten properties OSSTMM v3 claims make trust quantifiable."""

    SIZE = "size"
    SYMMETRY = "symmetry"
    VISIBILITY = "visibility"
    SUBJUGATION = "subjugation"
    CONSISTENCY = "consistency"
    INTEGRITY = "integrity"
    OFFSETS = "offsets"
    VALUE = "value"
    COMPONENTS = "components"
    POROSITY = "porosity"


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEUTRAL = "neutral"
    NEGATIVE = "negative"


@dataclass(frozen=True, slots=True)
class Reference:
    """One reference from a past employer with an explicitly labelled polarity."""

    employer_id: str
    polarity: Polarity


def _coerce_hours(name: str, value: Rational) -> Fraction:
    v = Fraction(value)
    if v < 0:
        raise DomainError(f"{name} must be >= 0, got {v}")
    return v


@dataclass(frozen=True)
class ApplicantRecord:
    """Inputs to the hiring Trust Rules.

    Reference entries must not outnumber past employers, unemployment months
    must fit inside the eligible months, unmonitored hours must fit inside
    the working hours, and community employees must fit inside the community
    population (when the respective denominators are nonzero).
    """

    applicant_id: str = ""
    months_unemployed: int = 0
    months_eligible: int = 0
    criminal_offenses_known: int = 0
    age_years: int = 0
    legal_adult_age: int = 18
    references: tuple[Reference, ...] = ()
    past_employer_count: int = 0
    hours_alone_per_day: Fraction = Fraction(0)
    working_hours_per_day: Fraction = Fraction(0)
    employees_in_community: int = 0
    community_population: int = 0

    def __post_init__(self) -> None:
        for name in (
            "months_unemployed",
            "months_eligible",
            "criminal_offenses_known",
            "age_years",
            "legal_adult_age",
            "past_employer_count",
            "employees_in_community",
            "community_population",
        ):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise DomainError(f"{name} must be a non-negative integer, got {value!r}")
        object.__setattr__(
            self, "hours_alone_per_day", _coerce_hours("hours_alone_per_day", self.hours_alone_per_day)
        )
        object.__setattr__(
            self,
            "working_hours_per_day",
            _coerce_hours("working_hours_per_day", self.working_hours_per_day),
        )
        object.__setattr__(self, "references", tuple(self.references))
        if self.months_eligible > 0 and self.months_unemployed > self.months_eligible:
            raise DomainError("months_unemployed cannot exceed months_eligible")
        if self.hours_alone_per_day > self.working_hours_per_day:
            raise DomainError("hours_alone_per_day cannot exceed working_hours_per_day")
        if self.community_population > 0 and self.employees_in_community > self.community_population:
            raise DomainError("employees_in_community cannot exceed community_population")
        if self.past_employer_count == 0 and self.references:
            raise DomainError("references require at least one past employer")
        if 0 < self.past_employer_count < len(self.references):
            raise DomainError("more references than past employers")

    def reference_count(self, *polarities: Polarity) -> int:
        return sum(1 for ref in self.references if ref.polarity in polarities)


@dataclass(frozen=True, slots=True)
class RuleResult:
    """Value of one trust rule: an exact ratio, or undefined with a reason."""

    property: TrustProperty
    rule_id: str
    value: Fraction | None
    undefined_reason: str | None = None
    excluded: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        if self.value is None and not self.undefined_reason:
            raise DomainError(f"undefined rule {self.rule_id!r} needs a reason")
        if self.value is not None and self.value < 0:
            raise DomainError(f"rule {self.rule_id!r} value must be >= 0, got {self.value}")

    @property
    def defined(self) -> bool:
        return self.value is not None


@dataclass(frozen=True, slots=True)
class TrustScore:
    """Per-property trust values and their combination under one mode."""

    per_property: Mapping[TrustProperty, Fraction | None]
    combined: Fraction
    mode: str
    undefined_reasons: tuple[tuple[str, str], ...] = ()


# ---------------------------------------------------------------------------
# Built-in rules
# ---------------------------------------------------------------------------


def consistency_ratios(record: ApplicantRecord) -> tuple[RuleResult, RuleResult, RuleResult]:
    """The three consistency ratios, before the rule-5.4 averaging."""
    prop = TrustProperty.CONSISTENCY
    if record.months_eligible > 0:
        r1 = RuleResult(prop, "consistency/unemployment",
                        Fraction(record.months_unemployed, record.months_eligible))
    else:
        r1 = RuleResult(prop, "consistency/unemployment", None,
                        "no eligible workforce months on record")
    adult_years = record.age_years - record.legal_adult_age
    if adult_years > 0:
        r2 = RuleResult(prop, "consistency/offenses",
                        Fraction(record.criminal_offenses_known, adult_years))
    else:
        r2 = RuleResult(prop, "consistency/offenses", None,
                        "applicant not beyond the legal adult age")
    if record.past_employer_count > 0:
        flagged = record.reference_count(Polarity.NEUTRAL, Polarity.NEGATIVE)
        r3 = RuleResult(prop, "consistency/references",
                        Fraction(flagged, record.past_employer_count))
    else:
        r3 = RuleResult(prop, "consistency/references", None, "no past employers")
    return r1, r2, r3


def consistency_score(record: ApplicantRecord) -> RuleResult:
    """Average of the defined consistency ratios; excluded ratios are reported."""
    ratios = consistency_ratios(record)
    defined = [r.value for r in ratios if r.defined]
    excluded = tuple((r.rule_id, r.undefined_reason) for r in ratios if not r.defined)
    if not defined:
        return RuleResult(TrustProperty.CONSISTENCY, "consistency", None,
                          "all three consistency ratios undefined", excluded)
    average = sum(defined, Fraction(0)) / len(defined)
    return RuleResult(TrustProperty.CONSISTENCY, "consistency", average, None, excluded)


def porosity_rule(record: ApplicantRecord) -> RuleResult:
    """Community employees divided by the community population."""
    if record.community_population == 0:
        return RuleResult(TrustProperty.POROSITY, "porosity/community", None,
                          "community population not recorded")
    return RuleResult(TrustProperty.POROSITY, "porosity/community",
                      Fraction(record.employees_in_community, record.community_population))


def unmonitored_hours_rule(
    record: ApplicantRecord, property: TrustProperty = TrustProperty.SUBJUGATION
) -> RuleResult:
    """Hours working alone, unassisted, unmonitored per working hour.

    OSSTMM does not name the property this rule instantiates; it is filed
    under Subjugation by default and the assignment is configurable.
    """
    if record.working_hours_per_day == 0:
        return RuleResult(property, "subjugation/unmonitored-hours", None,
                          "no working hours recorded")
    return RuleResult(property, "subjugation/unmonitored-hours",
                      record.hours_alone_per_day / record.working_hours_per_day)


@dataclass(frozen=True, slots=True)
class RatioRule:
    """Declarative extra rule: one record field divided by another."""

    rule_id: str
    property: TrustProperty
    numerator: str
    denominator: str

    def evaluate(self, record: ApplicantRecord) -> RuleResult:
        for name in (self.numerator, self.denominator):
            if not any(f.name == name for f in fields(ApplicantRecord)):
                raise DomainError(f"rule {self.rule_id!r}: unknown record field {name!r}")
        den = Fraction(getattr(record, self.denominator))
        if den == 0:
            return RuleResult(self.property, self.rule_id, None,
                              f"{self.denominator} is zero")
        return RuleResult(self.property, self.rule_id,
                          Fraction(getattr(record, self.numerator)) / den)


RuleFn = Callable[[ApplicantRecord], RuleResult]

#: The rules quoted in OSSTMM v3 and built in here.
DEFAULT_RULES: tuple[RuleFn, ...] = (
    consistency_score,
    porosity_rule,
    unmonitored_hours_rule,
)


def evaluate_rules(
    record: ApplicantRecord,
    rules: Sequence[Union[RuleFn, RatioRule]] = DEFAULT_RULES,
) -> list[RuleResult]:
    out = []
    for rule in rules:
        if isinstance(rule, RatioRule):
            out.append(rule.evaluate(record))
        else:
            out.append(rule(record))
    return out


def trust_combine(results: Iterable[RuleResult], mode: str = "average") -> TrustScore:
    """Group results per property (averaging within a property), then combine
    the defined per-property values under ``average``, ``sum`` or ``max``."""
    if mode not in COMBINE_MODES:
        raise DomainError(f"unknown mode {mode!r}; expected one of {', '.join(COMBINE_MODES)}")
    results = list(results)
    groups: dict[TrustProperty, list[RuleResult]] = {}
    for result in results:
        groups.setdefault(result.property, []).append(result)

    per_property: dict[TrustProperty, Fraction | None] = {}
    reasons: list[tuple[str, str]] = []
    for prop in TrustProperty:
        if prop not in groups:
            continue
        defined = [r.value for r in groups[prop] if r.defined]
        for r in groups[prop]:
            if not r.defined:
                reasons.append((r.rule_id, r.undefined_reason or ""))
        per_property[prop] = (
            sum(defined, Fraction(0)) / len(defined) if defined else None
        )

    values = [v for v in per_property.values() if v is not None]
    if not values:
        raise UndefinedTrustError("every supplied rule result is undefined")
    if mode == "average":
        combined = sum(values, Fraction(0)) / len(values)
    elif mode == "sum":
        combined = sum(values, Fraction(0))
    else:
        combined = max(values)
    return TrustScore(
        per_property=per_property,
        combined=combined,
        mode=mode,
        undefined_reasons=tuple(reasons),
    )


def score_applicant(
    record: ApplicantRecord,
    mode: str = "average",
    extra_rules: Sequence[Union[RuleFn, RatioRule]] = (),
) -> tuple[list[RuleResult], TrustScore]:
    """Evaluate the built-in rules (plus any extra) and combine them."""
    results = evaluate_rules(record, tuple(DEFAULT_RULES) + tuple(extra_rules))
    return results, trust_combine(results, mode)


def ratios_equal(a: Rational, b: Rational, tolerance: float = 0.0) -> bool:
    """Compare two ratios exactly (tolerance 0) or within an absolute tolerance."""
    a, b = Fraction(a), Fraction(b)
    if tolerance == 0:
        return a == b
    return float(abs(a - b)) <= tolerance
