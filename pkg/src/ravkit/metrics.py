"""Exact rav (Actual Security) pipeline over porosity, control, and limitation counts.

The score is computed in three stages, all in exact rational arithmetic up to
the final logarithms:

1. Porosity: ``opsec_sum = visibility + access + trust``.
2. Controls: per-class shortfalls ``MC = max(opsec_sum - LC, 0)`` against the
   ten control classes, grouped into meta-classes A and B.
3. Limitations: five weights derived from porosity and missing controls, then
   ``seclim_sum = sum(count * weight**2)`` over the five limitation categories.

Each of the three sections is squashed through ``ln(1 + scale * x)**2``
(scale 100 for porosity and limitations, 10 for the control sum) and combined
into the final polynomial:

    actsec = S*((A - F)/100 - 1) - (F + 100)*A/100 + F + 100

with ``A`` the porosity base, ``F`` the control base and ``S`` the limitation
base.  An empty scope scores exactly 100; floating point enters only inside
:func:`base_value`.

All values are immutable and all functions are pure, so concurrent use on
independent data is safe.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import DomainError, UndefinedWeightError

Rational = Union[int, Fraction]

#: The five scope channels plus the synthetic label given to merged scopes.
CHANNELS = ("human", "physical", "wireless", "telecom", "data-network")
AGGREGATE_CHANNEL = "aggregate"

#: The five limitation categories, in pipeline order.
LIMITATION_CATEGORIES = (
    "vulnerabilities",
    "weaknesses",
    "concerns",
    "exposures",
    "anomalies",
)


class ControlClass(enum.Enum):
    """The ten loss-control classes, split into meta-classes A and B."""

    AUTHENTICATION = "authentication"
    INDEMNIFICATION = "indemnification"
    RESILIENCE = "resilience"
    SUBJUGATION = "subjugation"
    CONTINUITY = "continuity"
    NON_REPUDIATION = "non-repudiation"
    INTEGRITY = "integrity"
    PRIVACY = "privacy"
    CONFIDENTIALITY = "confidentiality"
    ALARM = "alarm"

    @property
    def abbreviation(self) -> str:
        return _ABBREVIATIONS[self]

    @property
    def meta_class(self) -> str:
        return "A" if self in META_CLASS_A else "B"


_ABBREVIATIONS = {
    ControlClass.AUTHENTICATION: "Au",
    ControlClass.INDEMNIFICATION: "Id",
    ControlClass.RESILIENCE: "Re",
    ControlClass.SUBJUGATION: "Su",
    ControlClass.CONTINUITY: "Ct",
    ControlClass.NON_REPUDIATION: "NR",
    ControlClass.INTEGRITY: "It",
    ControlClass.PRIVACY: "Pr",
    ControlClass.CONFIDENTIALITY: "Cf",
    ControlClass.ALARM: "Al",
}

META_CLASS_A = frozenset(
    {
        ControlClass.AUTHENTICATION,
        ControlClass.INDEMNIFICATION,
        ControlClass.RESILIENCE,
        ControlClass.SUBJUGATION,
        ControlClass.CONTINUITY,
    }
)
META_CLASS_B = frozenset(set(ControlClass) - META_CLASS_A)


def _check_count(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DomainError(f"{name} must be an integer count, got {value!r}")
    if value < 0:
        raise DomainError(f"{name} must be >= 0, got {value}")


@dataclass(frozen=True, slots=True)
class PorosityCounts:
    """Visibility, access, and trust counts of one scope."""

    visibility: int = 0
    access: int = 0
    trust: int = 0

    def __post_init__(self) -> None:
        for f in fields(self):
            _check_count(f.name, getattr(self, f.name))

    @property
    def total(self) -> int:
        return self.visibility + self.access + self.trust

    def as_dict(self) -> dict[str, int]:
        return {
            "visibility": self.visibility,
            "access": self.access,
            "trust": self.trust,
        }


@dataclass(frozen=True, slots=True)
class ControlCounts:
    """Per-class loss-control counts; absent classes count as zero."""

    authentication: int = 0
    indemnification: int = 0
    resilience: int = 0
    subjugation: int = 0
    continuity: int = 0
    non_repudiation: int = 0
    integrity: int = 0
    privacy: int = 0
    confidentiality: int = 0
    alarm: int = 0

    def __post_init__(self) -> None:
        for f in fields(self):
            _check_count(f.name, getattr(self, f.name))

    def get(self, cls: ControlClass) -> int:
        return getattr(self, cls.value.replace("-", "_"))

    @property
    def total(self) -> int:
        return sum(self.get(cls) for cls in ControlClass)

    def as_dict(self) -> dict[ControlClass, int]:
        return {cls: self.get(cls) for cls in ControlClass}

    @classmethod
    def from_mapping(cls, counts: Mapping[Union[ControlClass, str], int]) -> "ControlCounts":
        kwargs: dict[str, int] = {}
        for key, value in counts.items():
            name = key.value if isinstance(key, ControlClass) else str(key)
            kwargs[name.replace("-", "_")] = value
        return cls(**kwargs)


@dataclass(frozen=True, slots=True)
class LimitationCounts:
    """Counts per limitation category."""

    vulnerabilities: int = 0
    weaknesses: int = 0
    concerns: int = 0
    exposures: int = 0
    anomalies: int = 0

    def __post_init__(self) -> None:
        for f in fields(self):
            _check_count(f.name, getattr(self, f.name))

    @property
    def total(self) -> int:
        return sum(getattr(self, name) for name in LIMITATION_CATEGORIES)

    def as_dict(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in LIMITATION_CATEGORIES}


@dataclass(frozen=True, slots=True)
class Scope:
    """One testable unit: a channel/vector/index with its three count groups.

    A change of channel, vector, or index is a new scope; merged scopes carry
    the synthetic channel label ``"aggregate"``.
    """

    id: str
    channel: str = "data-network"
    vector: str = ""
    index: str = ""
    porosity: PorosityCounts = field(default_factory=PorosityCounts)
    controls: ControlCounts = field(default_factory=ControlCounts)
    limitations: LimitationCounts = field(default_factory=LimitationCounts)

    def __post_init__(self) -> None:
        if not self.id:
            raise DomainError("scope id must be non-empty")
        if self.channel not in CHANNELS and self.channel != AGGREGATE_CHANNEL:
            raise DomainError(
                f"unknown channel {self.channel!r}; expected one of "
                f"{', '.join(CHANNELS)} (or {AGGREGATE_CHANNEL!r})"
            )


@dataclass(frozen=True, slots=True)
class MissingControls:
    """Per-class and grouped control shortfalls, plus the true-control counts."""

    per_class: Mapping[ControlClass, Fraction]
    total: Fraction
    class_a: Fraction
    class_b: Fraction
    true_per_class: Mapping[ControlClass, Fraction]


@dataclass(frozen=True, slots=True)
class Weights:
    """The five limitation weights and the normalized missing-control ratio."""

    vulnerabilities: Fraction
    weaknesses: Fraction
    concerns: Fraction
    exposures: Fraction
    anomalies: Fraction
    mc_vg: Fraction

    def for_category(self, category: str) -> Fraction:
        return getattr(self, category)


@dataclass(frozen=True, slots=True)
class RavBreakdown:
    """Every intermediate of the pipeline plus the final Actual Security value."""

    opsec_sum: Fraction
    opsec_base: float
    lc_sum: Fraction
    mc_per_class: Mapping[ControlClass, Fraction]
    mc_sum: Fraction
    mc_class_a: Fraction
    mc_class_b: Fraction
    mc_vg: Fraction
    tc_per_class: Mapping[ControlClass, Fraction]
    tc_base: float
    fc_base: float
    weights: Weights
    seclim_sum: Fraction
    seclim_base: float
    actsec: float


# ---------------------------------------------------------------------------
# Pipeline stages
# ---------------------------------------------------------------------------


def opsec_sum(porosity: PorosityCounts) -> Fraction:
    """Sum of the three porosity counts (the scope's operational security)."""
    return Fraction(porosity.total)


def base_value(scale: Rational, magnitude: Rational) -> float:
    """``ln(1 + scale*magnitude)**2``; exactly 0 iff ``magnitude`` is 0.

    The argument is assembled in exact arithmetic before the single float
    conversion, so equal rational magnitudes always give bit-identical
    results.
    """
    scale = Fraction(scale)
    magnitude = Fraction(magnitude)
    if scale <= 0:
        raise DomainError(f"scale must be positive, got {scale}")
    if magnitude < 0:
        raise DomainError(f"magnitude must be >= 0, got {magnitude}")
    if magnitude == 0:
        return 0.0
    return math.log(1 + scale * magnitude) ** 2


def missing_controls(opsec: Rational, controls: ControlCounts) -> MissingControls:
    """Per-class shortfalls ``max(opsec - LC, 0)`` and the grouped sums.

    Also returns the true controls ``min(LC, opsec)``: one cannot miss fewer
    than zero controls, nor apply more than the porosity admits.
    """
    opsec = Fraction(opsec)
    if opsec < 0:
        raise DomainError(f"opsec_sum must be >= 0, got {opsec}")
    per_class: dict[ControlClass, Fraction] = {}
    true_per_class: dict[ControlClass, Fraction] = {}
    for cls in ControlClass:
        lc = Fraction(controls.get(cls))
        per_class[cls] = max(opsec - lc, Fraction(0))
        true_per_class[cls] = min(lc, opsec)
    total = sum(per_class.values(), Fraction(0))
    class_a = sum((per_class[c] for c in ControlClass if c in META_CLASS_A), Fraction(0))
    class_b = total - class_a
    return MissingControls(
        per_class=per_class,
        total=total,
        class_a=class_a,
        class_b=class_b,
        true_per_class=true_per_class,
    )


def limitation_weights(
    porosity: PorosityCounts,
    limitations: LimitationCounts,
    opsec: Rational,
    mc_sum: Rational,
    mc_class_a: Rational,
    mc_class_b: Rational,
) -> Weights:
    """The five limitation weights for one scope.

    Vulnerabilities weigh against all missing controls, weaknesses against
    meta-class A, concerns against meta-class B; exposures and anomalies
    weigh the already-weighted first three categories plus the normalized
    missing-control ratio ``mc_vg = mc_sum / (10 * opsec)`` applied to the
    external (visibility+access) and internal (trust) pores respectively.

    Undefined for zero porosity: callers must bypass this stage (the whole
    limitation section is zero only when every limitation count is zero).
    """
    opsec = Fraction(opsec)
    mc_sum = Fraction(mc_sum)
    mc_class_a = Fraction(mc_class_a)
    mc_class_b = Fraction(mc_class_b)
    if opsec == 0:
        raise UndefinedWeightError(
            "limitation weights are undefined for a scope with zero porosity"
        )
    w_v = (opsec + mc_sum) / opsec
    w_w = (opsec + mc_class_a) / opsec
    w_c = (opsec + mc_class_b) / opsec
    mc_vg = mc_sum / (10 * opsec)
    weighted_vwc = (
        limitations.vulnerabilities * w_v
        + limitations.weaknesses * w_w
        + limitations.concerns * w_c
    )
    w_e = ((porosity.visibility + porosity.access) * mc_vg + weighted_vwc) / opsec
    w_a = (porosity.trust * mc_vg + weighted_vwc) / opsec
    return Weights(
        vulnerabilities=w_v,
        weaknesses=w_w,
        concerns=w_c,
        exposures=w_e,
        anomalies=w_a,
        mc_vg=mc_vg,
    )


def security_limitations_sum(limitations: LimitationCounts, weights: Weights) -> Fraction:
    """``sum(count * weight**2)`` over the five limitation categories."""
    return sum(
        (
            Fraction(getattr(limitations, name)) * weights.for_category(name) ** 2
            for name in LIMITATION_CATEGORIES
        ),
        Fraction(0),
    )


_ZERO_WEIGHTS = Weights(*(Fraction(0),) * 6)


def actual_security(scope: Scope) -> RavBreakdown:
    """Run the full pipeline on one scope and return every intermediate.

    Raises :class:`UndefinedWeightError` for a zero-porosity scope with any
    nonzero limitation count.
    """
    opsec = opsec_sum(scope.porosity)
    mc = missing_controls(opsec, scope.controls)
    lc_sum = Fraction(scope.controls.total)

    if opsec == 0:
        if scope.limitations.total != 0:
            raise UndefinedWeightError(
                f"scope {scope.id!r} has zero porosity but nonzero limitations; "
                "limitation weights are undefined"
            )
        weights = _ZERO_WEIGHTS
        seclim = Fraction(0)
    else:
        weights = limitation_weights(
            scope.porosity, scope.limitations, opsec, mc.total, mc.class_a, mc.class_b
        )
        seclim = security_limitations_sum(scope.limitations, weights)

    opsec_base = base_value(100, opsec)
    fc_base = base_value(100, lc_sum / 10)
    # The tc argument is provably >= 0 (each shortfall is capped by opsec);
    # the clamp only guards against future count-type changes.
    tc_base = base_value(100, max(opsec - mc.total / 10, Fraction(0)))
    seclim_base = base_value(100, seclim)

    a, f, s = opsec_base, fc_base, seclim_base
    actsec = s * ((a - f) / 100 - 1) - (f + 100) * a / 100 + f + 100

    return RavBreakdown(
        opsec_sum=opsec,
        opsec_base=opsec_base,
        lc_sum=lc_sum,
        mc_per_class=mc.per_class,
        mc_sum=mc.total,
        mc_class_a=mc.class_a,
        mc_class_b=mc.class_b,
        mc_vg=weights.mc_vg,
        tc_per_class=mc.true_per_class,
        tc_base=tc_base,
        fc_base=fc_base,
        weights=weights,
        seclim_sum=seclim,
        seclim_base=seclim_base,
        actsec=actsec,
    )


def aggregate_scopes(scopes: Sequence[Scope]) -> Scope:
    """Combine scopes by summing all counts component-wise.

    The result carries the synthetic ``"aggregate"`` channel/vector/index
    labels and the joined ids.  Aggregation is associative and commutative
    on counts.
    """
    if not scopes:
        raise DomainError("cannot aggregate an empty list of scopes")
    porosity = PorosityCounts(
        visibility=sum(s.porosity.visibility for s in scopes),
        access=sum(s.porosity.access for s in scopes),
        trust=sum(s.porosity.trust for s in scopes),
    )
    controls = ControlCounts.from_mapping(
        {cls: sum(s.controls.get(cls) for s in scopes) for cls in ControlClass}
    )
    limitations = LimitationCounts(
        **{
            name: sum(getattr(s.limitations, name) for s in scopes)
            for name in LIMITATION_CATEGORIES
        }
    )
    return Scope(
        id="+".join(s.id for s in scopes),
        channel=AGGREGATE_CHANNEL,
        vector=AGGREGATE_CHANNEL,
        index=AGGREGATE_CHANNEL,
        porosity=porosity,
        controls=controls,
        limitations=limitations,
    )


def toy_scope() -> Scope:
    """The single-host login-service worked example: one visible host, one
    open port, one authentication control, one limitation of each category."""
    return Scope(
        id="toy",
        channel="data-network",
        vector="internet",
        index="ipv4",
        porosity=PorosityCounts(visibility=1, access=1, trust=0),
        controls=ControlCounts(authentication=1),
        limitations=LimitationCounts(1, 1, 1, 1, 1),
    )
