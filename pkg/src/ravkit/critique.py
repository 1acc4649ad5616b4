"""Executable critiques of the rav and Trust calculus.

Each check produces a reproducible :class:`CritiqueFinding` (inputs, scores,
verdict, narrative) rather than prose alone:

* :func:`permutation_demo` swaps two control classes' counts and compares
  Actual Security: within a meta-class the pipeline provably cannot tell
  which control covers a pore ("each control is valued as 10% of a pore",
  OSSTMM v3 ch.4 p.67).
* :func:`collision_search` exhaustively enumerates scope configurations
  within small count bounds and emits pairs with (near-)equal scores that
  differ in porosity or limitation structure, operationalising "the rav
  tells us nothing that we have not previously told the rav".
* :func:`formula_discrepancy_demo` evaluates the two published forms of the
  final Actual Security combination, which disagree in the sign of the
  control/limitation cross term and in squaring the limitation log.
* :func:`trust_aggregation_demo` exhibits applicant pairs that the
  average-combined consistency rule and a worst-case (max) combination rank
  in opposite order; :func:`trust_equivalence_demo` reproduces the claimed
  1/32 equivalence of a prior-conviction record and a small-town-community
  record, which holds only up to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from typing import Any, Mapping, Sequence

import numpy as np

from .errors import DomainError
from .ingest import scope_to_obj
from .metrics import (
    ControlClass,
    ControlCounts,
    LimitationCounts,
    PorosityCounts,
    RavBreakdown,
    Scope,
    actual_security,
    toy_scope,
)
from .trust import (
    ApplicantRecord,
    Polarity,
    Reference,
    consistency_ratios,
    consistency_score,
    porosity_rule,
)

_META_A = tuple(cls for cls in ControlClass if cls.meta_class == "A")
_META_B = tuple(cls for cls in ControlClass if cls.meta_class == "B")


@dataclass(frozen=True, slots=True)
class CritiqueFinding:
    """One reproducible demonstration: inputs, scores, verdict, explanation."""

    kind: str
    inputs: Mapping[str, Any]
    scores: Mapping[str, Any]
    verdict: str
    narrative: str

    def __post_init__(self) -> None:
        if self.verdict not in ("holds", "violated"):
            raise DomainError(f"verdict must be holds|violated, got {self.verdict!r}")

    def to_obj(self) -> dict:
        return {
            "kind": self.kind,
            "inputs": dict(self.inputs),
            "scores": dict(self.scores),
            "verdict": self.verdict,
            "narrative": self.narrative,
        }


# ---------------------------------------------------------------------------
# Control permutations
# ---------------------------------------------------------------------------

_RATIONAL_FIELDS = (
    "opsec_sum",
    "lc_sum",
    "mc_sum",
    "mc_class_a",
    "mc_class_b",
    "mc_vg",
    "seclim_sum",
)


def rational_signature(breakdown: RavBreakdown) -> tuple:
    """The aggregate exact-rational intermediates that determine the score."""
    return tuple(getattr(breakdown, name) for name in _RATIONAL_FIELDS) + (
        breakdown.weights,
    )


def swap_control_counts(scope: Scope, source: ControlClass, target: ControlClass) -> Scope:
    counts = {cls: scope.controls.get(cls) for cls in ControlClass}
    counts[source], counts[target] = counts[target], counts[source]
    return replace(scope, controls=ControlCounts.from_mapping(counts))


def permutation_demo(
    scope: Scope, source: ControlClass, target: ControlClass
) -> CritiqueFinding:
    """Swap two classes' counts and compare Actual Security.

    Within one meta-class (or when the two counts are equal) the score is
    guaranteed unchanged; across meta-classes the delta is whatever direct
    recomputation says it is, which can be zero as well: the pipeline sees
    controls only through four sums.
    """
    if source == target:
        raise DomainError("source and target control classes must differ")
    before = actual_security(scope)
    swapped_scope = swap_control_counts(scope, source, target)
    after = actual_security(swapped_scope)
    same_meta = source.meta_class == target.meta_class
    equal_counts = scope.controls.get(source) == scope.controls.get(target)
    rational_equal = rational_signature(before) == rational_signature(after)
    holds = exact_scores_equal(before, after) and before.actsec == after.actsec
    delta = after.actsec - before.actsec
    if same_meta:
        detail = "the classes share a meta-class, so invariance is structural"
    elif equal_counts:
        detail = "the swapped counts are equal, so the scope is unchanged"
    elif holds:
        detail = (
            "the swap crosses meta-classes yet the score is unchanged: the "
            "pipeline only sees the missing-control sums, and this swap "
            "permutes them into the same weight multiset"
        )
    else:
        detail = "the swap crosses meta-classes and moves the class-A/class-B split"
    narrative = (
        f"OSSTMM v3 weighs every control class identically ('Each control is "
        f"valued as 10% of a pore', ch.4 p.67). Swapping the "
        f"{source.value} and {target.value} counts "
        f"{'leaves Actual Security unchanged' if holds else 'changes Actual Security'}"
        f" on scope {scope.id!r}: {detail}. A score that cannot distinguish "
        f"which protection is present tells the reader less than the input "
        f"counts themselves."
    )
    return CritiqueFinding(
        kind="control-permutation",
        inputs={
            "scope": scope_to_obj(scope),
            "swapped_scope": scope_to_obj(swapped_scope),
            "source": source.value,
            "target": target.value,
        },
        scores={
            "actsec_before": before.actsec,
            "actsec_after": after.actsec,
            "delta": repr(delta),
            "rational_intermediates_identical": rational_equal,
            "same_meta_class": same_meta,
            "invariance_structural": same_meta or equal_counts,
        },
        verdict="holds" if holds else "violated",
        narrative=narrative,
    )


def cross_class_counterexample(limit: int = 3) -> CritiqueFinding:
    """Search small scopes for a cross-meta-class swap that changes the score.

    Deterministic: first violating instance in enumeration order wins.
    """
    for pv, pa in ((1, 1), (1, 2), (2, 1), (2, 2)):
        for au in range(limit + 1):
            for extra in range(limit + 1):
                controls = ControlCounts.from_mapping(
                    {ControlClass.AUTHENTICATION: au, ControlClass.INDEMNIFICATION: extra}
                )
                scope = Scope(
                    id=f"cross-{pv}{pa}-{au}{extra}",
                    porosity=PorosityCounts(pv, pa, 0),
                    controls=controls,
                    limitations=LimitationCounts(1, 1, 1, 1, 1),
                )
                for source in _META_A:
                    for target in _META_B:
                        if scope.controls.get(source) == scope.controls.get(target):
                            continue
                        finding = permutation_demo(scope, source, target)
                        if finding.verdict == "violated":
                            return finding
    raise DomainError(f"no cross-meta-class counterexample found with counts <= {limit}")


# ---------------------------------------------------------------------------
# Score collisions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class CollisionBounds:
    """Per-count maxima for the exhaustive enumeration."""

    porosity: int = 3
    control: int = 3
    limitation: int = 3

    @classmethod
    def coerce(cls, bounds: "CollisionBounds | int") -> "CollisionBounds":
        if isinstance(bounds, CollisionBounds):
            return bounds
        b = int(bounds)
        if b < 0:
            raise DomainError(f"bounds must be >= 0, got {b}")
        return cls(porosity=b, control=b, limitation=b)

    def to_obj(self) -> dict:
        return {
            "porosity": self.porosity,
            "control": self.control,
            "limitation": self.limitation,
        }


def _control_signatures(bound: int, opsec: int) -> dict[tuple[int, int], tuple[int, ...]]:
    """Distinct (lc_sum, mc_sum) pairs achievable by one meta-class, with a
    witness count multiset each."""
    seen: dict[tuple[int, int], tuple[int, ...]] = {}
    for multiset in combinations_with_replacement(range(bound + 1), 5):
        lc = sum(multiset)
        mc = sum(max(opsec - c, 0) for c in multiset)
        seen.setdefault((lc, mc), multiset)
    return seen


@dataclass(frozen=True, slots=True)
class _Base:
    pv: int
    pa: int
    pt: int
    splits: tuple[tuple[int, int], ...]
    lc_sum: int
    mc_a: int
    mc_b: int
    witness_a: tuple[int, ...]
    witness_b: tuple[int, ...]


def _base_scope(base: _Base, lim: Sequence[int], scope_id: str, split: int = 0) -> Scope:
    pv, pa = base.splits[split]
    counts: dict[ControlClass, int] = {}
    for cls, count in zip(_META_A, base.witness_a):
        counts[cls] = count
    for cls, count in zip(_META_B, base.witness_b):
        counts[cls] = count
    return Scope(
        id=scope_id,
        porosity=PorosityCounts(pv, pa, base.pt),
        controls=ControlCounts.from_mapping(counts),
        limitations=LimitationCounts(*(int(x) for x in lim)),
    )


def exact_scores_equal(a: RavBreakdown, b: RavBreakdown) -> bool:
    """Exact collision: the rational triple feeding the logs is identical."""
    return (
        a.opsec_sum == b.opsec_sum
        and a.lc_sum == b.lc_sum
        and a.seclim_sum == b.seclim_sum
    )


def collision_search(
    bounds: "CollisionBounds | int" = 3,
    epsilon: float = 1e-9,
    seed: int = 0,
    *,
    max_findings: int = 25,
    include_permutation_pairs: bool = False,
) -> list[CritiqueFinding]:
    """Exhaustively enumerate scopes within bounds and report score collisions.

    States are enumerated up to within-meta-class control permutations and
    control layouts sharing the same (lc_sum, missing-A, missing-B) sums;
    collapsing those loses no reportable pair because a finding must differ
    in porosity or limitation structure, both of which stay explicit.  Pairs
    differing only in controls are never reported.  ``epsilon`` is the score
    tolerance (0 means exactly-equal rational intermediates).  The search is
    exhaustive and deterministic; ``seed`` does not change the result and is
    recorded for reproducibility of the emitted document.
    """
    b = CollisionBounds.coerce(bounds)
    if epsilon < 0:
        raise DomainError(f"epsilon must be >= 0, got {epsilon}")

    lim_tuples = np.array(
        list(product(range(b.limitation + 1), repeat=5)), dtype=np.int64
    )
    n_lims = len(lim_tuples)
    nv, nw, nc, ne, na = (lim_tuples[:, i] for i in range(5))

    bases: list[_Base] = []
    actsec_chunks: list[np.ndarray] = []
    base_id_chunks: list[np.ndarray] = []
    lim_id_chunks: list[np.ndarray] = []

    signature_cache: dict[int, dict[tuple[int, int], tuple[int, ...]]] = {}
    for pt in range(b.porosity + 1):
        for pvpa in range(2 * b.porosity + 1):
            s = pvpa + pt
            if pvpa == 0 and pt == 0 and s == 0:
                splits = ((0, 0),)
            else:
                splits = tuple(
                    (pv, pvpa - pv)
                    for pv in range(max(0, pvpa - b.porosity), min(pvpa, b.porosity) + 1)
                )
            if s not in signature_cache:
                signature_cache[s] = _control_signatures(b.control, s)
            sigs = signature_cache[s]
            triples: dict[tuple[int, int, int], tuple[tuple[int, ...], tuple[int, ...]]] = {}
            for (lca, mca), wa in sigs.items():
                for (lcb, mcb), wb in sigs.items():
                    triples.setdefault((lca + lcb, mca, mcb), (wa, wb))

            first_base_id = len(bases)
            trip_items = sorted(triples.items())
            for (lc, mca, mcb), (wa, wb) in trip_items:
                bases.append(
                    _Base(
                        pv=splits[0][0],
                        pa=splits[0][1],
                        pt=pt,
                        splits=splits,
                        lc_sum=lc,
                        mc_a=mca,
                        mc_b=mcb,
                        witness_a=wa,
                        witness_b=wb,
                    )
                )
            t = len(trip_items)
            lc_arr = np.array([item[0][0] for item in trip_items], dtype=np.int64)
            f_arr = np.log1p(10.0 * lc_arr) ** 2

            if s == 0:
                # Zero porosity: only the all-zero limitation tuple is valid.
                actsec = f_arr + 100.0
                actsec_chunks.append(actsec)
                base_id_chunks.append(
                    np.arange(first_base_id, first_base_id + t, dtype=np.int32)
                )
                lim_id_chunks.append(np.zeros(t, dtype=np.int32))
                continue

            mca_arr = np.array([item[0][1] for item in trip_items], dtype=np.int64)
            mcb_arr = np.array([item[0][2] for item in trip_items], dtype=np.int64)
            mcs_arr = mca_arr + mcb_arr
            # Integer weights over the denominator 10*s**2 (squared below).
            wv = 10 * s * (s + mcs_arr)
            ww = 10 * s * (s + mca_arr)
            wc = 10 * s * (s + mcb_arr)
            u10 = 10 * (
                nv[None, :] * (s + mcs_arr)[:, None]
                + nw[None, :] * (s + mca_arr)[:, None]
                + nc[None, :] * (s + mcb_arr)[:, None]
            )
            we = pvpa * mcs_arr[:, None] + u10
            wa_i = pt * mcs_arr[:, None] + u10
            seclim_num = (
                nv[None, :] * (wv**2)[:, None]
                + nw[None, :] * (ww**2)[:, None]
                + nc[None, :] * (wc**2)[:, None]
                + ne[None, :] * we**2
                + na[None, :] * wa_i**2
            )
            d2 = float((10 * s * s) ** 2)
            a_base = math.log1p(100.0 * s) ** 2
            s_base = np.log1p(100.0 * seclim_num / d2) ** 2
            f_col = f_arr[:, None]
            actsec = (
                s_base * ((a_base - f_col) / 100.0 - 1.0)
                - (f_col + 100.0) * a_base / 100.0
                + f_col
                + 100.0
            )
            actsec_chunks.append(actsec.reshape(-1))
            base_id_chunks.append(
                np.repeat(
                    np.arange(first_base_id, first_base_id + t, dtype=np.int32), n_lims
                )
            )
            lim_id_chunks.append(np.tile(np.arange(n_lims, dtype=np.int32), t))

    actsec_all = np.concatenate(actsec_chunks)
    base_ids = np.concatenate(base_id_chunks)
    lim_ids = np.concatenate(lim_id_chunks)

    findings: list[CritiqueFinding] = []

    def emit_pair(
        scope_a: Scope, scope_b: Scope, note: str
    ) -> bool:
        """Verify a candidate pair with the exact pipeline; emit if it collides."""
        ba = actual_security(scope_a)
        bb = actual_security(scope_b)
        exact = exact_scores_equal(ba, bb)
        delta = abs(bb.actsec - ba.actsec)
        if epsilon == 0:
            if not exact:
                return False
        elif not exact and delta > epsilon:
            return False
        findings.append(
            CritiqueFinding(
                kind="score-collision",
                inputs={
                    "scope_a": scope_to_obj(scope_a),
                    "scope_b": scope_to_obj(scope_b),
                    "bounds": b.to_obj(),
                    "epsilon": repr(epsilon),
                    "seed": seed,
                },
                scores={
                    "actsec_a": ba.actsec,
                    "actsec_b": bb.actsec,
                    "delta": repr(delta),
                    "exact": exact,
                },
                verdict="holds",
                narrative=(
                    "Two scopes with different "
                    + note
                    + " receive the same Actual Security"
                    + (" exactly" if exact else f" within {epsilon!r}")
                    + ": the score is not injective in what it claims to "
                    "measure, so it cannot be inverted back to the facts "
                    "that produced it."
                ),
            )
        )
        return True

    # Porosity-split collisions: swapping counts between visibility and
    # access leaves every pipeline quantity identical.
    for base_id, base in enumerate(bases):
        if len(findings) >= max_findings:
            break
        if len(base.splits) >= 2:
            lim = (
                tuple(int(x) for x in lim_tuples[1])
                if (base.pv + base.pa + base.pt) > 0 and n_lims > 1
                else (0, 0, 0, 0, 0)
            )
            scope_a = _base_scope(base, lim, f"split-{base_id}-a", split=0)
            scope_b = _base_scope(base, lim, f"split-{base_id}-b", split=1)
            emit_pair(scope_a, scope_b, "porosity structure")
            break

    # Scan for (near-)equal scores across the whole enumeration.
    order = np.argsort(actsec_all, kind="stable")
    sorted_vals = actsec_all[order]
    scan_eps = epsilon + 1e-10
    close = np.diff(sorted_vals) <= scan_eps
    idx = 0
    n = len(sorted_vals)
    pair_budget = 4096
    while idx < n - 1 and len(findings) < max_findings and pair_budget > 0:
        if not close[idx]:
            idx += 1
            continue
        end = idx + 1
        while end < n - 1 and close[end]:
            end += 1
        window = order[idx : end + 1]
        head = window[0]
        head_base = bases[base_ids[head]]
        head_key = (head_base.pv + head_base.pa, head_base.pt)
        for other in window[1:]:
            pair_budget -= 1
            if pair_budget <= 0 or len(findings) >= max_findings:
                break
            other_base = bases[base_ids[other]]
            other_key = (other_base.pv + other_base.pa, other_base.pt)
            differs_porosity = other_key != head_key
            differs_lim = lim_ids[other] != lim_ids[head]
            if not (differs_porosity or differs_lim):
                continue
            note = "porosity structure" if differs_porosity else "limitation structure"
            tag = len(findings)
            scope_a = _base_scope(head_base, lim_tuples[lim_ids[head]], f"collision-{tag}-a")
            scope_b = _base_scope(other_base, lim_tuples[lim_ids[other]], f"collision-{tag}-b")
            if emit_pair(scope_a, scope_b, note):
                break
        idx = end + 1

    if include_permutation_pairs:
        findings.extend(
            _permutation_pair_findings(bases, lim_tuples, b, epsilon, seed, max_findings)
        )
    return findings


def _permutation_pair_findings(
    bases: Sequence[_Base],
    lim_tuples: np.ndarray,
    bounds: CollisionBounds,
    epsilon: float,
    seed: int,
    max_findings: int,
) -> list[CritiqueFinding]:
    """Within-meta-class permutation pairs, verified as exact collisions."""
    out: list[CritiqueFinding] = []
    for base_id, base in enumerate(bases):
        if len(set(base.witness_a)) < 2:
            continue
        arrangements = sorted(set(permutations(base.witness_a)))
        lim = (0, 0, 0, 0, 0) if base.pv + base.pa + base.pt == 0 else tuple(
            int(x) for x in lim_tuples[min(1, len(lim_tuples) - 1)]
        )
        reference = _base_scope(base, lim, f"perm-{base_id}-0")
        ref_breakdown = actual_security(reference)
        for i, arrangement in enumerate(arrangements[1:], start=1):
            if len(out) >= max_findings:
                return out
            counts = dict(zip(_META_A, arrangement))
            for cls, count in zip(_META_B, base.witness_b):
                counts[cls] = count
            permuted = replace(
                reference,
                id=f"perm-{base_id}-{i}",
                controls=ControlCounts.from_mapping(counts),
            )
            pb = actual_security(permuted)
            exact = exact_scores_equal(ref_breakdown, pb)
            out.append(
                CritiqueFinding(
                    kind="within-class-permutation",
                    inputs={
                        "scope_a": scope_to_obj(reference),
                        "scope_b": scope_to_obj(permuted),
                        "bounds": bounds.to_obj(),
                        "epsilon": repr(epsilon),
                        "seed": seed,
                    },
                    scores={
                        "actsec_a": ref_breakdown.actsec,
                        "actsec_b": pb.actsec,
                        "delta": repr(abs(pb.actsec - ref_breakdown.actsec)),
                        "exact": exact,
                    },
                    verdict="holds" if exact else "violated",
                    narrative=(
                        "Reassigning the same counts to different control "
                        "classes inside one meta-class is an exact score "
                        "collision: the pipeline depends on controls only "
                        "through their sums."
                    ),
                )
            )
        if out:
            return out
    return out


# ---------------------------------------------------------------------------
# Formula discrepancy
# ---------------------------------------------------------------------------


def prose_actual_security(scope: Scope, squared: bool = False) -> float:
    """The running-text variant of the final combination.

    The text writes the limitation term as a single log (``squared=True``
    substitutes the squared form) and flips the sign of the
    controls-times-limitations cross term relative to the expanded formula.
    """
    b = actual_security(scope)
    a, f = b.opsec_base, b.fc_base
    s_lin = math.log(1 + 100 * b.seclim_sum) if b.seclim_sum > 0 else 0.0
    s_term = s_lin**2 if squared else s_lin
    return 100 + f - a - s_term - a * (f - s_term) / 100 + f * s_term / 100


def formula_discrepancy_demo(scope: Scope | None = None) -> CritiqueFinding:
    """Evaluate both published forms of the final combination on one scope."""
    scope = scope or toy_scope()
    b = actual_security(scope)
    figure = b.actsec
    prose_single = prose_actual_security(scope, squared=False)
    prose_squared = prose_actual_security(scope, squared=True)
    divergence = max(abs(figure - prose_single), abs(figure - prose_squared))
    agree = divergence <= 1e-9
    narrative = (
        "OSSTMM v3's worked rav calculation admits two readings: the "
        "running-text formula (single limitation log, positive "
        "controls-times-limitations cross term) and the expanded machine "
        "form (squared limitation log, negative cross term). On scope "
        f"{scope.id!r} they differ by up to {divergence:.3f} rav; only the "
        "expanded form reproduces the published result of roughly -12 for "
        "the single-host login example. A fully-controlled, limitation-free "
        "scope scores 100 - opsec_base**2/100 under that form, not the "
        "promised perfect 100."
    )
    return CritiqueFinding(
        kind="formula-discrepancy",
        inputs={"scope": scope_to_obj(scope)},
        scores={
            "figure_form": figure,
            "prose_single_log": prose_single,
            "prose_log_squared": prose_squared,
            "max_divergence": repr(divergence),
        },
        verdict="holds" if agree else "violated",
        narrative=narrative,
    )


# ---------------------------------------------------------------------------
# Trust aggregation
# ---------------------------------------------------------------------------


def _default_disagreement_record() -> ApplicantRecord:
    # Consistency ratios 1/5, 1/12, 1/4.
    return ApplicantRecord(
        applicant_id="applicant-a",
        months_unemployed=12,
        months_eligible=60,
        criminal_offenses_known=1,
        age_years=30,
        legal_adult_age=18,
        references=(Reference("e1", Polarity.NEUTRAL),),
        past_employer_count=4,
    )


def _uniform_ratio_record(q: Fraction, applicant_id: str) -> ApplicantRecord:
    """A record whose defined consistency ratios all equal ``q``.

    For q <= 1 all three ratios are constructed; otherwise only the
    offenses-per-adult-year ratio (the one not structurally capped at 1).
    """
    if q <= 1:
        refs = tuple(
            Reference(f"e{i}", Polarity.NEUTRAL) for i in range(q.numerator)
        )
        return ApplicantRecord(
            applicant_id=applicant_id,
            months_unemployed=q.numerator,
            months_eligible=q.denominator,
            criminal_offenses_known=q.numerator,
            age_years=18 + q.denominator,
            references=refs,
            past_employer_count=q.denominator,
        )
    return ApplicantRecord(
        applicant_id=applicant_id,
        criminal_offenses_known=q.numerator,
        age_years=18 + q.denominator,
    )


def trust_aggregation_demo(
    record: ApplicantRecord | None = None, max_denominator: int = 24
) -> CritiqueFinding:
    """Search for a record pair ranked oppositely by average and by max.

    The first record's defined consistency ratios give (average, max); any
    uniform-ratio record strictly between them is ranked riskier by the
    average rule and safer by the worst-case rule.
    """
    record = record or _default_disagreement_record()
    ratios = [r.value for r in consistency_ratios(record) if r.defined]
    if len(ratios) < 2 or len(set(ratios)) < 2:
        raise DomainError(
            "need at least two defined, distinct consistency ratios to "
            "demonstrate an aggregation disagreement"
        )
    avg = sum(ratios, Fraction(0)) / len(ratios)
    top = max(ratios)
    between: Fraction | None = None
    for den in range(1, max_denominator + 1):
        num = avg.numerator * den // avg.denominator + 1
        candidate = Fraction(num, den)
        if avg < candidate < top:
            between = candidate
            break
    if between is None:
        raise DomainError(
            f"no rational with denominator <= {max_denominator} lies strictly "
            f"between the average {avg} and the max {top}"
        )
    other = _uniform_ratio_record(between, "applicant-b")
    other_ratios = [r.value for r in consistency_ratios(other) if r.defined]
    other_avg = sum(other_ratios, Fraction(0)) / len(other_ratios)
    other_max = max(other_ratios)

    average_says_other = other_avg > avg
    max_says_first = top > other_max
    disagree = average_says_other and max_says_first
    narrative = (
        "OSSTMM v3's consistency rule averages its three ratios ('Record the "
        "average of these results', ch.5 p.93), where a worst-case reading "
        "of trust would take the max: one bad ratio is one sufficient "
        f"exposure. Applicant A has ratios {', '.join(str(r) for r in ratios)} "
        f"(average {avg}, max {top}); applicant B has uniform ratio {between}. "
        "The average ranks B as the riskier hire while the max ranks A as "
        "the riskier hire, so the published aggregation and the worst-case "
        "one do not merely rescale the metric: they reverse decisions."
    )
    return CritiqueFinding(
        kind="trust-aggregation",
        inputs={
            "applicant_a": {
                "applicant_id": record.applicant_id,
                "consistency_ratios": [str(r) for r in ratios],
            },
            "applicant_b": {
                "applicant_id": other.applicant_id,
                "consistency_ratios": [str(r) for r in other_ratios],
            },
        },
        scores={
            "average_a": str(avg),
            "average_b": str(other_avg),
            "max_a": str(top),
            "max_b": str(other_max),
            "average_ranks_b_riskier": average_says_other,
            "max_ranks_a_riskier": max_says_first,
        },
        verdict="violated" if disagree else "holds",
        narrative=narrative,
    )


def trust_equivalence_demo(tolerance: float = 1e-3) -> CritiqueFinding:
    """Reproduce the claimed 1/32 equivalence of two unrelated records.

    A 50-year-old applicant with one prior conviction scores 1/32 on the
    consistency rule; an applicant sharing a town of 5,000 with 156 other
    employees scores 39/1250 on the community-porosity rule.  The published
    claim that both are 'the same security liability (1/32)' holds only up
    to rounding: exactly, 39/1250 = 0.0312 while 1/32 = 0.03125.
    """
    conviction = ApplicantRecord(
        applicant_id="conviction-case", criminal_offenses_known=1, age_years=50
    )
    community = ApplicantRecord(
        applicant_id="community-case",
        employees_in_community=156,
        community_population=5000,
    )
    r_conviction = consistency_score(conviction)
    r_community = porosity_rule(community)
    assert r_conviction.value is not None and r_community.value is not None
    exact_equal = r_conviction.value == r_community.value
    close = float(abs(r_conviction.value - r_community.value)) <= tolerance
    narrative = (
        "Two applicants with nothing in common - one 50-year-old with a "
        "prior conviction, one living in a small town among 156 colleagues - "
        "are declared the same security liability (1/32). The equality holds "
        f"at tolerance {tolerance:g} but fails exactly (1/32 = 0.03125 vs "
        "39/1250 = 0.0312): the unified trust number equates unrelated "
        "facts by construction."
    )
    return CritiqueFinding(
        kind="trust-equivalence",
        inputs={
            "conviction_case": {"criminal_offenses_known": 1, "age_years": 50},
            "community_case": {
                "employees_in_community": 156,
                "community_population": 5000,
            },
            "tolerance": repr(tolerance),
        },
        scores={
            "consistency_ratio": str(r_conviction.value),
            "community_ratio": str(r_community.value),
            "absolute_difference": str(abs(r_conviction.value - r_community.value)),
            "equal_at_tolerance": close,
            "equal_exactly": exact_equal,
        },
        verdict="holds" if close else "violated",
        narrative=narrative,
    )
