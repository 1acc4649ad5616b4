"""Run the executable critique and print each finding.

Four families of checks: control permutations the score cannot see,
exhaustive small-instance score collisions, the two incompatible printed
forms of the final formula, and trust aggregation reversals.
"""

from ravkit import (
    ControlClass,
    collision_search,
    cross_class_counterexample,
    formula_discrepancy_demo,
    permutation_demo,
    render_findings,
    toy_scope,
    trust_aggregation_demo,
    trust_equivalence_demo,
)

findings = [
    permutation_demo(toy_scope(), ControlClass.AUTHENTICATION, ControlClass.CONTINUITY),
    cross_class_counterexample(),
    formula_discrepancy_demo(),
    trust_aggregation_demo(),
    trust_equivalence_demo(),
]
findings += collision_search(bounds=2, epsilon=1e-9, seed=0, max_findings=3)

for finding in findings:
    print(f"[{finding.kind}] verdict={finding.verdict}")
    print(f"  {finding.narrative}")
    print()

print("serialized findings document (ravkit-finding/1):")
print(render_findings(findings).decode()[:400] + "...")
