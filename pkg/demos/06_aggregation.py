"""Combine scopes: an Internet test and an intranet test of one perimeter.

Aggregation sums targets, controls, and limitations component-wise into a
single scope scored like any other (50 + 100 targets become one
150-target calculation).
"""

from ravkit import (
    ControlCounts,
    LimitationCounts,
    PorosityCounts,
    Scope,
    actual_security,
    aggregate_scopes,
)

internet = Scope(
    id="perimeter-internet",
    channel="data-network",
    vector="internet",
    index="ipv4",
    porosity=PorosityCounts(visibility=50, access=10, trust=0),
    controls=ControlCounts(authentication=5, alarm=2),
    limitations=LimitationCounts(vulnerabilities=2, exposures=1),
)
intranet = Scope(
    id="perimeter-intranet",
    channel="data-network",
    vector="intranet",
    index="mac",
    porosity=PorosityCounts(visibility=100, access=20, trust=5),
    controls=ControlCounts(authentication=3, confidentiality=1),
    limitations=LimitationCounts(weaknesses=4, concerns=2),
)

for scope in (internet, intranet):
    b = actual_security(scope)
    print(f"{scope.id:<22} targets={scope.porosity.visibility:>3}  "
          f"actsec={b.actsec:9.4f}")

combined = aggregate_scopes([internet, intranet])
b = actual_security(combined)
print(f"{combined.id:<22} targets={combined.porosity.visibility:>3}  "
      f"actsec={b.actsec:9.4f}")
print()
print(f"aggregate porosity: {combined.porosity}")
print(f"aggregate controls: authentication={combined.controls.authentication}, "
      f"alarm={combined.controls.alarm}, confidentiality={combined.controls.confidentiality}")
print(f"aggregate limitations: {combined.limitations}")
