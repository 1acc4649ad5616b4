"""Walk the rav pipeline through the classic single-host login service.

One host is visible and answers on one port; a login requirement is the
only control in place; the assessment recorded one limitation of each of
the five categories.  Every stage below is exact rational arithmetic until
the final logarithms.
"""

from fractions import Fraction

from ravkit import (
    ControlClass,
    ControlCounts,
    LimitationCounts,
    PorosityCounts,
    Scope,
    actual_security,
)

scope = Scope(
    id="login-service",
    channel="data-network",
    vector="internet",
    index="ipv4",
    porosity=PorosityCounts(visibility=1, access=1, trust=0),
    controls=ControlCounts(authentication=1),
    limitations=LimitationCounts(1, 1, 1, 1, 1),
)

b = actual_security(scope)

print("porosity: every pore counts against the scope")
print(f"  opsec_sum  = {b.opsec_sum}  (1 host + 1 open port)")
print(f"  opsec_base = ln(1 + 100*{b.opsec_sum})^2 = {b.opsec_base:.6f}")
print()
print("controls: ten classes, each worth a tenth of a pore")
for cls in ControlClass:
    print(f"  missing {cls.value:<15} = {b.mc_per_class[cls]}")
print(f"  mc_sum = {b.mc_sum}  (class A {b.mc_class_a}, class B {b.mc_class_b})")
print(f"  fc_base = ln(1 + 10*{b.lc_sum})^2 = {b.fc_base:.6f}")
print()
print("limitations: weights grow with porosity and missing controls")
for name in ("vulnerabilities", "weaknesses", "concerns", "exposures", "anomalies"):
    w = b.weights.for_category(name)
    print(f"  {name:<15} weight {w} = {float(w):.4f}")
print(f"  seclim_sum  = {b.seclim_sum} = {float(b.seclim_sum)}")
print(f"  seclim_base = {b.seclim_base:.6f}")
print()
print(f"actual security = {b.actsec:.6f}")
print()
print("The sentence 'telnet is open' tells an engineer what to fix;")
print(f"the number {b.actsec:.2f} does not.  The full breakdown above is why")
print("reports in this package always echo their inputs.")

# Sanity anchor: an empty scope is a perfect 100, exactly.
assert actual_security(Scope(id="empty")).actsec == 100.0
assert b.seclim_sum == Fraction(176121, 400)
