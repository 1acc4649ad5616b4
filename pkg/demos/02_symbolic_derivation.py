"""Rebuild the score symbolically: counts become formal unit variables.

The visible host carries unit h, the open port unit p, the login control
unit l.  The pipeline then produces one exact expression whose evaluation
at h = p = l = 1 reproduces the numeric score to the last bit of the
rational intermediates.
"""

from fractions import Fraction

from ravkit import actual_security, symbolic_breakdown, toy_scope

units = {"visibility": "h", "access": "p", "authentication": "l"}
sb = symbolic_breakdown(toy_scope(), units)

print("porosity atom argument:   ", sb.opsec_argument.render())
print("controls atom argument:   ", sb.controls_argument.render())
print()
print("limitation atom argument (canonical, reduced over (h+p)^4):")
print("  ", sb.seclim_argument.render())
print()
print("full score:")
print("  ", sb.score.render())
print()

at_units = sb.score.evaluate({"h": 1, "p": 1, "l": 1})
numeric = actual_security(toy_scope()).actsec
print(f"evaluated at h=p=l=1: {at_units:.9f}")
print(f"numeric pipeline:     {numeric:.9f}")
assert abs(at_units - numeric) <= 1e-9 * max(1.0, abs(numeric))

# The limitation argument is exact: at unit values it is 1 + 100*(176121/400).
assert sb.seclim_argument.evaluate({"h": 1, "p": 1, "l": 1}) == Fraction(176125, 4)

# Doubling the visible hosts is the same as counting two of them.
doubled = sb.score.evaluate({"h": 2, "p": 1, "l": 1})
print(f"at h=2 (two hosts):   {doubled:.9f}")
