"""A guided tour of the screening operators and the vectors they produce.

Everything here is exact rational (with a tracked sqrt(2) factor on the odd
side), so every "==" printed below is literal equality of coefficient
dictionaries, not a numerical comparison.
"""

from fractions import Fraction as F

from shvkernel.freefield import FreeFieldRealization
from shvkernel.verma import pr_to_hw, singular_vectors

R = FreeFieldRealization()  # central values cL = 11/2, cLa = 2/3
r = F(1, 3)

print("== the odd screening charge produces the first singular vector ==")
for p in (1, 3):
    built = R.build_singular_odd(p, r)
    image = R.screening_q(R.vacuum_vector(p, r - F(1, 2))).scale(-R.cLa).scale_sqrt2()
    print(f"label p={p}: explicit sum == charge image: {built == image}")
    print(f"  vector ({len(built.terms)} terms): {built.to_text()}")

print()
print("== the long screening produces the subsingular vector ==")
for p in (1, 3):
    built = R.build_subsingular_odd(p, r)
    image = R.screening_g(R.vacuum_vector(p, r - 1))
    print(f"label p={p}: explicit sum == long-screening image: {built == image}")

print()
print("== twisted long screening at even labels ==")
for p in (2, 4):
    built = R.build_singular_even(p, F(1, 2))
    image = R.screening_g(R.vacuum_vector(p, F(1, 2) - 1), twisted=True)
    print(f"label p={p}: explicit sum == twisted image: {built == image}")

print()
print("== the half-mode links the subsingular vector to the singular one ==")
for p in (1, 3):
    w1 = R.family_vector(p, r, 1, "w")
    u0 = R.family_vector(p, r, 0, "u")
    linked = R.generator_mode("G", F(p, 2), w1) == u0.scale_sqrt2()
    print(f"label p={p}: G({p}/2) w(1) == sqrt2 * u(0): {linked}")

print()
print("== the raising-kernel detector finds the same vectors ==")
for p in (1, 2):
    hw = pr_to_hw(p, r if p % 2 else F(1, 2))
    degree = F(p, 2) if p % 2 else F(p)
    found = singular_vectors(hw, degree)
    print(f"label p={p}: detected at degree {degree}: {[v.to_text() for v in found]}")
