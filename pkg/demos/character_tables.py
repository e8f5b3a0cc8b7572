"""Graded dimension tables: Verma modules, their simple quotients, and the
determinant vanishing loci that explain the difference.

The simple dimensions come from an exact Gram-matrix rank at each degree; the
character side comes from the closed-form q-series.  The two columns agreeing
is the point.
"""

from fractions import Fraction as F

from shvkernel.qchar import char_simple, char_verma
from shvkernel.verma import det_vanishing_check, pr_to_hw, simple_graded_dim

degrees = [F(t, 2) for t in range(9)]
verma = char_verma(F(4))

print("degree:        " + "  ".join(f"{str(d):>4}" for d in degrees))
print("Verma dims:    " + "  ".join(f"{verma.coefficient(d):>4}" for d in degrees))
print()

for p in (1, 2, 3, -1):
    hw = pr_to_hw(p, F(5, 7))
    ranks = [simple_graded_dim(hw, d) for d in degrees]
    series = char_simple(p, F(4))
    predicted = [series.coefficient(d) for d in degrees]
    tag = f"p={p:+d}"
    print(f"{tag} rank:      " + "  ".join(f"{n:>4}" for n in ranks))
    print(f"{tag} character: " + "  ".join(f"{n:>4}" for n in predicted))
    print(f"{tag} match: {ranks == predicted}")
    print()

print("== where the Gram determinant vanishes (symbolic in the label) ==")
level = F(1, 2)
while level <= 2:
    result = det_vanishing_check(level)
    print(
        f"level {str(level):>3}: size {result['gram_size']:>2}, "
        f"roots {result['computed_roots']} (predicted {result['predicted_roots']}, "
        f"match={result['match']})"
    )
    level += F(1, 2)
