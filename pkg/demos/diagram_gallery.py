"""Submodule-generator diagrams of Verma modules at the three kinds of label.

Negative integer labels give plain chains of singular vectors; positive odd
labels interleave singular and subsingular generators; generic labels give a
single node (the module is simple).  Every node and arrow below was computed
from exact Gram kernels and submodule closures, not assumed.
"""

from fractions import Fraction as F

from shvkernel.verma import embedding_diagram

cases = [
    ("negative odd label, half-integer chain", -1, F(1, 3), F(4)),
    ("negative label, even chain", -2, F(3, 4), F(4)),
    ("positive odd label, interleaved", 1, F(1, 3), F(2)),
    ("generic label, simple module", 5, F(1, 3), F(2)),
]

for title, p, r, cap in cases:
    print(f"== {title} (p={p}, up to degree {cap}) ==")
    print(embedding_diagram(p, r, cap).to_text())
    print()
