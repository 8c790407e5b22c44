"""Lexical colors on M_2, the induced adjacency table for k=4, and S0/S1."""

from middlelevels.lexical import cat_table, delta_notation, lexical_colors, s0_sequence, s1_sequence, sequence_blocks
from middlelevels.midlevels import necklaces

k = 2
print("weight-2 necklaces of length 5, zero position -> color:")
for c in necklaces(k, k):
    print(f"  {c}  {lexical_colors(c.word, k)}  delta {delta_notation(c.word, k)}")

print("\ncolored adjacency table, k=4 (columns: color 4 down to 0):")
print(cat_table(4).to_text())

print("S0:", "; ".join(" ".join(map(str, b)) for b in sequence_blocks(s0_sequence(14))))
print("S1:", "; ".join(" ".join(map(str, b)) for b in sequence_blocks(s1_sequence(14))))
