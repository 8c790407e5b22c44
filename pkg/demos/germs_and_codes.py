"""Walk from k-germs to tree codes and back, then group germs into plane trees."""

from middlelevels.germs import enumerate_germs, format_germ, germ_tree, parent
from middlelevels.treecodec import castle, format_code, plane_classes, theta, uncastle_trace

K = 4

print(f"{K}-germs and their tree codes:")
for m, alpha in enumerate(enumerate_germs(K)):
    up = format_germ(parent(alpha)) if any(alpha) else "-"
    print(f"  {m:>2}  {format_germ(alpha)}  parent {up:<4} code {format_code(castle(alpha))}  theta {theta(alpha)}")

print("\ngerm tree:", germ_tree(K))

print("\nuncastling 04*3*2*1* back to the null germ:")
for code, alpha in uncastle_trace(castle((1, 2, 3))):
    print(f"  {format_code(code)}  {format_germ(alpha)}")

print("\nplane-tree classes (root rotation orbits):")
for label, members in plane_classes(K).items():
    print(f"  {format_code(label)}: {' '.join(format_germ(a) for a in members)}")
