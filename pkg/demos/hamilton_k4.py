"""Build a Hamilton cycle of M_4 from the color-0/1 two-factor and check it."""

from middlelevels.hamilton import build_hamilton, cycle_length_report, label_cycles, verify_hamilton
from middlelevels.midlevels import word_to_str

K = 4
res = build_hamilton(K)

print(f"two-factor of M_{K}: {len(res.decomposition.cycles)} cycles")
for lab, row in zip(label_cycles(res.decomposition), cycle_length_report(res.decomposition)):
    print(f"  C{lab.index}: length {lab.length:>3}  class {lab.plane_class}  xi {lab.xi}  symmetry {row['symmetry']}")

print(f"\n{len(res.hexagons)} gluing hexagons found, {len(res.chosen)} chosen:")
for hx in res.chosen:
    print(f"  C{hx.host} -> C{hx.target}  " + " ".join(word_to_str(v, 2 * K + 1) for v in hx.vertices))

cert = verify_hamilton(K, res.cycle)
print(f"\nHamilton cycle of length {cert.length} verified; first steps:")
for w in res.cycle[:6]:
    print("  " + word_to_str(w, 2 * K + 1))
