"""Open prism inclusions built as generating trivial cofibrations.

Over simplicial sets truncated at dimension 3, the inclusion
Dn x {e} + (boundary Dn) x D1 -> Dn x D1 is the gtc of the boundary
inclusion with the constant map at vertex e.  We build it three ways and
compare.
"""

from math import comb

from presheaf_workbench import (PresheafContext, boundary, build_gtc, constant_map,
                                find_iso, interval_vertex, open_prism_inclusion,
                                preset_simplex, prism_gtc, yoneda)
from presheaf_workbench.gtc import iso_over

base = preset_simplex(3)
ctx = PresheafContext(base, yoneda(base, "[1]"))


def expected_cells(n, k):
    # k-simplices of the open prism by inclusion and exclusion
    full = comb(n + k + 1, k + 1)
    bd = full - comb(k, n)
    return bd * (k + 2) + full - bd


for n in range(3):
    for eps in (0, 1):
        spec = prism_gtc(ctx, n, eps)
        c = boundary(base, f"[{n}]")
        plain = build_gtc(ctx, c, constant_map(c.target, interval_vertex(ctx, eps)))
        union = open_prism_inclusion(ctx, n, eps)
        counts = [spec.D.sizes[f"[{k}]"] for k in range(4)]
        print(f"j({n},{eps}): cells {counts}",
              "expected", [expected_cells(n, k) for k in range(4)],
              "| same as boundary gtc:", iso_over(spec.u, plain.u) is not None,
              "| same as union:", iso_over(spec.u, union) is not None)

# the two ends of the 1-prism have equally many cells but are not the same shape
j0, j1 = prism_gtc(ctx, 1, 0), prism_gtc(ctx, 1, 1)
print("j(1,0) domain iso to j(1,1) domain:", find_iso(j0.D, j1.D) is not None)
