"""A first tour: presheaves on the 1-truncated simplex category.

Presheaves here are reflexive graphs: a set of vertices at [0], a set of
edges at [1] (including one degenerate loop per vertex), with source and
target maps.
"""

from presheaf_workbench import (boundary, codiscrete, compose, enumerate_maps, is_mono,
                                preset_simplex, product, pullback, pushout, terminal,
                                yoneda)

base = preset_simplex(1)
print(base)

# the representable y([1]) is the walking edge: two vertices, one real edge
I = yoneda(base, "[1]")
print("I levels:", I.sizes)

# its boundary is two vertices with their degenerate loops
d = boundary(base, "[1]")
print("boundary levels:", d.source.sizes, "mono:", is_mono(d))

# I x I: four vertices, and edges are pairs of edges
II = product(I, I)
print("I x I levels:", II.apex.sizes)

# gluing two copies of I end to start gives a path of two edges
one = terminal(base)
v0, v1 = (m for m in enumerate_maps(one, I))
path = pushout(v1, v0)
print("path levels:", path.apex.sizes)

# the two endpoints of I only meet in the empty presheaf
print("v0 meets v1 in:", pullback(v0, v1).apex.sizes)

# maps from I to a codiscrete presheaf are just pairs of points
K = codiscrete(base, 3)
print("maps I -> K:", len(enumerate_maps(I, K)))

# composition is checked: the first leg of the square agrees with the second
sq = pullback(v0, v0)
print("square commutes:", compose(v0, sq["p1"]) == compose(v0, sq["p2"]))
