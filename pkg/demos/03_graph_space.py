"""
The base of the Lagrangian fibration
====================================

"""

# The graph space is two points when Delta = 0.  Otherwise it is a
# projective bundle over the base curve B of total dimension 4 Delta,
# and the parity of 4 Delta decides which kind of bundle.
from kodaira_moduli import construct_example, graph_space, strata

for n in range(7):
    lat, ch = construct_example(n, 2)
    g = graph_space(lat, ch)
    bundle = "-" if g.bundle is None else f"{g.bundle.kind.value} ranks={g.bundle.ranks} degrees={g.bundle.degrees}"
    print(f"4*Delta = {n}:  {g.label:24s} {bundle}")

# Graphs with k jumps form a stratum of codimension k, a product of a
# smaller graph space with Sym^k(B).
print()
for n in (2, 3, 5):
    lat, ch = construct_example(n, 2)
    print(f"4*Delta = {n}")
    for s in strata(lat, ch):
        print(f"   k={s.k}  dim={s.dim}  {s.product_label}" + ("  (bi-section)" if s.is_bisection else ""))
