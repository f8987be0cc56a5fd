"""
Discriminant, t-invariant and the existence grid
================================================

"""

# The Neron-Severi lattice of a primary Kodaira surface is even and
# negative definite.  A rank-1 model with generator a, a^2 = -8:
from kodaira_moduli import ChernData, NeronSeveriLattice, classify, construct_example

lat = NeronSeveriLattice(((-8,),))
ch = ChernData(r=2, c1=(1,), c2=-1)

rep = classify(lat, ch)
print("Delta =", rep.delta, " t =", rep.t, " dim =", rep.dim)
print("stably irreducible:", rep.stably_irreducible)

# Below zero the moduli space is empty, so there is no dimension to report.
empty = classify(NeronSeveriLattice(((-2,),)), ChernData(2, (0,), -1))
print("Delta =", empty.delta, " dim:", "EMPTY" if empty.empty else empty.dim)

# For every n >= 0 and r >= 2 there is a lattice and Chern data whose
# moduli space is compact holomorphic symplectic of dimension 2n.
print()
print(" n  r   gram    c2   Delta     t       dim")
for n in range(4):
    for r in (2, 3):
        lat, ch = construct_example(n, r)
        rep = classify(lat, ch)
        print(f"{n:2d} {r:2d}  {lat.gram[0][0]:5d} {ch.c2:5d}   {str(rep.delta):6s}  {str(rep.t):6s}  {rep.dim:3d}")
