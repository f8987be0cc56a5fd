"""
Twisting rank-2 data into normal form
=====================================

"""

# Tensoring by a line bundle with class beta moves c1 by 2*beta and keeps
# Delta fixed.  The normal form picks c1 with the largest square in its
# class mod 2, which is exactly c1^2 = -8 t.
from kodaira_moduli import ChernData, NeronSeveriLattice, classify, discriminant, normalize_rank2, t_invariant
from kodaira_moduli.lattice import pairing

lat = NeronSeveriLattice(((-2,),))
ch = ChernData(2, (3,), 5)
new, beta = normalize_rank2(lat, ch)
print("c1", ch.c1, "->", new.c1, " c2", ch.c2, "->", new.c2, " beta", beta)
print("Delta before/after:", discriminant(lat, ch), discriminant(lat, new))
print("c1'^2 =", pairing(lat, new.c1, new.c1), " -8t =", -8 * t_invariant(lat, 2, new.c1))

# In normal form and with Delta >= 0, stable irreducibility is the sign
# of c2.  Start from c1 = (3, 5) and pick c2 so that the normalized c2'
# runs over -3..1.
lat2 = NeronSeveriLattice(((-2, 0), (0, -4)))
shift = normalize_rank2(lat2, ChernData(2, (3, 5), 0))[0].c2
for target in range(-3, 2):
    new, _ = normalize_rank2(lat2, ChernData(2, (3, 5), target - shift))
    rep = classify(lat2, new)
    print(f"c2' = {new.c2:3d}  Delta = {str(rep.delta):5s}  t = {rep.t}  stably irreducible: {rep.stably_irreducible}")
