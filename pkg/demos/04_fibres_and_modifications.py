"""
Fibres of the graph map and elementary modifications
====================================================

"""

from kodaira_moduli import (
    ChernData,
    NeronSeveriLattice,
    SheafRecord,
    allowable_modification,
    construct_example,
    double_dual,
    fibre_descriptor,
    positive_modification,
)

# Fibre over a graph without jumps: a Prym variety.  With one jump: two
# P^1-bundles glued along one or two sections.
lat, ch = NeronSeveriLattice(((-8,),)), ChernData(2, (1,), -1)
for k in (0, 1):
    f = fibre_descriptor(lat, ch, k)
    print(f"Delta = 1/2, k = {k}:", [c.kind.value for c in f.components], "dim", f.fibre_dim,
          "sections", f.intersection_sections)

lat3, ch3 = construct_example(3, 2)
for flag in (True, False):
    f = fibre_descriptor(lat3, ch3, 1, at_branch_point=flag)
    print(f"Delta = 3/4, jump over a branch image: {flag}  ->  {f.intersection_sections} section(s)")

# Deeper strata only come with the recursion skeleton.
f = fibre_descriptor(*construct_example(6, 2), 3, multiplicities=(2, 1))
for c in f.components:
    print("   ell =", c.extra["ell"], " nu =", c.extra["nu"])

# The ledger: a sheaf with a double jump at b, modified down step by step.
print()
rec = SheafRecord(lat, (1,), 0, jumps=(("b", 2),))
print("start          c2 =", rec.c2, " Delta =", rec.delta, " jumps =", rec.jumps)
rec = allowable_modification(rec, "b", 1)
print("allowable      c2 =", rec.c2, " Delta =", rec.delta, " jumps =", rec.jumps)
rec = positive_modification(rec, "c", 1)
print("positive at c  c2 =", rec.c2, " Delta =", rec.delta, " jumps =", rec.jumps)

# A non-locally-free sheaf: its double dual loses the singular length.
sing = SheafRecord(lat, (1,), -1, sing_length=1)
print("E^vv of a length-1 singular sheaf: Delta", sing.delta, "->", double_dual(sing).delta)

# The jump bound 2*Delta is enforced at construction.
try:
    SheafRecord(lat, (1,), 0, jumps=(("b", 3),))
except ValueError as exc:
    print("rejected:", exc)
