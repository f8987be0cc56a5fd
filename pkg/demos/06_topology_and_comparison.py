"""
Topology flags and the comparison with X^[n]
============================================

"""

import json

from kodaira_moduli import compare_bases, construct_example, douady2_fibration_census, topology_report

for n in range(5):
    lat, ch = construct_example(n, 2)
    t = topology_report(lat, ch)
    print(f"Delta = {str(t.delta):4s} kaehler={t.kaehler}  pi1 onto Z^2: {t.pi1_surjective}  label={t.label}")
    if t.arapura:
        print("          ", t.arapura["sequence"])

# Could the base of the fibration be Sym^n(B), as it is for X^[n]?
print()
for n in range(4):
    print(compare_bases(*construct_example(n, 2)).statement)

# The fibres of X^[2] -> Sym^2(B), for side-by-side reading with the
# one-jump fibre at Delta = 1/2.
print()
print(json.dumps(douady2_fibration_census(), indent=2))
