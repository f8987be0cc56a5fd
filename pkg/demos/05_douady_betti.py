"""
Betti numbers of Douady spaces of points
========================================

"""

# The comparison family: X^[n] for a primary Kodaira surface X with
# Betti numbers (1, 3, 4, 3, 1).
from kodaira_moduli import KODAIRA, SurfaceBetti, douady_betti, douady_pi1

for n in range(5):
    print(f"X^[{n}]:", douady_betti(KODAIRA, n))

# b1 stays 3 because pi1 of X^[n] is H1(X, Z).
print("pi1(X^[4]) with torsion of order 3:", douady_pi1(3, 4))

# The same formula applied to other surfaces, e.g. the Hilbert square of a K3.
print("K3^[2]:", douady_betti(SurfaceBetti((1, 0, 22, 0, 1)), 2))
