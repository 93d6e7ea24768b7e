"""Dimension counting on the product model.

The space of equivariant sections at tensor power k has dimension k nu times
the number of admissible bidegree levels, so it grows like (k nu)^2 on the
two-dimensional quotient.  The limiting constant is a volume integral of
(2 lambda)^{-3} over the model space, which has the closed form
pi^2/(r^2 - 1) for even r.  This script prints the convergence table and,
for odd r, shows the exact even/odd parity vanishing.
"""

import numpy as np

from su2kernels.asymptotics import dimension_limit_integral
from su2kernels.geometry import p1xp1
from su2kernels.kernels import dimension

for r in (2, 4):
    model = p1xp1(r)
    integral, _ = dimension_limit_integral(model, method="gauss")
    closed = np.pi**2 / (r * r - 1)
    print(f"r = {r}: limit integral {integral:.6f} (closed form {closed:.6f})")
    print("    k    dim    (pi/k)^2 dim    ratio")
    for k in (10, 25, 50, 100, 200):
        d = dimension(model, k, 1)
        scaled = (np.pi / k) ** 2 * d
        print(f"  {k:4d} {d:6d}      {scaled:9.5f}   {scaled / integral:7.4f}")
    print()

print("odd r: parity selection (r = 3, nu = 1)")
print("    k    dim")
for k in range(10, 16):
    print(f"  {k:4d} {dimension(p1xp1(3), k, 1):6d}")
print("even k nu vanishes identically; odd k nu grows like (k nu)^2 / 4.")
