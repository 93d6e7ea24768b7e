"""Oscillatory correction at a point with extra finite stabilizer.

Take r = 4 and Z perpendicular to W.  The stabilizer is cyclic of order 3,
and its non-identity elements contribute a subleading term oscillating in k
with period 3.  We scale the residual exact - central by (2 pi lambda / k)^2
and compare it with the closed-form prediction built from the complex
Hessian data (C, B) at the fixed points.

The prediction uses the pair-summed bracket normalization ("sec4"); the
alternative "thm" bracket is half as large and visibly undershoots.
"""

import numpy as np

from su2kernels.asymptotics import leading_diag_central, leading_diag_noncentral
from su2kernels.geometry import BundlePoint, lambda_of, moment, p1xp1
from su2kernels.kernels import equivariant_kernel

model = p1xp1(4)
x = BundlePoint(model, [1, 0], [0, 1])
lam = lambda_of(moment(x))
print(f"lambda = {lam}, stabilizer angle 2 pi/3")
print("    k   scaled residual   prediction (sec4)")
for k in range(40, 61):
    scale = (2 * np.pi * lam / k) ** 2
    exact = equivariant_kernel(model, k, 1, x, x).value.real
    central = leading_diag_central(model, k, 1, x)
    pred = leading_diag_noncentral(model, k, 1, x, bracket="sec4")
    print(f"  {k:3d}   {(exact - central) * scale:+15.6f}   {pred * scale:+15.6f}")

ks = np.arange(41, 71)
resid = np.array([
    (equivariant_kernel(model, int(k), 1, x, x).value.real
     - leading_diag_central(model, int(k), 1, x))
    * (2 * np.pi * lam / k) ** 2
    for k in ks
])
phase = np.exp(2j * np.pi * ks / 3.0)
a_meas = 2.0 * np.mean(resid * phase)
for bracket in ("sec4", "thm"):
    pred = np.array([
        leading_diag_noncentral(model, int(k), 1, x, bracket=bracket)
        * (2 * np.pi * lam / k) ** 2
        for k in ks
    ])
    a_pred = 2.0 * np.mean(pred * phase)
    print(f"period-3 amplitude, bracket={bracket}: measured {abs(a_meas):.4f} "
          f"vs predicted {abs(a_pred):.4f}")
