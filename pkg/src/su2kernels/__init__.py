"""SU(2)-equivariant Szego kernels on the model spaces P^1 and P^1 x P^1.

Exact finite-dimensional kernels, representation-theoretic bases, and
leading-order asymptotic evaluators, with a verification harness.
"""

__version__ = "0.1.0"

from .geometry import BundlePoint, ModelSpace, P1, p1xp1
from .group import GroupElement, haar_quadrature
from .kernels import dimension, equivariant_kernel, level_kernel

__all__ = [
    "__version__",
    "BundlePoint",
    "ModelSpace",
    "P1",
    "p1xp1",
    "GroupElement",
    "haar_quadrature",
    "dimension",
    "equivariant_kernel",
    "level_kernel",
]
