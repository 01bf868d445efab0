"""divherm: exact hyperbolic hermitian planes over cyclic division algebras.

Exact-arithmetic core (number fields, cyclic algebras, unitary groups,
cusp classification, moduli lattices) with a numeric layer for the
tube-domain statements.
"""

from .kernel import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
