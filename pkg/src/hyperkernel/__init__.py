"""Finite hypergroup algebra.

Cayley-table hypergroupoids with bitmask set algebra, the fundamental
relations and their quotients, subhypergroup classification, and
symbolic reduced words in free products of strongly regular factors.
"""

from hyperkernel.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
