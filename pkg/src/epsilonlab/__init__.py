"""Exact verification laboratory for p-adic local constants.

Everything is computed as a finite sum in a cyclotomic field; the float backend
exists to cross-check the exact one, never to replace it.
"""

__version__ = "0.1.0"
