"""Exact matrix factorizations of rank-two MCM modules over the Fermat cubic.

The package constructs the full catalog of small matrix factorizations of
f = x1^3 + x2^3 + x3^3 + x4^3 (3-, 4-, 5- and 6-generated families), checks
the defining identity phi*psi = psi*phi = f*Id exactly over towers of number
fields, enumerates and separates the isomorphism classes, and implements the
linear layer and group actions of the 6-generated moduli space.
"""

__version__ = "0.1.0"
