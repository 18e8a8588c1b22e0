"""alk: arithmetic lattice kit.

Exact Ford domains and small generating sets for the congruence groups
Gamma0(Q), supersingular ell-isogeny graphs over F_{p^2} with spectral
diameter certificates, and unit enumeration in indefinite quaternion
orders with empirical covering-radius estimates.
"""

__version__ = "0.1.0"
