"""Exact point counts for the curves y^q - y = x P(x) - lambda over F_{q^r}, q odd.

Submodules: numtheory, gf (finite fields), polyring, circulant, qform,
enumeration, curves (the counting methods), identities, cli.
"""

__version__ = '0.1.0'
