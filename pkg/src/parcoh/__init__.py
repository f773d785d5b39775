"""Parabolic cohomology of local systems on the punctured sphere, braid
monodromy on it, and the Hurwitz orbit combinatorics around it."""

__version__ = "0.1.0"
