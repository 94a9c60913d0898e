"""Exact pairing spaces, non-abelian Fourier transforms, and distinguished bases.

For each group in a fixed family (symmetric groups S1..S5, based F2 vector
spaces V_n, and finite products of these) the package constructs the set M of
conjugacy-pairs (x, rho), the Fourier transform on C[M], and a distinguished
basis produced by a recursion over subgroup pairs, then verifies positivity,
matching-uniqueness and unitriangularity properties of that basis.
"""

__version__ = "0.1.0"
