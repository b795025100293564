"""hopfgal: exact computations with Hopf *-algebra symmetry of inclusions.

Finite-dimensional *-algebras and Hopf *-algebras are given by structure
constant tensors over a cyclotomic ground field; on top of those the package
builds smash products, Jones basic constructions, universal measuring
subcoalgebras, Hopf centralizers and quantum Galois group certificates, all
by exact linear algebra.
"""

__version__ = "0.1.0"
