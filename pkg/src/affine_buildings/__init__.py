"""Exact arithmetic for generalized affine buildings.

Model apartments over lexicographic value groups, crystallographic root
systems, morphisms of apartments, the chamber-compatibility extension of
Weyl groups for embedded root systems, and two concrete building models
(lattices and adapted ultrametric norms over valued rational function
fields) together with the machinery that certifies morphisms between them.
"""

__version__ = "0.1.0"
