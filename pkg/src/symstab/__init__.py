"""
symstab - Exact stability bookkeeping for symmetric powers of rank-2 bundles.

This package decides, counts and constructs the rank-2 bundles with trivial
determinant on a curve whose symmetric powers fail to be stable, using exact
torsion arithmetic on Jacobians and Pryms, the intersection calculus of ruled
surfaces and elementary transformations.
"""

__version__ = '0.1.0'
__license__ = 'MIT'

# Expose the main interface at package level
from .toolkit import SymStab
