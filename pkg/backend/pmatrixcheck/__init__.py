"""
pmatrixcheck: exact oracles, reductions and certificates for the chain
MAX CUT -> R-NORM -> INTERVAL SINGULARITY -> P-MATRIX
"""

__version__ = "0.1.0"
