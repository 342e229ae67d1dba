"""
Utility modules for pmatrixcheck
"""
