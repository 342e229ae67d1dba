"""
Exact rational linear algebra and the four decision problems of the chain
"""
