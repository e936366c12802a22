"""
Exact computations for commutative DG-rings over graded polynomial quotient rings.
"""
