"""
Command-line surface for the DG Cohen-Macaulay analyzer.
"""
