"""
Data models for rings, modules, complexes, DG-ring models and reports.
"""
