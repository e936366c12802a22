"""
Unit tests package.
""" 