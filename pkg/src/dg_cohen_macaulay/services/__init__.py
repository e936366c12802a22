"""
Service components implementing the algebra, homological and Cohen-Macaulay engines.
"""
