"""
Equality tests for the correlation coefficients of two independent
bivariate normal populations.
"""

__version__ = "1.0.0"
