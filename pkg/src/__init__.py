"""
Almost Solutions in Permutations
Roots of permutations, epsilon-solutions of relation systems in S_n and their
repair, small-degree oracles and representation checks.
"""

__version__ = "1.0.0"
