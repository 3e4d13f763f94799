"""
Preset relation systems with their finite groups, used for planted solutions
and the stability experiment.
"""
