"""
gesturedyn - task-dynamic gesture simulation with scaled nonlinear restoring forces.

Integrates the linear and cubic gesture models, applies proportional, local
and global scaling to the nonlinear coefficient, extracts kinematic
landmarks, fits power laws and estimates gesture parameters from data.
"""

__version__ = "1.0.0"
