"""
RelSpin EPR - Relativistic spin correlations

Center-of-mass spin observables for massive spin-1/2 particles and the
relativistic EPR-Bohm singlet correlation, with a matrix oracle, Monte Carlo
sampling, wave-packet averaging and CHSH optimization.
"""

__version__ = "0.1.0"
__author__ = "RelSpin Team"
