"""
RelSpin EPR - Test Suite

Unit and property tests for the relativistic spin observable, singlet
correlations, CHSH optimization and the command-line tool.
"""
