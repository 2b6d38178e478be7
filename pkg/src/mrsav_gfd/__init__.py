"""
mrsav-gfd - Mean-reverting SAV-BDF2 pseudo-spectral solvers for geophysical fluid models.
"""
