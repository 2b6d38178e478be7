"""
Services package for the mrsav-gfd solver suite.

This package contains the spectral operators, the models and the time
stepper, together with the run drivers and the post-processing services
that the CLI composes.
"""
