"""
Entry point for running the solver suite as a module.
"""
import sys

from mrsav_gfd.main import main

if __name__ == "__main__":
    sys.exit(main())
