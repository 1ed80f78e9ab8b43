"""
Main module for running padlfun from the commandline.
"""

from __future__ import absolute_import, division

from . import main

if __name__ == "__main__":
    main.run()
