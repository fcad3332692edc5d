"""POLE: signed random-walk polarization, embedding and link prediction"""

__version__ = "1.0.0"
__author__ = "POLE Toolkit Team"
