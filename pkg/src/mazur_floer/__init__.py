"""Tau and epsilon of generalized Mazur satellites via bordered Floer homology."""

__version__ = "0.1.0"
