"""Utility Functions Module for the POLE toolkit

This module contains the command-line surface and shared helpers:
- cli: argparse commands (polarize, embed, linkpred, synth, balance, exports)
- console: Colored console messages
- exceptions: Error hierarchy mapped to CLI exit codes
- provenance: RunConfig and provenance-stamped artifact writers
- seeding: Named random streams derived from one seed
"""
