#!/usr/bin/env python3
"""
Launcher script for the POLE command-line interface
===================================================
Run this script from the project root without installing the package.

Usage:
    python run_pipeline.py <command> [options]

Commands:
    polarize, embed, linkpred, synth, balance, export-similarity, export-transitions
    (run `python run_pipeline.py <command> --help` for options)
"""

import sys
from pathlib import Path

# Get the project root directory
project_root = Path(__file__).parent.absolute()
sys.path.insert(0, str(project_root))

from src.utils.cli import main  # noqa: E402

if __name__ == "__main__":
    try:
        sys.exit(main(sys.argv[1:]))
    except KeyboardInterrupt:
        print("\n\nStopped by user.")
        sys.exit(130)
