#!/usr/bin/env python3
"""
PencilSpec - Main Entry Point
Joint spectra of Hermitian pencils, decomposability tests and commutator bounds.

Run this file with a subcommand, e.g.  python main.py decompose A.json B.json --k 2 --gamma G.json
"""

import sys
import os

# Add the current directory to the path so we can import our modules
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

# Check Python version
if sys.version_info < (3, 8):
    print("Error: PencilSpec requires Python 3.8 or higher.", file=sys.stderr)
    print(f"Current version: {sys.version}", file=sys.stderr)
    sys.exit(1)

# Import and run the CLI
try:
    from pencilspec_cli import main

    if __name__ == "__main__":
        sys.exit(main())

except ImportError as e:
    print(f"Error importing required modules: {e}", file=sys.stderr)
    print("\nInstall all requirements: pip install -r requirements.txt", file=sys.stderr)
    sys.exit(70)
except Exception as e:
    print(f"Error running PencilSpec: {e}", file=sys.stderr)
    import traceback
    traceback.print_exc()
    sys.exit(70)
