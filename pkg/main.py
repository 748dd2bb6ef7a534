#!/usr/bin/env python3
"""
Coulomb branch toolkit
Hilbert series, abelian Coulomb algebras and toric duality checks for 3d N=4 gauge theories
"""

import sys
import os

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from src.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
