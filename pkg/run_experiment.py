#!/usr/bin/env python3
"""
Launcher for the rank-poison command line.

Usage:
    python run_experiment.py presets
    python run_experiment.py run --preset fig1-synthetic-pbm --T 20000
"""
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent.absolute()
sys.path.insert(0, str(PROJECT_ROOT))

from rank_poison.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
