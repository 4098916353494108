"""Write every figure's curve data as CSV, the same files the command line produces.

    python demos/05_figure_data.py [output-dir]
"""
import sys
from pathlib import Path

from phaseops.cli import FIGURES, write_figure

out = Path(sys.argv[1] if len(sys.argv) > 1 else "figure-data")
for name in sorted(FIGURES, key=lambda k: int(k[1:])):
    paths = write_figure(name, out)
    print(f"{name}: {len(paths)} curves")
print(f"written to {out.resolve()}")
