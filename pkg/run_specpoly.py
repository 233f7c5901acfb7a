"""
CLI entry point. The commands live in src/cli/app.py; this just triggers them.

Usage:
    python run_specpoly.py poly --family P --N 1 --n 4
    python run_specpoly.py spectrum --N 2 --range 0..5 --oracle
    python run_specpoly.py verify --suite exact --N -1,1,2
"""
from src.cli.app import run

if __name__ == "__main__":
    run()
