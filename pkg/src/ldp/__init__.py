"""Exact-arithmetic toolkit for rank-one log del Pezzo surface computations:
resolution dual graphs and their discrepancies, blowup-lattice divisor
calculus, cubic-pencil analysis over exact fields, and feasibility screens,
with a golden verification suite behind the `ldp` command."""

from . import cli, discrepancy, feasibility, fields, graphs, linalg, pencil, picard, poly, verify

__all__ = [
    "cli",
    "discrepancy",
    "feasibility",
    "fields",
    "graphs",
    "linalg",
    "pencil",
    "picard",
    "poly",
    "verify",
]
