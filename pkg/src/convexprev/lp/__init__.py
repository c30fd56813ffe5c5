"""Exact rational linear programming with primal and dual certificates."""

from ._kernel import DEFAULT as KERNEL, KERNELS
from .program import (EQ, FREE, GE, INFEASIBLE, LE, MAXIMIZE, MINIMIZE,
                      NONNEGATIVE, OPTIMAL, UNBOUNDED, Constraint,
                      LinearProgram, LPSolution, MalformedProgramError,
                      solve, verify_certificate)

__all__ = [
    "Constraint", "LinearProgram", "LPSolution", "MalformedProgramError",
    "solve", "verify_certificate", "KERNEL", "KERNELS",
    "MINIMIZE", "MAXIMIZE", "LE", "GE", "EQ", "FREE", "NONNEGATIVE",
    "OPTIMAL", "INFEASIBLE", "UNBOUNDED",
]
