from .dump import dumps_lp
from .model import Constraint, ExactLP, LpSolution, LpStatus, Variable
from .simplex import solve, verify_certificate

__all__ = [
    "Constraint",
    "ExactLP",
    "LpSolution",
    "LpStatus",
    "Variable",
    "dumps_lp",
    "solve",
    "verify_certificate",
]
