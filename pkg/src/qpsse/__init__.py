"""
Exact strong Stackelberg equilibria of ξ-perturbed extensive-form games.

**Package layout**

- `qpsse.game` — game trees, perfect recall, the game text format.
- `qpsse.seqform` — sequences, F/f/U matrices, realization plans, relevance.
- `qpsse.perturbation` — ε-polynomial lower bounds and concrete Γ(ε).
- `qpsse.lp` — exact rational simplex with certificates.
- `qpsse.bestresponse` — follower best responses, subgame values, commitment LPs.
- `qpsse.sefce` — branch-and-bound over the correlated LP and the anytime ε sweep.
- `qpsse.benchmarks` — Goofspiel-3, the patrol search game, small example shapes.
- `qpsse.telemetry` — spans and tracers; `qpsse.testing` has a recording tracer.

Prefer `from qpsse import …` for the common path:

```python
m = build_matrices(load_game("g.game"))
run = anytime_qpsse(m, miltersen_scheme(m), [Fraction(1, 10), Fraction(1, 100)])
```
"""

from importlib.metadata import version as _package_version

__version__ = _package_version("qpsse")

from qpsse.config import SolverSettings, solver_settings_from_env
from qpsse.exceptions import QpsseError
from qpsse.game import GameTree, build_game, load_game
from qpsse.perturbation import instantiate, miltersen_scheme
from qpsse.sefce import SseResult, anytime_qpsse, solve_sse, solve_unperturbed
from qpsse.seqform import build_matrices
from qpsse.telemetry import Span

__all__ = [
    "GameTree",
    "QpsseError",
    "SolverSettings",
    "Span",
    "SseResult",
    "__version__",
    "anytime_qpsse",
    "build_game",
    "build_matrices",
    "instantiate",
    "load_game",
    "miltersen_scheme",
    "solve_sse",
    "solve_unperturbed",
    "solver_settings_from_env",
]
