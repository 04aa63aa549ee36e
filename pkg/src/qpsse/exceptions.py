"""
Failure types:

- `QpsseError` — root of every error the library raises on purpose. `message`
  is the short summary; `str(exc)` adds context, help, and example lines for
  logs and telemetry.

- `GameError` — the game description itself is wrong: cycles, dangling ids,
  infosets whose nodes disagree on actions, chance probabilities that do not sum
  to 1, unreachable nodes. `FormatError` narrows this to text syntax (game,
  scheme, or rational literals) and carries the line number in `context`.

- `SchemeError` — a perturbation scheme is malformed or fails the lower-bound
  conditions it must satisfy to define a perturbed game.

- `InfeasibleInstanceError` — the scheme is valid but ε is too large: some
  infoset's lower bounds exceed the probability available at its parent
  sequence. `UnsupportedGameError` — the instance is fine but the solver cannot
  take it (chance nodes in the correlated LP).

- `PlanError` — a realization plan handed to a solver routine breaks its flow
  rows or sits below its perturbation bounds.

- `SolverInvariantError` — an exact certificate failed after a solve
  (duality gap, slackness, extraction mismatch, a best response violating the
  subgame-value property). These are bugs, never user mistakes.

- `SolveTimeout` — the per-ε wall clock ran out; carries the incumbent so the
  sweep can record it and move on.

Each class has an `exit_code` that `qpsse.cli` returns unchanged: bad input 2,
infeasible or unsupported instance 3, internal assertion 4.

Checkers that answer "ok or counterexample" (perfect recall, scheme
validation, best-response slackness checks) return report objects instead of raising;
callers decide whether a report is fatal.
"""

from typing import Any, ClassVar


class QpsseError(Exception):
    """
    Base error with structured detail.

    `context` / `help_text` / `example` are folded into `str(exc)` so logs
    and span events stay actionable without a custom formatter.
    """

    __slots__ = ("context", "example", "help_text", "message")

    exit_code: ClassVar[int] = 1
    kind: ClassVar[str] = "error"

    def __init__(
        self,
        message: str,
        *,
        context: dict[str, Any] | None = None,
        help_text: str | None = None,
        example: str | None = None,
    ) -> None:
        self.message = message
        self.context = dict(context) if context else {}
        self.help_text = help_text
        self.example = example
        super().__init__(message)

    def __str__(self) -> str:
        parts = [self.message]
        if self.context:
            ctx = ", ".join(f"{k}={v!r}" for k, v in self.context.items())
            parts.append(f"  Context: {ctx}")
        if self.help_text:
            parts.append(f"  Help: {self.help_text}")
        if self.example:
            parts.append(f"  Example:\n{self.example}")
        return "\n".join(parts)

    def report(self) -> dict[str, Any]:
        """Machine-readable summary (one JSON object per failure on stderr)."""
        out: dict[str, Any] = {
            "error": self.kind,
            "message": self.message,
            "exit_code": self.exit_code,
        }
        if self.context:
            out["context"] = {k: str(v) for k, v in self.context.items()}
        return out


class GameError(QpsseError):
    """Invalid game description (structure, probabilities, payload arity)."""

    exit_code = 2
    kind = "invalid_game"


class FormatError(GameError):
    """Text syntax error in a game file, scheme file, or rational literal."""

    kind = "format"


class SchemeError(QpsseError):
    """Perturbation scheme that cannot define a perturbed game."""

    exit_code = 2
    kind = "invalid_scheme"


class InfeasibleInstanceError(QpsseError):
    """Lower bounds at this ε leave some player without a feasible plan."""

    exit_code = 3
    kind = "infeasible_instance"


class UnsupportedGameError(QpsseError):
    """Valid game the correlated LP does not handle (chance nodes)."""

    exit_code = 3
    kind = "unsupported_game"


class PlanError(QpsseError):
    """Realization plan that is not feasible in the perturbed game it was paired with."""

    exit_code = 2
    kind = "invalid_plan"


class SolverInvariantError(QpsseError):
    """
    An exact post-solve check failed.

    Raised instead of `AssertionError` so the check survives `python -O` and the
    CLI can report it with exit code 4.
    """

    exit_code = 4
    kind = "internal_assertion"


class SolveTimeout(QpsseError):
    """Per-ε wall clock exceeded; `incumbent` is the best result found so far."""

    __slots__ = ("incumbent",)

    exit_code = 4
    kind = "timeout"

    def __init__(self, message: str, *, incumbent: Any = None, **kwargs: Any) -> None:
        super().__init__(message, **kwargs)
        self.incumbent = incumbent
