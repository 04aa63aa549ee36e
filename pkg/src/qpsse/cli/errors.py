"""Marker for expected CLI failures.

Caught at the CLI entry boundary (`main`). `CliError` covers invalid flags,
environment values and tracer specs; errors raised by the solver keep their
own `QpsseError` subclass and exit code.
"""

from typing import Any, ClassVar

__all__ = ["CliError"]


class CliError(Exception):
    """User-facing configuration failure; `main()` reports it and returns 2."""

    exit_code: ClassVar[int] = 2
    kind: ClassVar[str] = "invalid_config"

    def report(self) -> dict[str, Any]:
        return {"error": self.kind, "message": str(self), "exit_code": self.exit_code}
