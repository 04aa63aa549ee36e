"""Plain output helpers; styling only when the stream is a TTY."""

__all__ = ["echo", "err", "report_error", "report_interrupt", "style"]

import json
import sys
from typing import Any, TextIO

from qpsse._terminal import styled


def style(text: str, name: str, *, file: TextIO | None = None) -> str:
    return styled(text, name, file=sys.stdout if file is None else file)


def echo(*parts: str, end: str = "\n") -> None:
    print("".join(parts), end=end, flush=True)


def err(*parts: str, end: str = "\n") -> None:
    print("".join(parts), end=end, file=sys.stderr, flush=True)


def report_error(report: dict[str, Any], message: str) -> None:
    """One JSON line for machines, then the human message."""
    err(json.dumps(report, ensure_ascii=False, sort_keys=True))
    err(style(message, "red", file=sys.stderr))


def report_interrupt() -> None:
    err()
    err(style("Cancelled.", "dim", file=sys.stderr))
