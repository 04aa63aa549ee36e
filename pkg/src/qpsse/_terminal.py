"""ANSI styling for CLI and telemetry output (honours NO_COLOR)."""

import os
import sys
from typing import TextIO

RESET = "\033[0m"
SGR: dict[str, str] = {
    "dim": "\033[2m",
    "bold": "\033[1m",
    "red": "\033[31m",
    "green": "\033[32m",
    "yellow": "\033[33m",
    "cyan": "\033[36m",
    "white": "\033[37m",
}


def color_enabled(stream: TextIO | None = None) -> bool:
    # https://no-color.org/
    if "NO_COLOR" in os.environ:
        return False
    stream = sys.stdout if stream is None else stream
    try:
        return stream.isatty()
    except ValueError, AttributeError:
        return False


def styled(text: str, style: str, *, file: TextIO | None = None) -> str:
    """Wrap `text` in a named SGR style when `file` is a color-capable TTY."""
    prefix = SGR.get(style)
    if prefix is None:
        raise ValueError(f"unknown style: {style!r}")
    if not color_enabled(file):
        return text
    return f"{prefix}{text}{RESET}"
