"""Resolve `module:callable` specs for custom tracer factories."""

import pkgutil
import sys
from pathlib import Path

from qpsse.cli.errors import CliError


def _put_cwd_first() -> None:
    cwd = str(Path.cwd().resolve())
    if cwd not in {str(Path(p or ".").resolve()) for p in sys.path}:
        sys.path.insert(0, cwd)


def load_symbol(spec: str, *, label: str) -> object:
    """Resolve `module:attr` (dotted attributes allowed), searching the current directory too."""
    module_name, _, attr_path = spec.partition(":")
    if not module_name or not attr_path:
        raise CliError(f"Invalid {label} '{spec}'. Use 'module:callable' or 'module:pkg.callable'.")
    if "" in attr_path.split("."):
        raise CliError(f"Invalid {label} '{spec}'. Dotted attribute paths cannot contain empty segments.")

    _put_cwd_first()
    try:
        return pkgutil.resolve_name(spec)
    except ModuleNotFoundError as exc:
        hint = "\n\nHint: run qpsse from the directory that contains the module." if exc.name == module_name else ""
        raise CliError(f"Could not load {label} '{spec}': {exc}{hint}") from exc
    except AttributeError as exc:
        raise CliError(f"Could not resolve {label} '{spec}': {exc}") from exc
    except Exception as exc:
        raise CliError(f"Could not load {label} '{spec}': importing '{module_name}' failed: {exc}") from exc
