"""Supports `python -m qpsse.cli` when no console script is installed."""

from qpsse.cli.main import main

if __name__ == "__main__":
    raise SystemExit(main())
