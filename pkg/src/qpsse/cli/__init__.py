"""qpsse command-line interface.

Entry point: `qpsse.cli.main:main` (also `python -m qpsse.cli`).

The public API is `main` in `qpsse.cli.main`. The other modules (`env`,
`runtime`, `errors`, ...) are CLI implementation details; tests import them
directly.
"""
