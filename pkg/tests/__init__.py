"""qpsse test suite."""
