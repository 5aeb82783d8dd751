class InvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
