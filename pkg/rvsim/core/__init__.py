"""Core module: machine, errors, invocation context."""
