"""Lambda-quiddities over finite rings."""

__version__ = "0.1.0"
