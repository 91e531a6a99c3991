"""An equational logical framework: syntax, kernel and example signatures."""

__version__ = "0.1.0"
