"""Delta-move invariants and unlinking-number bounds for algebraically
split links."""

__version__ = "0.1.0"
