"""Exception taxonomy: malformed input vs failed mathematics."""

__all__ = ["InputError", "MorphismError", "UnsupportedError"]


class InputError(ValueError):
    """Structurally malformed input (unknown name, bad index, bad JSON)."""


class MorphismError(ValueError):
    """A requested morphism does not exist; carries the witness."""

    def __init__(self, message, witness=""):
        super().__init__(message)
        self.witness = witness


class UnsupportedError(ValueError):
    """Input is meaningful but outside the implemented fragment."""
