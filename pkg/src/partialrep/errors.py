class InputError(ValueError):
    """Malformed user input: bad generator index, unparsable word, bad spec file."""


class PreconditionError(ValueError):
    """An operation was called outside its domain (e.g. mu not in the language)."""
