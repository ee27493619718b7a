"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed input: foreign element, bad label, unparsable literal."""


class DilatorLawError(RuntimeError):
    """A dilator descriptor violated one of its laws at runtime."""


class BudgetError(RuntimeError):
    """An enumeration or oracle bound was exceeded."""


class TermValidationError(ValueError):
    """A term is not a member of the term system it was used with."""


class TargetError(RuntimeError):
    """A fold target failed to supply a value for a structure map."""
