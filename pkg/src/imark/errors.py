"""Exception hierarchy shared by every imark module."""


class ImarkError(Exception):
    pass


class SpecError(ImarkError, ValueError):
    pass


class EmptySpec(SpecError):
    pass


class BadElement(SpecError):
    pass


class Duplicate(SpecError):
    pass


class BadBase(ImarkError, ValueError):
    pass


class LimitExceeded(ImarkError):
    """Raised when a dense oracle table would exceed the configured budget."""


class OutsideDomain(ImarkError, ValueError):
    """Raised when a closed-form evaluator is queried outside its theorem's hypothesis."""


class PrefixTooShort(ImarkError, ValueError):
    pass


class InconsistentTail(ImarkError, ValueError):
    pass
