"""Exception types shared across the package."""


class QresError(Exception):
    """Base class for every error raised by this package."""


class ZeroInputError(QresError):
    """An operation that needs a nonzero integer received 0."""


class MagnitudeError(QresError):
    """An input exceeds the supported magnitude bound."""


class ContractError(QresError):
    """A caller violated a documented precondition."""


class GuardError(QresError):
    """A computation would exceed a hard enumeration budget."""
