"""Exception hierarchy for dicke-sim."""


class DickeError(Exception):
    """Base class for every error raised by the package."""


class InvalidStateError(DickeError, ValueError):
    """A density matrix, angle set or Bell setting violates its invariants."""


class StateClassError(InvalidStateError):
    """An operation restricted to single-excitation states got another class."""


class DomainError(DickeError, ValueError):
    """Decay parameters outside the supported domain (gamma0 > 0, 0 <= g < 1)."""


class IntegrationError(DickeError, RuntimeError):
    """Numeric propagation left the set of physical states."""


class ScenarioError(DickeError, ValueError):
    """A scenario file or flag combination that cannot be run."""
