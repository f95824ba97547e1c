"""Exception types shared across the package."""


class VacuumError(RuntimeError):
    """Density fell below the configured floor.

    The floor is a hard admissibility limit, not a clamp: any state that
    breaches it is rejected so the failure stays visible.
    """


class CFLViolation(RuntimeError):
    """A requested time step exceeds the stable step for the current state."""


class GridMismatchError(ValueError):
    """Two fields or states live on incompatible grids."""


class ConfigError(ValueError):
    """A run configuration failed validation.

    Carries a list of human-readable messages, one per problem found.
    """

    def __init__(self, messages):
        if isinstance(messages, str):
            messages = [messages]
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


class VerificationError(RuntimeError):
    """A verification stage (convergence order, summary recheck) failed."""
