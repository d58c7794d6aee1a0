from typing import Any, Dict

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_INVARIANT = 4


class RankPoisonError(Exception):
    """Base exception for simulation errors"""
    def __init__(self, message: str, exit_code: int = EXIT_INVARIANT, **kwargs: Any):
        self.message = message
        self.exit_code = exit_code
        self.details: Dict[str, Any] = kwargs or {}
        super().__init__(message)

    def describe(self) -> str:
        """One-line diagnostic with details appended"""
        if not self.details:
            return self.message
        extra = ", ".join(f"{k}={v}" for k, v in self.details.items())
        return f"{self.message} ({extra})"


class ConfigError(RankPoisonError):
    """Raised when an experiment spec or CLI invocation is invalid"""
    def __init__(self, message: str = "Invalid configuration", **kwargs: Any):
        super().__init__(message, exit_code=EXIT_CONFIG, **kwargs)


class DataFileError(RankPoisonError):
    """Raised when an input data file cannot be used"""
    def __init__(self, message: str = "Invalid data file", **kwargs: Any):
        super().__init__(message, exit_code=EXIT_IO, **kwargs)


class OutputError(RankPoisonError):
    """Raised when result files cannot be written"""
    def __init__(self, message: str = "Failed to write outputs", **kwargs: Any):
        super().__init__(message, exit_code=EXIT_IO, **kwargs)


class SimulationError(RankPoisonError):
    """Raised when a simulation reaches a state it must never reach"""
    def __init__(self, message: str = "Simulation invariant violated", **kwargs: Any):
        super().__init__(message, exit_code=EXIT_INVARIANT, **kwargs)


class DomainError(SimulationError):
    """Raised when a numerical primitive is evaluated outside its domain"""
    def __init__(self, message: str = "Argument outside function domain", **kwargs: Any):
        super().__init__(message, **kwargs)


class UndefinedMeanError(SimulationError):
    """Raised when an empirical mean is requested for an item with no observations"""
    def __init__(self, message: str = "Empirical mean undefined for zero pulls", **kwargs: Any):
        super().__init__(message, **kwargs)


class InvalidActionError(SimulationError):
    """Raised when an action contains repeated or unknown items"""
    def __init__(self, message: str = "Invalid action", **kwargs: Any):
        super().__init__(message, **kwargs)


class ShapeError(SimulationError):
    """Raised when an action or feedback vector has the wrong length"""
    def __init__(self, message: str = "Unexpected vector length", **kwargs: Any):
        super().__init__(message, **kwargs)


class InfeasibleFeedbackError(SimulationError):
    """Raised when a learner is handed feedback outside the click model's feasible space"""
    def __init__(self, message: str = "Feedback is not feasible for the click model", **kwargs: Any):
        super().__init__(message, **kwargs)


class FeasibilityError(SimulationError):
    """Raised when an attacker produces an attack value or post-attack vector that is not valid"""
    def __init__(self, message: str = "Attack produced infeasible feedback", **kwargs: Any):
        super().__init__(message, **kwargs)
