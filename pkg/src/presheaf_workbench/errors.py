"""Exception hierarchy shared by every module of the workbench."""


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class SizeError(WorkbenchError):
    """A search or construction exceeded its configured budget or bound."""


class ContractError(WorkbenchError):
    """An operation was called with inputs that violate its preconditions."""


class ValidationError(ContractError):
    """A structure (category, presheaf, map, relation) failed validation."""


class ConstructionError(WorkbenchError):
    """A construction finished but one of its certified invariants failed.

    ``check`` names the failing equation or square.
    """

    def __init__(self, message, check=None):
        super().__init__(message)
        self.check = check


class LiftFailure(WorkbenchError):
    """A lifting problem that was required to be solved has no solution.

    The unsolved problem is attached as ``problem``; ``stage`` records where
    in a composite strategy the failure happened.
    """

    def __init__(self, message, problem=None, stage=None):
        super().__init__(message)
        self.problem = problem
        self.stage = stage
