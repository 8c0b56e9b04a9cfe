"""Exception hierarchy shared by every egvqc module."""


class EgvqcError(Exception):
    """Base class for all package errors."""


class DomainError(EgvqcError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceError(EgvqcError):
    """A configured resource cap (qubit count, memory) would be exceeded."""


class ParseError(EgvqcError):
    """Malformed dataset file. Carries the file name and 1-based line number."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


class DegenerateHamiltonianError(EgvqcError):
    """The encoded Hamiltonian has no non-zero term."""


class ContractError(EgvqcError):
    """An input violates a documented precondition, e.g. an unnormalized observable."""


class TrainingError(EgvqcError):
    """Training diverged or was configured inconsistently."""
