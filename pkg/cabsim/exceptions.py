class CabsimError(Exception):
    pass


class DomainError(CabsimError, ValueError):
    pass


class InvalidInstanceError(DomainError):
    pass


class UnknownPolicyError(CabsimError, KeyError):
    pass


class InvalidConfigurationError(CabsimError):
    pass


class ReplicationError(CabsimError):
    def __init__(self, message: str, completed: int = 0):
        super().__init__(message)
        self.completed = completed


class ExportError(CabsimError):
    pass


class AcceptanceCheckError(CabsimError):
    pass
