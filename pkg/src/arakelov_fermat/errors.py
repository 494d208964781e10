class ArakelovError(Exception):
    pass


class DimensionMismatch(ArakelovError, ValueError):
    pass


class InconsistentSystem(ArakelovError):
    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NormalizationInKernelComplement(ArakelovError):
    """Pinning the chosen component to zero does not make the solution unique."""


class NotPrime(ArakelovError, ValueError):
    def __init__(self, p: int):
        super().__init__(f"{p} is not prime")
        self.p = p


class SplitInconsistent(ArakelovError):
    pass


class BadSplit(ArakelovError, ValueError):
    pass


class NotContractible(ArakelovError):
    pass


class EmptyCuspList(ArakelovError, ValueError):
    pass


class WrongExpressionKind(ArakelovError, ValueError):
    pass


class VerificationError(ArakelovError):
    """A computed quantity disagrees with its closed form."""
