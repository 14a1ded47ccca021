"""Exception hierarchy shared by all lpsep modules."""


class LPSepError(Exception):
    pass


class NotHermitian(LPSepError, ValueError):
    pass


class NoConvergence(LPSepError, ArithmeticError):
    pass


class DimMismatch(LPSepError, ValueError):
    pass


class InvalidState(LPSepError, ValueError):
    """A matrix failed one of the density-matrix invariants.

    The message names the violated invariant (``hermitian``, ``trace``,
    ``positive``, ``dims`` or ``finite``).
    """

    def __init__(self, invariant, detail=""):
        self.invariant = invariant
        msg = f"invalid state ({invariant})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class InvalidOrder(LPSepError, ValueError):
    pass


class InvalidDim(LPSepError, ValueError):
    pass


class InvalidParams(LPSepError, ValueError):
    pass


class DegenerateSpectrum(LPSepError, ValueError):
    pass


class EmptyObjective(LPSepError, ValueError):
    pass


class NotMonotone(LPSepError, RuntimeError):
    pass


class NoDetection(LPSepError, RuntimeError):
    pass


class ParseError(LPSepError, ValueError):
    pass
