class PnpsError(ValueError):
    '''
    Base class for every error raised on invalid input
    '''


class ConfigError(PnpsError):
    pass


class PosetError(PnpsError):
    pass


class NotNormalError(PosetError):
    '''
    Raised when a normal poset is required, carries the first quadruple
    i <= j < k <= l with (j,k) in P and (i,l) not in P
    '''
    def __init__(self, quadruple, message=None):
        self.quadruple = tuple(quadruple)
        i, j, k, l = self.quadruple
        super().__init__(message or f"Poset is not normal: ({j},{k}) in P but ({i},{l}) not in P")


class CapExceededError(PnpsError):
    def __init__(self, what, requested, cap):
        self.what = what
        self.requested = requested
        self.cap = cap
        super().__init__(f"{what} of size {requested} exceeds the configured cap {cap}")


class SupportError(PnpsError):
    def __init__(self, positions, message=None):
        self.positions = sorted(positions)
        super().__init__(message or f"Support escapes the poset at {self.positions}")


class RoleMismatchError(PnpsError):
    pass


class NotRepresentativeError(PnpsError):
    pass


class ShapeError(PnpsError):
    pass
