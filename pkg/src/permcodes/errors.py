"""Exception hierarchy. Every error raised on bad parameters derives from
``PermCodeError`` so the CLI can map it to exit code 2."""


class PermCodeError(ValueError):
    pass


class FormatError(PermCodeError):
    pass


# fields
class NotAPrimePower(PermCodeError):
    pass


class ZeroInverse(PermCodeError, ZeroDivisionError):
    pass


class NotASquareOrder(PermCodeError):
    pass


# permutations and codes
class LengthMismatch(PermCodeError):
    pass


class NotIdempotent(PermCodeError):
    pass


class DistanceTooSmall(PermCodeError):
    pass


class CellConflict(PermCodeError):
    pass


# latin squares
class OrderMismatch(PermCodeError):
    pass


class OrderTooSmall(PermCodeError):
    pass


class EmptyInput(PermCodeError):
    pass


class NotOrthogonal(PermCodeError):
    pass


# designs
class PointOutOfRange(PermCodeError):
    pass


class InsufficientMOLS(PermCodeError):
    pass


class BadTruncation(PermCodeError):
    pass


class KeepOutOfRange(PermCodeError):
    pass


class PBDInvalid(PermCodeError):
    pass


# composition
class MissingIngredient(PermCodeError):
    def __init__(self, k):
        super().__init__(f"no ingredient code for block size {k}")
        self.k = k


class IngredientNotRIPC(PermCodeError):
    def __init__(self, k, detail=""):
        msg = f"ingredient for block size {k} is not a valid r-IPC"
        super().__init__(f"{msg}: {detail}" if detail else msg)
        self.k = k


class BlockSizeTwo(PermCodeError):
    pass


# extension
class ZeroSlope(PermCodeError):
    pass


class NoAnchor(PermCodeError):
    pass


# synthesis
class NoAdmissibleT(PermCodeError):
    pass


class NoPrimePowerInWindow(PermCodeError):
    pass


class IngredientFailure(PermCodeError):
    def __init__(self, k, detail=""):
        msg = f"cannot build ingredient for block size {k}"
        super().__init__(f"{msg}: {detail}" if detail else msg)
        self.k = k
