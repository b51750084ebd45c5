"""Exception hierarchy.

Everything the CLI treats as a mathematical refusal (exit status 1) derives
from :class:`Refusal`; malformed input files raise :class:`DataError`
(exit status 3).
"""


class AtkinError(Exception):
    pass


class Refusal(AtkinError, ValueError):
    """A computation declined because a mathematical precondition fails."""


class RamifiedPrimeError(Refusal):
    pass


class BadPrimeError(Refusal):
    pass


class NotPIntegralError(Refusal):
    pass


class PrecisionError(Refusal):
    """More terms were requested than a finite source can provide."""


class PadeNotExistError(Refusal):
    pass


class VanishingNormError(Refusal):
    def __init__(self, stage, msg=None):
        self.stage = stage
        super().__init__(msg or f"scalar product <P_{stage},P_{stage}> vanishes at stage {stage}")


class ZeroCoefficientError(Refusal):
    def __init__(self, index, msg=None):
        self.index = index
        super().__init__(msg or f"continued fraction coefficient lambda_{index} vanishes")


class GuardError(Refusal):
    """A documented guard of an algorithm (degree < p, MUM point, ...) is violated."""


class DataError(AtkinError, ValueError):
    pass
