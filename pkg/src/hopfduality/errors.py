"""Exception hierarchy shared by all modules."""


class HopfDualityError(Exception):
    pass


class NotHermitian(HopfDualityError, ValueError):
    pass


class NoConvergence(HopfDualityError, RuntimeError):
    pass


class RankDeficient(HopfDualityError, ValueError):
    pass


class DimensionMismatch(HopfDualityError, ValueError):
    pass


class SplitFailure(HopfDualityError, RuntimeError):
    """Randomized splitting of an algebra kept hitting degenerate draws."""


class NotAnIdeal(HopfDualityError, ValueError):
    pass


class NotStandard(HopfDualityError, ValueError):
    pass


class DegenerateRep(HopfDualityError, ValueError):
    pass


class MixedParents(HopfDualityError, ValueError):
    pass


class ExtensionInconsistent(HopfDualityError, RuntimeError):
    """A linear extension that the theory guarantees turned out inconsistent."""


class NotCommutative(HopfDualityError, ValueError):
    pass


class NotCocommutative(HopfDualityError, ValueError):
    pass


class NotAGroup(HopfDualityError, ValueError):
    pass


class NotAbelian(HopfDualityError, ValueError):
    pass


class BadSpec(HopfDualityError, ValueError):
    pass
