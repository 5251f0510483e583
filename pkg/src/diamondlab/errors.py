"""Exception types raised across the package."""


class DiamondLabError(ValueError):
    pass


class UniverseTooLarge(DiamondLabError):
    pass


class BadParameter(DiamondLabError):
    pass


class BadDimensions(DiamondLabError):
    pass


class EmptySetMissing(DiamondLabError):
    pass


class NotDiamondFree(DiamondLabError):
    pass


class TooFewVertices(DiamondLabError):
    pass


class TooManyVertices(DiamondLabError):
    pass


class FormatError(DiamondLabError):
    pass


class BudgetExceeded(DiamondLabError):
    """Search stopped at its node budget; ``result`` holds the best family found."""

    def __init__(self, result):
        super().__init__(f"node budget exhausted after {result.nodes_explored} nodes")
        self.result = result
