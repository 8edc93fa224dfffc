"""Exception hierarchy. Every error names the invariant or contract it violates."""


class GptError(ValueError):
    """Base class for model validation and contract errors."""


class DimensionMismatch(GptError):
    pass


class NotGenerating(GptError):
    pass


class NotProper(GptError):
    pass


class NotOrderUnit(GptError):
    pass


class NotClassical(GptError):
    pass


class UnsupportedKind(GptError):
    pass


class EffectNotPositive(GptError):
    def __init__(self, label, separator):
        super().__init__(f"effect {label!r} is not in the positive cone")
        self.label = label
        self.separator = separator


class NotNormalized(GptError):
    def __init__(self, residual):
        super().__init__(f"effects do not sum to the order unit (residual {residual})")
        self.residual = residual


class DuplicateLabel(GptError):
    pass


class BadDistribution(GptError):
    pass


class SpaceMismatch(GptError):
    pass


class LabelMismatch(GptError):
    pass


class NotAPartition(GptError):
    pass


class EmptyList(GptError):
    pass


class ProductTooLarge(GptError):
    pass


class NotAState(GptError):
    pass


class ParameterMismatch(GptError):
    pass


class MalformedProblem(GptError):
    pass
