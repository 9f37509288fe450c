"""Exception hierarchy shared across the toolkit."""


class GaitdomError(Exception):
    """Base class for all toolkit errors."""


class BvhParseError(GaitdomError):
    """Malformed BVH input. Carries the 1-based line number and an error code."""

    def __init__(self, message: str, line: int, code: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.code = code


class ChannelMismatchError(GaitdomError):
    """Channel values do not match the hierarchy's declared channel count."""


class RetargetError(GaitdomError):
    """Joint mapping does not cover the canonical skeleton."""

    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__("unmapped canonical joints: " + ", ".join(j.name for j in self.missing))


class GaitValidationError(GaitdomError):
    """Gait document violates the interchange schema. Carries the field path."""

    def __init__(self, message: str, field: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class InsufficientFramesError(GaitdomError):
    """Gait too short for the requested kinematic computation."""


class NoCycleError(GaitdomError):
    """Fewer than two foot strikes detected on each foot."""


class MappingError(GaitdomError):
    """Invalid rating data or an unregistered normalization."""


class ScoreRangeError(MappingError):
    """Normalized dominance score outside [-1, 1]."""


class DegenerateSampleError(MappingError):
    """Paired sample with zero-variance differences."""


class TrainingError(GaitdomError):
    """SVM training received unusable data."""


class LayoutMismatchError(GaitdomError):
    """Feature layout version of the model and the input disagree."""

    def __init__(self, model_layout: str, input_layout: str):
        super().__init__(
            f"model feature layout {model_layout!r} does not match input layout {input_layout!r}"
        )
        self.model_layout = model_layout
        self.input_layout = input_layout


class ModelFormatError(GaitdomError):
    """Model file is corrupt or has an unknown format version."""


class NoMatchingGaitError(GaitdomError):
    """No gait in the library satisfies the requested label and predicate."""

    def __init__(self, level, predicate_name: str):
        super().__init__(f"no gait with label {level} satisfies predicate {predicate_name!r}")
        self.level = level
        self.predicate_name = predicate_name


class NavigationError(GaitdomError):
    """Navigation callback failed for a character."""

    def __init__(self, character_id: str, cause: Exception):
        super().__init__(f"navigation failed for character {character_id!r}: {cause}")
        self.character_id = character_id
        self.cause = cause
