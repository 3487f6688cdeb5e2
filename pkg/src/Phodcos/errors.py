"""Exceptions raised by the Phodcos package."""


class PhodcosError(Exception):
    """Base class for all errors raised by this package."""


class SegmentDegeneracy(PhodcosError):
    """The boundary data of a segment cannot be interpolated; the segment must be re-split."""


class DegenerateQuaternion(SegmentDegeneracy):
    pass


class DegenerateHodographDirection(SegmentDegeneracy):
    pass


class DegenerateVelocitySum(SegmentDegeneracy):
    pass


class VanishingPreimage(PhodcosError):
    pass


class SingularSpeed(PhodcosError):
    pass


class InterpolationResidual(PhodcosError):
    pass


class ContinuityFailure(PhodcosError):
    pass


class ToleranceUnreachable(PhodcosError):
    pass


class SourceValidationError(PhodcosError):
    pass


class IngestionError(PhodcosError):
    pass


class InsufficientSamples(IngestionError):
    pass


class NonMonotonicParameter(IngestionError):
    pass


class EmptyFile(IngestionError):
    pass


class ParseError(IngestionError):
    def __init__(self, row: int, message: str) -> None:
        super().__init__(f"row {row}: {message}")
        self.row = row


class SchemaVersionMismatch(PhodcosError):
    pass
