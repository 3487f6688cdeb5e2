"""Module containing the keywords to fit curves and verify their properties."""

from logging import getLogger
from typing import Optional

from robot.api.deco import keyword, library

from Phodcos.ingest import CurveSource, builtin_curve
from Phodcos.pipeline import (
    GrowthStrategy,
    PHPath,
    PipelineConfig,
    conversion_error,
    convergence_study,
    interpolate_segments,
    observed_order,
    phodcos,
)
from Phodcos.properties import verify_property

logger = getLogger(__name__)


@library(scope="TEST SUITE", doc_format="ROBOT")
class PhodcosKeywords:
    """Main class providing the keywords to run and check PH parameterizations."""

    def __init__(  # pylint: disable=too-many-arguments
        self,
        n_segments: int = 4,
        epsilon: float = 1e-6,
        growth: GrowthStrategy = GrowthStrategy.DOUBLE,
        samples_per_segment: int = 1000,
        workers: int = 1,
    ) -> None:
        self.n_segments = n_segments
        self.config = PipelineConfig(
            epsilon=epsilon,
            growth=growth,
            samples_per_segment=samples_per_segment,
            workers=workers,
        )
        self.path: Optional[PHPath] = None

    @staticmethod
    def _source(curve: str) -> CurveSource:
        try:
            return builtin_curve(curve)
        except ValueError as error:
            raise AssertionError(str(error)) from None

    @keyword
    def verify_property(self, property: str, curve: str) -> None:  # pylint: disable=redefined-builtin
        """
        Check the named property (``planarity``, ``invariance``, ``reversion``,
        ``fiber``, ``ph-condition`` or ``continuity``) on the given built-in curve.
        """
        result = verify_property(property, self._source(curve), self.n_segments)
        logger.info(str(result))
        if not result.passed:
            raise AssertionError(str(result))

    @keyword
    def fit_curve(self, curve: str, epsilon: Optional[float] = None) -> PHPath:
        """
        Parameterize the curve until the conversion error is below ``epsilon``
        (the library default when omitted) and return the path.
        """
        config = self.config
        if epsilon is not None:
            config = PipelineConfig(
                epsilon=epsilon,
                growth=config.growth,
                samples_per_segment=config.samples_per_segment,
                workers=config.workers,
            )
        self.path, rows = phodcos(self._source(curve), config)
        logger.info(f"{curve}: {self.path.n_segments} segments, error {rows[-1].max_error:.4e}")
        return self.path

    @keyword
    def conversion_error_should_be_below(self, curve: str, n_segments: int, threshold: float) -> None:
        source = self._source(curve)
        path = PHPath(tuple(interpolate_segments(source, n_segments)), *source.domain)
        error = conversion_error(source, path, self.config.samples_per_segment)
        if not error < threshold:
            raise AssertionError(
                f"conversion error {error:.4e} of {curve} with {n_segments} segments "
                f"is not below {threshold:.4e}"
            )

    @keyword
    def observed_order_should_be_between(
        self, curve: str, min_exp: int, max_exp: int, lower: float, upper: float
    ) -> None:
        """The least-squares log-log slope over n_s = 2^min_exp .. 2^max_exp lies in [lower, upper]."""
        rows = convergence_study(
            self._source(curve),
            range(min_exp, max_exp + 1),
            self.config.samples_per_segment,
            self.config.workers,
        )
        order = observed_order(rows)
        logger.info(f"{curve}: observed order {order:.3f}")
        if not lower <= order <= upper:
            raise AssertionError(f"observed order {order:.3f} is outside [{lower}, {upper}]")
