"""Period estimation for noisy, unevenly sampled light curves.

The estimator slots sample pairs by time difference to form a correntropy
series on a regular lag grid, transforms it to a spectral density, and
discriminates the resulting period candidates with an information
potential score on the phase fold.  Classical methods (Lomb-Scargle,
analysis of variance, string length) are included for comparison, along
with a synthetic benchmark harness and a command-line interface.
"""

from .baselines import (
    PeriodGrid,
    aov_statistic,
    default_frequency_grid,
    lomb_scargle,
    scan_extremum,
    sllk_string_length,
)
from .bench import (
    BatchResult,
    EvaluationOutcome,
    MethodSummary,
    SyntheticSpec,
    classify_period,
    evaluate_batch,
    generate,
)
from .discriminator import (
    BinPartition,
    DynamicBinningConfig,
    FixedBinningConfig,
    PeriodCandidate,
    find_local_optima,
    fine_tune,
    information_potential,
    make_partition,
    q_metric,
    smooth_folded,
)
from .errors import (
    DegenerateCurveError,
    EmptyReportError,
    InsufficientDataError,
    InsufficientPairsError,
    InvalidPeriodError,
    ParseError,
)
from .lightcurve import (
    FoldedCurve,
    LightCurve,
    fold,
    load_lightcurve,
    normalize,
    save_lightcurve,
    select_dense_window,
)
from .pipeline import (
    METHODS,
    EstimationReport,
    PipelineConfig,
    ProvenanceEntry,
    default_sigma_grid,
    estimate_period,
    estimate_with_method,
)
from .slotting import (
    KernelConfig,
    SlottedSeries,
    even_correntropy,
    gaussian_kernel,
    save_series,
    slot_indicator,
    slotted_autocorrelation,
    slotted_correntropy,
)
from .spectral import (
    Peak,
    PeakSet,
    Spectrum,
    center_and_window,
    csd,
    extract_peaks,
    save_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # data model
    "LightCurve",
    "FoldedCurve",
    "load_lightcurve",
    "save_lightcurve",
    "normalize",
    "select_dense_window",
    "fold",
    # slotted estimators
    "KernelConfig",
    "SlottedSeries",
    "gaussian_kernel",
    "slot_indicator",
    "slotted_correntropy",
    "slotted_autocorrelation",
    "even_correntropy",
    "save_series",
    # spectra
    "Spectrum",
    "Peak",
    "PeakSet",
    "center_and_window",
    "csd",
    "extract_peaks",
    "save_spectrum",
    # discrimination
    "DynamicBinningConfig",
    "FixedBinningConfig",
    "BinPartition",
    "PeriodCandidate",
    "information_potential",
    "smooth_folded",
    "find_local_optima",
    "make_partition",
    "q_metric",
    "fine_tune",
    # baselines
    "PeriodGrid",
    "default_frequency_grid",
    "lomb_scargle",
    "aov_statistic",
    "sllk_string_length",
    "scan_extremum",
    # pipeline
    "PipelineConfig",
    "ProvenanceEntry",
    "EstimationReport",
    "METHODS",
    "default_sigma_grid",
    "estimate_period",
    "estimate_with_method",
    # benchmark harness
    "SyntheticSpec",
    "EvaluationOutcome",
    "MethodSummary",
    "BatchResult",
    "generate",
    "classify_period",
    "evaluate_batch",
    # errors
    "ParseError",
    "InsufficientDataError",
    "DegenerateCurveError",
    "InvalidPeriodError",
    "InsufficientPairsError",
    "EmptyReportError",
]
