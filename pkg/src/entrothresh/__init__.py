"""Two-dimensional Tsallis-entropy threshold selection for grayscale images."""
from .baseline1d import Histogram1D, build_histogram_1d, find_threshold_1d
from .entropy import (
    ClassEntropies,
    ThresholdPair,
    class_probability_p2,
    combine_pseudo_additive,
    criterion,
    normalizer_gap,
    shannon_class_entropies,
    tsallis_class_entropies,
)
from .errors import (
    DegenerateHistogram,
    ImageTooSmall,
    InvalidParams,
    InvalidQ,
    MalformedHeader,
    ThresholdingError,
    TruncatedData,
    UnsupportedMaxval,
)
from .histogram import (
    AvgImage,
    JointHistogram,
    PrefixTables,
    build_joint_histogram,
    build_prefix_tables,
    joint_histogram,
    neighborhood_average,
)
from .imgio import BinaryImage, GrayImage, binarize, load_pgm, read_pgm, save_pgm, write_pgm
from .search import CriterionSurface, SearchMode, ThresholdResult, criterion_surface, find_threshold


def threshold_image(img: GrayImage, q: float = 0.1, mode: SearchMode | str = SearchMode.DIAGONAL) -> ThresholdResult:
    """Histogram an image and return its optimal threshold at entropic index ``q``."""
    return find_threshold(joint_histogram(img), q, mode)


__version__ = "0.1.0"
