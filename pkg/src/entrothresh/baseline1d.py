"""One-dimensional entropic thresholding on the plain gray-level histogram.

Same criterion, conventions and tie-breaking as the two-dimensional search,
with classes ``[0, t]`` and ``[t+1, 255]``. Every pixel is counted.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .entropy import NEG_INF, _combine
from .errors import DegenerateHistogram, check_q
from .histogram import LEVELS, power_terms
from .imgio import GrayImage


@dataclass(frozen=True, eq=False)
class Histogram1D:
    counts: np.ndarray

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64, copy=True)
        if counts.ndim != 1 or (counts < 0).any() or counts.sum() <= 0:
            raise ValueError("counts must be a non-empty, nonnegative 1-D array")
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)

    @cached_property
    def pmf(self) -> np.ndarray:
        return self.counts.astype(np.float64) / float(self.counts.sum())


def build_histogram_1d(img: GrayImage) -> Histogram1D:
    return Histogram1D(np.bincount(img.pixels.ravel(), minlength=LEVELS))


def criterion_values_1d(h: Histogram1D, q: float) -> np.ndarray:
    """Criterion for every candidate ``t``; ``-inf`` where a class is empty."""
    q = check_q(q)
    cum_n = np.cumsum(h.counts)
    cells = np.cumsum(h.counts > 0)
    valid = (cum_n > 0) & (cum_n < cum_n[-1])
    cum_p = np.cumsum(h.pmf)
    cum_pq = np.cumsum(power_terms(h.pmf, q))
    p_a = cum_p
    sum_a = cum_pq
    sum_b = np.where(cells < cells[-1], cum_pq[-1] - cum_pq, 0.0)
    w_a = np.where(valid, p_a, 0.5)
    w_b = np.where(valid, 1.0 - p_a, 0.5)
    with np.errstate(divide="ignore", invalid="ignore"):
        if q == 1.0:
            s_a = np.log(w_a) - sum_a / w_a
            s_b = np.log(w_b) - sum_b / w_b
        else:
            s_a = (1.0 - sum_a / np.power(w_a, q)) / (q - 1.0)
            s_b = (1.0 - sum_b / np.power(w_b, q)) / (q - 1.0)
        s_a = np.where(cells == 1, 0.0, s_a)
        s_b = np.where(cells[-1] - cells == 1, 0.0, s_b)
        value = _combine(s_a, s_b, q)
    return np.where(valid, value, NEG_INF)


def find_threshold_1d(h: Histogram1D, q: float) -> int:
    """Smallest ``t`` maximising the one-dimensional criterion."""
    values = criterion_values_1d(h, q)
    t = int(np.argmax(values))
    if not np.isfinite(values[t]):
        raise DegenerateHistogram("histogram has a single occupied bin")
    return t
