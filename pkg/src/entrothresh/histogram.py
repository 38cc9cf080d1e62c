"""Local 3x3 averages, the joint (gray, average) histogram and its summed-area tables."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Literal

import numpy as np

from .errors import ImageTooSmall, check_q
from .imgio import GrayImage

LEVELS = 256
# Pixels this close to the image edge get no average. A 3x3 window needs 1;
# set to 2 to drop two rows/columns per side instead.
BORDER = 1


@dataclass(frozen=True, eq=False)
class AvgImage:
    """Floored 3x3 means over the interior of a source image.

    ``values[y, x]`` belongs to source pixel ``(y + border, x + border)``.
    """

    values: np.ndarray
    border: int = BORDER

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]


def neighborhood_average(img: GrayImage, border: int = BORDER) -> AvgImage:
    """Floor of the 3x3 neighbourhood mean for every pixel at least ``border`` from the edge."""
    if img.width < 3 or img.height < 3:
        raise ImageTooSmall(f"need at least 3x3 pixels, got {img.width}x{img.height}")
    if border < 1:
        raise ValueError("border must be at least 1 for a 3x3 window")
    f = img.pixels.astype(np.int32)
    h, w = f.shape
    total = np.zeros((h - 2, w - 2), dtype=np.int32)
    for dy in range(3):
        for dx in range(3):
            total += f[dy : dy + h - 2, dx : dx + w - 2]
    inner = total // 9
    trim = border - 1
    if trim:
        inner = inner[trim:-trim, trim:-trim]
    if inner.size == 0:
        raise ImageTooSmall(f"no interior pixels left for {img.width}x{img.height} with border {border}")
    inner = inner.astype(np.uint8)
    inner.flags.writeable = False
    return AvgImage(inner, border)


@dataclass(frozen=True, eq=False)
class JointHistogram:
    """Counts ``n(i, j)`` of (gray level i, local average j) pairs and their pmf.

    ``levels`` is 256 for images; tests use smaller grids.
    """

    counts: np.ndarray

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64, copy=True)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
            raise ValueError(f"counts must be a square grid, got shape {counts.shape}")
        if (counts < 0).any():
            raise ValueError("counts must be nonnegative")
        if counts.sum() <= 0:
            raise ValueError("histogram is empty")
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)

    @property
    def levels(self) -> int:
        return self.counts.shape[0]

    @cached_property
    def total(self) -> int:
        return int(self.counts.sum())

    @cached_property
    def pmf(self) -> np.ndarray:
        # integer counts and totals are exact in float64, so scaling every
        # count by k leaves each quotient bit-identical
        p = self.counts.astype(np.float64) / float(self.total)
        p.flags.writeable = False
        return p

    @cached_property
    def cum_counts(self) -> np.ndarray:
        """Integer summed-area table of counts, shape ``(levels + 1, levels + 1)``."""
        return _summed_area(self.counts)

    @cached_property
    def cum_cells(self) -> np.ndarray:
        """Summed-area table of occupied-cell indicators."""
        return _summed_area((self.counts > 0).astype(np.int64))

    @cached_property
    def cum_p(self) -> np.ndarray:
        return _summed_area(self.pmf)

    def scaled(self, k: int) -> "JointHistogram":
        return JointHistogram(self.counts * int(k))

    def nonzero_cells(self):
        """Yield ``(i, j, count, p)`` for every occupied cell in (i, j) order."""
        ii, jj = np.nonzero(self.counts)
        pmf = self.pmf
        for i, j in zip(ii.tolist(), jj.tolist()):
            yield i, j, int(self.counts[i, j]), float(pmf[i, j])


def build_joint_histogram(img: GrayImage, avg: AvgImage | None = None) -> JointHistogram:
    """Tally (f, g) pairs over the pixels that have a local average."""
    if avg is None:
        avg = neighborhood_average(img)
    b = avg.border
    f = img.pixels[b : b + avg.height, b : b + avg.width]
    if f.shape != avg.values.shape:
        raise ValueError("average image does not match the source image")
    codes = f.astype(np.int64) * LEVELS + avg.values.astype(np.int64)
    counts = np.bincount(codes.ravel(), minlength=LEVELS * LEVELS).reshape(LEVELS, LEVELS)
    return JointHistogram(counts)


def joint_histogram(img: GrayImage) -> JointHistogram:
    return build_joint_histogram(img, neighborhood_average(img))


def _summed_area(a: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + 1, a.shape[1] + 1), dtype=a.dtype)
    np.cumsum(a, axis=0, out=out[1:, 1:])
    np.cumsum(out[1:, 1:], axis=1, out=out[1:, 1:])
    out.flags.writeable = False
    return out


def power_terms(p: np.ndarray, q: float) -> np.ndarray:
    """Elementwise ``p**q`` for ``q != 1`` and ``p*ln(p)`` for ``q == 1``, with empty cells giving 0."""
    p = np.asarray(p, dtype=np.float64)
    out = np.zeros_like(p)
    mask = p > 0
    if q == 1.0:
        out[mask] = p[mask] * np.log(p[mask])
    else:
        out[mask] = np.power(p[mask], q)
    return out


@dataclass(frozen=True, eq=False)
class PrefixTables:
    """Summed-area tables over ``p`` and its per-cell entropy term.

    ``cum_p[a, b]`` is the mass of cells ``i < a, j < b``; ``cum_pq`` holds
    the same sums over ``p**q``, or over ``p*ln(p)`` when ``q == 1``.
    ``cum_n`` counts pixels and ``cum_cells`` occupied cells; both are
    integer tables used to classify quadrants as empty or single-cell exactly.
    ``background`` picks the background-class normaliser: ``"quadrant"``
    (its own mass) or ``"complement"`` (``1 - P2``).
    """

    q: float
    cum_p: np.ndarray
    cum_pq: np.ndarray
    cum_n: np.ndarray
    cum_cells: np.ndarray
    background: str = "quadrant"

    @property
    def levels(self) -> int:
        return self.cum_p.shape[0] - 1

    @property
    def shannon(self) -> bool:
        return self.q == 1.0

    def rect_sum(self, which: Literal["P", "Pq"], i0: int, i1: int, j0: int, j1: int) -> float:
        """Sum over the inclusive rectangle ``[i0, i1] x [j0, j1]``."""
        n = self.levels
        if not (0 <= i0 <= i1 < n and 0 <= j0 <= j1 < n):
            raise ValueError(f"bad rectangle [{i0},{i1}]x[{j0},{j1}] for {n} levels")
        tbl = {"P": self.cum_p, "Pq": self.cum_pq, "N": self.cum_n}[which]
        return float(rect_sums(tbl, i0, i1, j0, j1))


def rect_sums(tbl: np.ndarray, i0, i1, j0, j1):
    """Vectorised four-corner inclusion-exclusion over a summed-area table."""
    i1 = np.asarray(i1) + 1
    j1 = np.asarray(j1) + 1
    return tbl[i1, j1] - tbl[i0, j1] - tbl[i1, j0] + tbl[i0, j0]


BACKGROUNDS = ("quadrant", "complement")


def build_prefix_tables(hist: JointHistogram, q: float, background: str = "quadrant") -> PrefixTables:
    q = check_q(q)
    if background not in BACKGROUNDS:
        raise ValueError(f"background must be one of {BACKGROUNDS}, got {background!r}")
    cum_pq = _summed_area(power_terms(hist.pmf, q))
    return PrefixTables(q, hist.cum_p, cum_pq, hist.cum_counts, hist.cum_cells, background)
