"""Exhaustive argmax of the entropy criterion over the full grid or its diagonal."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .entropy import criterion_values
from .errors import DegenerateHistogram, check_q
from .histogram import JointHistogram, PrefixTables, build_prefix_tables


class SearchMode(str, enum.Enum):
    FULL = "full"
    DIAGONAL = "diag"


@dataclass(frozen=True)
class ThresholdResult:
    t_star: int
    s_star: int
    q: float
    criterion: float
    mode: SearchMode
    candidates_evaluated: int


@dataclass(frozen=True, eq=False)
class CriterionSurface:
    """Criterion over every ``(t, s)``; ``values[t, s]`` is ``-inf`` for invalid candidates."""

    q: float
    values: np.ndarray

    def argmax(self, diagonal: bool = False) -> tuple[int, int]:
        """Lexicographically smallest maximiser, optionally restricted to ``t == s``."""
        if diagonal:
            d = np.diagonal(self.values)
            k = int(np.argmax(d))
            if not np.isfinite(d[k]):
                raise DegenerateHistogram("no valid candidate on the diagonal")
            return k, k
        flat = int(np.argmax(self.values))
        t, s = divmod(flat, self.values.shape[1])
        if not np.isfinite(self.values[t, s]):
            raise DegenerateHistogram("no valid candidate")
        return t, s


def _tables(source, q: float, background: str | None) -> PrefixTables:
    if isinstance(source, PrefixTables):
        if source.q != q:
            raise ValueError(f"tables were built for q={source.q}, not q={q}")
        if background is not None and source.background != background:
            raise ValueError(f"tables were built for background={source.background!r}")
        return source
    return build_prefix_tables(source, q, background or "quadrant")


def _grid(n: int):
    return np.meshgrid(np.arange(n), np.arange(n), indexing="ij")


def criterion_surface(
    hist: JointHistogram | PrefixTables, q: float, background: str | None = None
) -> CriterionSurface:
    q = check_q(q)
    tbl = _tables(hist, q, background)
    t, s = _grid(tbl.levels)
    return CriterionSurface(q, criterion_values(tbl, t, s))


def find_threshold(
    hist: JointHistogram | PrefixTables,
    q: float,
    mode: SearchMode | str = SearchMode.DIAGONAL,
    background: str | None = None,
) -> ThresholdResult:
    """Maximise the criterion at entropic index ``q``.

    ``q == 1`` uses the Shannon class entropies. Ties go to the smallest
    ``t``, then the smallest ``s``; comparisons are exact on the computed
    doubles. A prebuilt :class:`PrefixTables` for the same ``q`` may be
    passed in place of the histogram. ``background`` selects the
    background normaliser (see :mod:`entrothresh.entropy`), default
    ``"quadrant"``.

    Raises:
        InvalidQ: ``q <= 0``.
        DegenerateHistogram: no candidate splits the mass into two
            non-empty classes (for example a constant image).
    """
    q = check_q(q)
    mode = SearchMode(mode)
    tbl = _tables(hist, q, background)
    n = tbl.levels
    if mode is SearchMode.DIAGONAL:
        t = np.arange(n)
        values = criterion_values(tbl, t, t)
        k = int(np.argmax(values))
        best_t, best_s, best = k, k, values[k]
    else:
        t, s = _grid(n)
        values = criterion_values(tbl, t, s)
        # argmax returns the first maximum in row-major (t, s) order
        best_t, best_s = divmod(int(np.argmax(values)), n)
        best = values[best_t, best_s]
    if not np.isfinite(best):
        raise DegenerateHistogram("no threshold separates the histogram into two non-empty classes")
    return ThresholdResult(best_t, best_s, q, float(best), mode, int(values.size))
