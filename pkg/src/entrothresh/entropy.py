"""Class probabilities, Tsallis/Shannon class entropies and the combined criterion.

A candidate ``(t, s)`` splits the joint histogram into four quadrants. The
object class is ``[0, t] x [0, s]`` with mass ``P2``; the background class is
``[t+1, 255] x [s+1, 255]`` with mass ``P4``. The two off-diagonal quadrants
(edges and noise) are ignored.

Each class is renormalised before its entropy is taken. The background
normaliser is ``P4`` by default (``background="quadrant"``). With
``background="complement"`` it is ``1 - P2``, which treats the off-diagonal
mass as negligible. That variant has no finite limit as ``q -> 1`` once
off-diagonal mass is present, so it does not reduce to the Shannon criterion.

Every function here accepts scalar or array-valued ``t``/``s`` and evaluates
candidates elementwise, so a single candidate and a whole grid go through the
same floating-point operations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .histogram import PrefixTables, rect_sums

NEG_INF = float("-inf")


class ThresholdPair(NamedTuple):
    t: int  # pixel gray level threshold
    s: int  # local average threshold


@dataclass(frozen=True)
class ClassEntropies:
    s_a: float
    s_b: float
    p2: float
    valid: bool


def _check_pair(tbl: PrefixTables, pair) -> ThresholdPair:
    t, s = (int(v) for v in pair)
    n = tbl.levels
    if not (0 <= t < n and 0 <= s < n):
        raise ValueError(f"threshold pair {(t, s)} outside [0, {n - 1}]")
    return ThresholdPair(t, s)


def _quadrant_sums(tbl: PrefixTables, t, s):
    """Object mass, entropy-term sums, single-cell flags and validity for candidates (t, s)."""
    n = tbl.levels
    t = np.asarray(t, dtype=np.intp)
    s = np.asarray(s, dtype=np.intp)
    total = tbl.cum_n[n, n]
    n_a = tbl.cum_n[t + 1, s + 1]
    p2 = tbl.cum_p[t + 1, s + 1]
    sum_a = tbl.cum_pq[t + 1, s + 1]
    cells_a = tbl.cum_cells[t + 1, s + 1]
    # background quadrant [t+1, n-1] x [s+1, n-1]; empty when t or s is the top level
    lo_t = np.minimum(t + 1, n - 1)
    lo_s = np.minimum(s + 1, n - 1)
    inside = (t < n - 1) & (s < n - 1)
    cells_b = np.where(inside, rect_sums(tbl.cum_cells, lo_t, n - 1, lo_s, n - 1), 0)
    n_b = np.where(inside, rect_sums(tbl.cum_n, lo_t, n - 1, lo_s, n - 1), 0)
    sum_b = rect_sums(tbl.cum_pq, lo_t, n - 1, lo_s, n - 1)
    p4 = rect_sums(tbl.cum_p, lo_t, n - 1, lo_s, n - 1)
    # an empty quadrant sums to exactly zero, whatever cancellation leaves behind
    sum_b = np.where(cells_b > 0, sum_b, 0.0)
    p4 = np.where(cells_b > 0, p4, 0.0)
    if tbl.background == "quadrant":
        valid = (n_a > 0) & (n_b > 0)
        b_single = cells_b == 1
    else:
        valid = (n_a > 0) & (n_a < total)
        # 1 - P2 is the true background mass only when the off-diagonal quadrants are empty
        b_single = (cells_b == 1) & (n_b == total - n_a)
    return p2, p4, sum_a, sum_b, cells_a == 1, b_single, valid


def _entropies(tbl: PrefixTables, t, s):
    p2, p4, sum_a, sum_b, a_single, b_single, valid = _quadrant_sums(tbl, t, s)
    q = tbl.q
    w_a = np.where(valid, p2, 0.5)
    w_b = np.where(valid, p4 if tbl.background == "quadrant" else 1.0 - p2, 0.5)
    if tbl.shannon:
        # -sum (p/w) ln(p/w) = (sum p) ln(w) / w - (sum p ln p) / w, where
        # sum p / w is 1 except for a complement-normalised background
        s_a = np.log(w_a) - sum_a / w_a
        s_b = np.log(w_b) * (p4 / w_b) - sum_b / w_b
    else:
        s_a = (1.0 - sum_a / np.power(w_a, q)) / (q - 1.0)
        s_b = (1.0 - sum_b / np.power(w_b, q)) / (q - 1.0)
    # a lone, fully normalised cell carries no uncertainty; pin it to 0 against rounding
    s_a = np.where(a_single, 0.0, s_a)
    s_b = np.where(b_single, 0.0, s_b)
    return p2, s_a, s_b, valid


def class_probability_p2(tbl: PrefixTables, pair) -> float:
    """Mass of the object quadrant ``[0, t] x [0, s]``."""
    t, s = _check_pair(tbl, pair)
    return float(tbl.cum_p[t + 1, s + 1])


def _class_entropies(tbl: PrefixTables, pair) -> ClassEntropies:
    t, s = _check_pair(tbl, pair)
    p2, s_a, s_b, valid = _entropies(tbl, t, s)
    return ClassEntropies(float(s_a), float(s_b), float(p2), bool(valid))


def tsallis_class_entropies(tbl: PrefixTables, pair, q: float | None = None) -> ClassEntropies:
    """Tsallis entropies of the object and background classes at ``pair``.

    ``tbl`` must have been built for the same ``q``; when ``valid`` is False
    the entropy fields are meaningless.
    """
    if q is not None and float(q) != tbl.q:
        raise ValueError(f"tables were built for q={tbl.q}, not q={q}")
    if tbl.shannon:
        raise ValueError("Tsallis entropies need q != 1; use shannon_class_entropies")
    return _class_entropies(tbl, pair)


def shannon_class_entropies(tbl: PrefixTables, pair) -> ClassEntropies:
    if not tbl.shannon:
        raise ValueError(f"Shannon entropies need tables built with q=1, got q={tbl.q}")
    return _class_entropies(tbl, pair)


def combine_pseudo_additive(e: ClassEntropies, q: float) -> float:
    """Combined criterion; ``-inf`` for an invalid candidate."""
    if not e.valid:
        return NEG_INF
    return float(_combine(e.s_a, e.s_b, float(q)))


def _combine(s_a, s_b, q: float):
    if q == 1.0:
        return s_a + s_b
    return s_a + s_b + (1.0 - q) * s_a * s_b


def criterion(tbl: PrefixTables, pair) -> float:
    t, s = _check_pair(tbl, pair)
    return float(criterion_values(tbl, t, s))


def criterion_values(tbl: PrefixTables, t, s) -> np.ndarray:
    """Criterion for every candidate in the broadcast of ``t`` and ``s``; invalid ones are ``-inf``."""
    with np.errstate(divide="ignore", invalid="ignore"):
        _, s_a, s_b, valid = _entropies(tbl, t, s)
        value = _combine(s_a, s_b, tbl.q)
    return np.where(valid, value, NEG_INF)


def normalizer_gap(tbl: PrefixTables, diagonal: bool = False) -> float:
    """Largest ``|P4 - (1 - P2)|`` over candidates with ``0 < P2 < 1``: the off-diagonal mass."""
    n = tbl.levels
    if diagonal:
        t = s = np.arange(n)
    else:
        t, s = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    p2, p4, _, _, _, _, _ = _quadrant_sums(tbl, t, s)
    n_a = tbl.cum_n[t + 1, s + 1]
    split = (n_a > 0) & (n_a < tbl.cum_n[n, n])
    gap = np.abs(p4 - (1.0 - p2))
    return float(gap[split].max()) if split.any() else 0.0
