"""Reproducible synthetic test images.

Random numbers come from xoshiro256** (Blackman and Vigna), with its 256-bit
state filled by four successive outputs of splitmix64 started at ``seed``:

    splitmix64:  x += 0x9E3779B97F4A7C15
                 z = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9
                 z = (z ^ (z >> 27)) * 0x94D049BB133111EB
                 return z ^ (z >> 31)
    xoshiro256**: result = rotl(s1 * 5, 7) * 9
                  t = s1 << 17
                  s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t
                  s3 = rotl(s3, 45)

all arithmetic mod 2**64. A uniform double is ``(next() >> 11) * 2**-53``.
Normal deviates use Box-Muller on consecutive uniforms ``u1, u2``:
``r = sqrt(-2 ln(1 - u1))``, yielding ``r cos(2 pi u2)`` and then
``r sin(2 pi u2)``. Pixels are drawn in row-major order, one deviate each,
from the Gaussian of the region the pixel belongs to; the value is
``floor(mean + sigma * z + 0.5)`` clipped to [0, 255].
"""
from __future__ import annotations

import math

import numpy as np

from .errors import InvalidParams
from .imgio import GrayImage

MASK64 = (1 << 64) - 1


def splitmix64(state: int):
    """Infinite generator of splitmix64 outputs starting from ``state``."""
    x = state & MASK64
    while True:
        x = (x + 0x9E3779B97F4A7C15) & MASK64
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        yield z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    """xoshiro256** seeded through splitmix64."""

    def __init__(self, seed: int):
        sm = splitmix64(seed)
        self.s = [next(sm) for _ in range(4)]
        self._spare = None

    def next_u64(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def normal(self) -> float:
        if self._spare is not None:
            z, self._spare = self._spare, None
            return z
        u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(1.0 - u1))
        theta = 2.0 * math.pi * u2
        self._spare = r * math.sin(theta)
        return r * math.cos(theta)


def disk_mask(height: int, width: int, radius: float) -> np.ndarray:
    """Boolean mask of the centred disk of the given radius."""
    cy, cx = (height - 1) / 2.0, (width - 1) / 2.0
    y, x = np.ogrid[:height, :width]
    return (y - cy) ** 2 + (x - cx) ** 2 <= radius * radius


def region_labels(kind: str, height: int, width: int, radius: float) -> np.ndarray:
    """Per-pixel region index: 0 background, 1 disk, 2 inner disk (trimodal only)."""
    labels = disk_mask(height, width, radius).astype(np.int64)
    if kind == "trimodal":
        labels[disk_mask(height, width, radius / 2.0)] = 2
    return labels


def default_radius(height: int, width: int) -> float:
    return min(height, width) / 4.0


def generate_synthetic(
    kind: str = "bimodal",
    means=(64, 192),
    sigmas=(10.0, 10.0),
    seed: int = 0,
    size=(128, 128),
    radius: float | None = None,
    value: int | None = None,
) -> GrayImage:
    """Build a synthetic image.

    ``bimodal`` puts a disk drawn from the second Gaussian on a field drawn
    from the first; ``trimodal`` adds an inner disk of half the radius drawn
    from a third Gaussian; ``constant`` fills the image with ``value`` (or the
    first mean). ``size`` is ``(width, height)``; the disk radius defaults to a
    quarter of the shorter side.
    """
    try:
        width, height = (int(v) for v in size)
    except (TypeError, ValueError):
        raise InvalidParams(f"bad size {size!r}") from None
    if width < 1 or height < 1:
        raise InvalidParams(f"bad size {size!r}")

    if kind == "constant":
        v = int(means[0] if value is None else value)
        if not 0 <= v <= 255:
            raise InvalidParams(f"constant value {v} outside [0, 255]")
        return GrayImage(np.full((height, width), v, dtype=np.uint8))

    nregions = {"bimodal": 2, "trimodal": 3}.get(kind)
    if nregions is None:
        raise InvalidParams(f"unknown kind {kind!r}")
    means = [float(m) for m in means]
    sigmas = [float(s) for s in sigmas]
    if len(means) != nregions or len(sigmas) != nregions:
        raise InvalidParams(f"{kind} needs {nregions} means and {nregions} sigmas")
    if any(not 0 <= m <= 255 for m in means) or any(s < 0 or not math.isfinite(s) for s in sigmas):
        raise InvalidParams("means must lie in [0, 255] and sigmas must be finite and nonnegative")
    if radius is None:
        radius = default_radius(height, width)
    if not radius > 0:
        raise InvalidParams(f"radius must be positive, got {radius}")

    labels = region_labels(kind, height, width, radius).ravel().tolist()
    rng = Xoshiro256(seed)
    out = np.empty(height * width, dtype=np.uint8)
    for k, lab in enumerate(labels):
        v = math.floor(means[lab] + sigmas[lab] * rng.normal() + 0.5)
        out[k] = 0 if v < 0 else 255 if v > 255 else v
    return GrayImage(out.reshape(height, width))
