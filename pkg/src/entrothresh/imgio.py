"""Grayscale raster model, PGM (P2/P5) codec and threshold binarization."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Union

import numpy as np

from .errors import MalformedHeader, TruncatedData, UnsupportedMaxval

__all__ = [
    "GrayImage",
    "BinaryImage",
    "read_pgm",
    "write_pgm",
    "load_pgm",
    "save_pgm",
    "binarize",
]

_WHITESPACE = b" \t\n\r\v\f"
_HASH = ord("#")
BACKGROUND = 0
FOREGROUND = 255


@dataclass(frozen=True, eq=False)
class GrayImage:
    """An 8-bit grayscale raster.

    ``pixels`` is a read-only ``(height, width)`` uint8 array in row-major
    order; the constructor copies and validates whatever it is given.
    """

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"expected a non-empty 2-D raster, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.dtype.kind not in "iub":
                raise ValueError(f"pixels must be integers, got dtype {arr.dtype}")
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ValueError("pixel values must lie in [0, 255]")
        arr = np.array(arr, dtype=np.uint8, copy=True)
        arr.flags.writeable = False
        object.__setattr__(self, "pixels", arr)

    @classmethod
    def from_list(cls, width: int, height: int, values) -> "GrayImage":
        """Build an image from a flat row-major sequence of gray levels."""
        flat = np.asarray(list(values), dtype=np.int64)
        if flat.size != width * height:
            raise ValueError(f"{width}x{height} image needs {width * height} values, got {flat.size}")
        return cls(flat.reshape(height, width))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def tolist(self) -> list[int]:
        return self.pixels.ravel().tolist()

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(np.array_equal(self.pixels, other.pixels))

    def __hash__(self):
        return hash((self.pixels.shape, self.pixels.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}(width={self.width}, height={self.height})"


@dataclass(frozen=True, eq=False)
class BinaryImage(GrayImage):
    """A raster whose pixels are all either 0 or 255."""

    def __post_init__(self):
        super().__post_init__()
        if not np.isin(self.pixels, (BACKGROUND, FOREGROUND)).all():
            raise ValueError("binary image pixels must be 0 or 255")


AnyImage = Union[GrayImage, BinaryImage]


class _Cursor:
    """Token scanner over a PGM header (and a P2 body)."""

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def skip_space(self):
        data, n = self.data, len(self.data)
        while self.pos < n:
            b = data[self.pos]
            if b == _HASH:
                end = data.find(b"\n", self.pos)
                self.pos = n if end < 0 else end + 1
            elif b in _WHITESPACE:
                self.pos += 1
            else:
                return

    def token(self) -> bytes | None:
        self.skip_space()
        start = self.pos
        data, n = self.data, len(self.data)
        while self.pos < n and data[self.pos] not in _WHITESPACE and data[self.pos] != _HASH:
            self.pos += 1
        return data[start : self.pos] if self.pos > start else None


def _header_int(cur: _Cursor, what: str) -> int:
    tok = cur.token()
    if tok is None:
        raise MalformedHeader(f"missing {what}")
    if not tok.isdigit():
        raise MalformedHeader(f"bad {what}: {tok[:20]!r}")
    return int(tok)


def read_pgm(data: bytes) -> GrayImage:
    """Decode a plain (P2) or raw (P5) PGM byte string.

    Comments introduced by ``#`` are skipped anywhere in the header. Values
    are used as stored even when maxval is below 255.

    Raises:
        MalformedHeader: bad magic number, dimensions or maxval.
        UnsupportedMaxval: maxval above 255.
        TruncatedData: fewer samples than ``width * height``.
    """
    data = bytes(data)
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise MalformedHeader(f"unsupported magic number {magic!r}")
    if len(data) > 2 and data[2] not in _WHITESPACE and data[2] != _HASH:
        raise MalformedHeader("magic number must be followed by whitespace")
    cur = _Cursor(data, 2)
    width = _header_int(cur, "width")
    height = _header_int(cur, "height")
    maxval = _header_int(cur, "maxval")
    if width < 1 or height < 1:
        raise MalformedHeader(f"invalid dimensions {width}x{height}")
    if maxval < 1:
        raise MalformedHeader(f"invalid maxval {maxval}")
    if maxval > 255:
        raise UnsupportedMaxval(f"maxval {maxval} exceeds 255")
    count = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the raster
        if cur.pos >= len(data) or data[cur.pos] not in _WHITESPACE:
            raise TruncatedData(f"expected {count} samples, got 0")
        start = cur.pos + 1
        raw = data[start : start + count]
        if len(raw) < count:
            raise TruncatedData(f"expected {count} samples, got {len(raw)}")
        samples = np.frombuffer(raw, dtype=np.uint8)
    else:
        values = []
        while len(values) < count:
            tok = cur.token()
            if tok is None:
                raise TruncatedData(f"expected {count} samples, got {len(values)}")
            if not tok.isdigit():
                raise MalformedHeader(f"bad sample {tok[:20]!r}")
            values.append(int(tok))
        samples = np.asarray(values, dtype=np.int64)

    if samples.max() > maxval:
        raise MalformedHeader(f"sample value {int(samples.max())} exceeds maxval {maxval}")
    return GrayImage(samples.reshape(height, width))


def write_pgm(img: AnyImage, variant: Literal["P2", "P5"] = "P5") -> bytes:
    """Encode ``img`` as PGM with maxval 255.

    P2 output puts one raster row per line. P5 output has exactly one
    newline between maxval and the raw samples.
    """
    header = f"{variant}\n{img.width} {img.height}\n255\n".encode("ascii")
    if variant == "P5":
        return header + img.pixels.tobytes()
    if variant == "P2":
        rows = (" ".join(map(str, row)) for row in img.pixels.tolist())
        return header + ("\n".join(rows) + "\n").encode("ascii")
    raise ValueError(f"unknown PGM variant {variant!r}")


def load_pgm(path) -> GrayImage:
    return read_pgm(Path(path).read_bytes())


def save_pgm(path, img: AnyImage, variant: Literal["P2", "P5"] = "P5") -> None:
    Path(path).write_bytes(write_pgm(img, variant))


def binarize(img: GrayImage, t: int) -> BinaryImage:
    """Map pixels ``<= t`` to 0 and the rest to 255."""
    t = int(t)
    if not 0 <= t <= 255:
        raise ValueError(f"threshold must lie in [0, 255], got {t}")
    out = np.where(img.pixels <= t, BACKGROUND, FOREGROUND).astype(np.uint8)
    return BinaryImage(out)
