import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from entrothresh import (
    BinaryImage,
    GrayImage,
    MalformedHeader,
    TruncatedData,
    UnsupportedMaxval,
    binarize,
    read_pgm,
    write_pgm,
)


def test_read_plain():
    img = read_pgm(b"P2\n2 2\n255\n0 255 128 7\n")
    assert (img.width, img.height) == (2, 2)
    assert img.tolist() == [0, 255, 128, 7]


def test_raw_matches_plain():
    plain = read_pgm(b"P2\n2 2\n255\n0 255 128 7\n")
    raw = read_pgm(b"P5\n2 2\n255\n" + bytes([0, 255, 128, 7]))
    assert raw == plain


def test_truncated():
    with pytest.raises(TruncatedData):
        read_pgm(b"P2\n3 3\n255\n1 2 3 4 5 6 7 8\n")
    with pytest.raises(TruncatedData):
        read_pgm(b"P5\n3 3\n255\n" + bytes(8))


@pytest.mark.parametrize(
    "data",
    [b"P3\n1 1\n255\n0\n", b"P2\n0 1\n255\n", b"P2\nx 1\n255\n0\n", b"P2\n1\n", b"", b"P2\n1 1\n0\n0\n", b"P21 1 255 0"],
)
def test_malformed(data):
    with pytest.raises(MalformedHeader):
        read_pgm(data)


def test_maxval_too_large():
    with pytest.raises(UnsupportedMaxval):
        read_pgm(b"P2\n1 1\n65535\n0\n")


def test_sample_above_maxval():
    with pytest.raises(MalformedHeader):
        read_pgm(b"P2\n1 1\n15\n16\n")


def test_small_maxval_kept_as_is():
    assert read_pgm(b"P2\n2 1\n15\n3 15\n").tolist() == [3, 15]


def test_comments_are_skipped():
    data = b"P5\n# made by hand\n2 # width\n1\n# max\n255\n" + bytes([9, 200])
    assert read_pgm(data).tolist() == [9, 200]


def test_raw_payload_may_start_with_whitespace_byte():
    # 0x0A and 0x20 are legitimate samples right after the single separator
    img = read_pgm(b"P5\n2 1\n255\n\x0a\x20")
    assert img.tolist() == [10, 32]


def test_write_plain_exact():
    assert write_pgm(GrayImage.from_list(1, 1, [0]), "P2") == b"P2\n1 1\n255\n0\n"


def test_write_raw_payload():
    out = write_pgm(GrayImage.from_list(2, 1, [5, 250]), "P5")
    assert out == b"P5\n2 1\n255\n\x05\xfa"


gray_arrays = arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12)))


@settings(max_examples=200, deadline=None)
@given(pixels=gray_arrays, variant=st.sampled_from(["P2", "P5"]))
def test_round_trip(pixels, variant):
    img = GrayImage(pixels)
    data = write_pgm(img, variant)
    assert read_pgm(data) == img
    assert write_pgm(read_pgm(data), variant) == data


def test_binarize_examples():
    assert binarize(GrayImage.from_list(2, 1, [10, 200]), 100).tolist() == [0, 255]
    assert binarize(GrayImage.from_list(2, 1, [0, 1]), 0).tolist() == [0, 255]
    img = GrayImage(np.arange(256, dtype=np.uint8).reshape(16, 16))
    out = binarize(img, 255)
    assert out.tolist() == [0] * 256
    assert isinstance(out, BinaryImage) and (out.width, out.height) == (16, 16)


def test_binarize_rejects_bad_threshold():
    with pytest.raises(ValueError):
        binarize(GrayImage.from_list(1, 1, [0]), 256)


@settings(max_examples=100, deadline=None)
@given(pixels=gray_arrays, t=st.integers(0, 255), t2=st.integers(0, 254))
def test_binarize_properties(pixels, t, t2):
    img = GrayImage(pixels)
    b = binarize(img, t)
    assert set(np.unique(b.pixels)) <= {0, 255}
    # re-binarizing keeps a binary image binary, and is the identity for t2 < 255
    assert binarize(b, t2) == b
    if t < 255:
        higher = binarize(img, t + 1)
        assert not ((b.pixels == 0) & (higher.pixels == 255)).any()


def test_images_are_immutable():
    img = GrayImage.from_list(2, 1, [1, 2])
    with pytest.raises(ValueError):
        img.pixels[0, 0] = 9
    with pytest.raises(ValueError):
        BinaryImage(np.array([[1]]))
    with pytest.raises(ValueError):
        GrayImage(np.array([[300]]))
