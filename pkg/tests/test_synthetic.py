import math

import numpy as np
import pytest

from entrothresh.errors import InvalidParams
from entrothresh.synthetic import (
    Xoshiro256,
    disk_mask,
    generate_synthetic,
    region_labels,
    splitmix64,
)

M = (1 << 64) - 1


def _ref_stream(seed):
    """Independent xoshiro256** + splitmix64 written straight from the reference C."""
    x = seed
    st = []
    for _ in range(4):
        x = (x + 0x9E3779B97F4A7C15) & M
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M
        st.append(z ^ (z >> 31))
    s0, s1, s2, s3 = st

    def rotl(v, k):
        return ((v << k) & M) | (v >> (64 - k))

    while True:
        out = (rotl((s1 * 5) & M, 7) * 9) & M
        t = (s1 << 17) & M
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = rotl(s3, 45)
        yield out


def _ref_image(seed, w, h, means, sigmas):
    stream = _ref_stream(seed)
    cy, cx = (h - 1) / 2, (w - 1) / 2
    r = min(w, h) / 4
    pix = []
    spare = None
    for y in range(h):
        for x in range(w):
            lab = 1 if (y - cy) ** 2 + (x - cx) ** 2 <= r * r else 0
            if spare is None:
                u1 = (next(stream) >> 11) / 2.0**53
                u2 = (next(stream) >> 11) / 2.0**53
                rad = math.sqrt(-2 * math.log(1 - u1))
                z, spare = rad * math.cos(2 * math.pi * u2), rad * math.sin(2 * math.pi * u2)
            else:
                z, spare = spare, None
            v = math.floor(means[lab] + sigmas[lab] * z + 0.5)
            pix.append(min(255, max(0, v)))
    return np.array(pix, dtype=np.uint8).reshape(h, w)


def test_splitmix64_vector():
    assert next(splitmix64(0)) == 0xE220A8397B1DCDAF


def test_xoshiro_matches_reference():
    a = Xoshiro256(7)
    b = _ref_stream(7)
    assert [a.next_u64() for _ in range(50)] == [next(b) for _ in range(50)]


def test_uniform_range():
    rng = Xoshiro256(1)
    u = [rng.uniform() for _ in range(2000)]
    assert 0.0 <= min(u) and max(u) < 1.0
    assert abs(np.mean(u) - 0.5) < 0.03


def test_bimodal_matches_reference_seed42():
    img = generate_synthetic("bimodal", (64, 192), (10, 10), seed=42, size=(128, 128))
    ref = _ref_image(42, 128, 128, (64, 192), (10, 10))
    assert np.array_equal(img.pixels, ref)


def test_non_square_reference():
    img = generate_synthetic("bimodal", (50, 170), (15, 15), seed=3, size=(40, 24))
    assert img.width == 40 and img.height == 24
    assert np.array_equal(img.pixels, _ref_image(3, 40, 24, (50, 170), (15, 15)))


def test_constant():
    img = generate_synthetic("constant", value=77, size=(9, 5))
    assert img.pixels.shape == (5, 9)
    assert (img.pixels == 77).all()


def test_zero_sigma_is_exact_disk():
    img = generate_synthetic("bimodal", (64, 192), (0, 0), seed=5, size=(64, 64))
    expected = np.where(disk_mask(64, 64, 16), 192, 64)
    assert np.array_equal(img.pixels, expected)


def test_trimodal_regions():
    labels = region_labels("trimodal", 64, 64, 16)
    assert set(np.unique(labels)) == {0, 1, 2}
    img = generate_synthetic("trimodal", (40, 128, 216), (0, 0, 0), size=(64, 64))
    assert np.array_equal(img.pixels, np.array([40, 128, 216])[labels])


def test_clipping():
    img = generate_synthetic("bimodal", (0, 255), (40, 40), seed=1, size=(32, 32))
    assert img.pixels.min() == 0 and img.pixels.max() == 255


def test_deterministic_and_seed_sensitive():
    a = generate_synthetic(seed=9, size=(32, 32))
    b = generate_synthetic(seed=9, size=(32, 32))
    c = generate_synthetic(seed=10, size=(32, 32))
    assert a == b
    assert a != c


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(kind="nope"),
        dict(kind="bimodal", means=(1, 2, 3)),
        dict(kind="bimodal", sigmas=(-1, 1)),
        dict(kind="bimodal", means=(-5, 100)),
        dict(kind="bimodal", size=(0, 10)),
        dict(kind="bimodal", radius=0),
        dict(kind="constant", value=300),
    ],
)
def test_invalid_params(kwargs):
    with pytest.raises(InvalidParams):
        generate_synthetic(**kwargs)
