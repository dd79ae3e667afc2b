import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dftstego.metrics import compare
from dftstego.pnm import PnmImage


def test_identical():
    a = PnmImage.gray(np.arange(16, dtype=np.uint8).reshape(4, 4))
    report = compare(a, a)
    assert report.mse == 0
    assert math.isinf(report.psnr) and report.psnr > 0
    assert report.image_fidelity == 1


def test_plus_one_everywhere():
    a = PnmImage.gray(np.arange(100, dtype=np.uint8).reshape(10, 10))
    b = PnmImage.gray(a.planes[0] + 1)
    report = compare(a, b)
    assert report.mse == 1
    assert report.psnr == pytest.approx(10 * math.log10(65025))
    assert report.psnr == pytest.approx(48.1308, abs=1e-4)
    assert report.image_fidelity == pytest.approx(1 - 100 / sum(i * i for i in range(100)))


def test_known_values_against_float_formula(rng):
    x = rng.integers(0, 256, size=(32, 32)).astype(np.uint8)
    y = np.clip(x.astype(int) + rng.integers(-5, 6, size=x.shape), 0, 255).astype(np.uint8)
    report = compare(PnmImage.gray(x), PnmImage.gray(y))
    diff = x.astype(float) - y.astype(float)
    mse = np.mean(diff ** 2)
    assert report.mse == pytest.approx(mse, rel=1e-12)
    assert report.psnr == pytest.approx(10 * np.log10(255 ** 2 / mse), rel=1e-12)
    assert report.image_fidelity == pytest.approx(1 - np.sum(diff ** 2) / np.sum(x.astype(float) ** 2))


def test_color_uses_all_planes():
    a = PnmImage.color(np.zeros((2, 2, 3), dtype=np.uint8) + 10)
    rgb = a.interleaved().copy()
    rgb[0, 0, 2] = 14
    report = compare(a, PnmImage.color(rgb))
    assert report.mse == pytest.approx(16 / 12)


def test_black_cover():
    black = PnmImage.gray(np.zeros((3, 3), dtype=np.uint8))
    assert compare(black, black).image_fidelity == 1
    other = PnmImage.gray(np.eye(3, dtype=np.uint8))
    assert compare(black, other).image_fidelity == -math.inf


def test_mismatch():
    with pytest.raises(ValueError):
        compare(PnmImage.gray(np.zeros((2, 2))), PnmImage.gray(np.zeros((2, 3))))
    with pytest.raises(ValueError):
        compare(PnmImage.gray(np.zeros((2, 2))), PnmImage.color(np.zeros((2, 2, 3))))


pairs = st.integers(1, 10).flatmap(lambda n: st.tuples(
    arrays(np.uint8, (n, n)), arrays(np.uint8, (n, n))))


@given(pairs)
def test_properties(pair):
    a, b = (PnmImage.gray(p) for p in pair)
    ab, ba = compare(a, b), compare(b, a)
    assert ab.mse == ba.mse >= 0
    assert ab.image_fidelity <= 1
    assert (ab.image_fidelity == 1) == (a == b)
    assert math.isinf(ab.psnr) == (ab.mse == 0)


def test_psnr_strictly_decreasing():
    a = np.full((8, 8), 100, dtype=np.uint8)
    previous = math.inf
    for k in range(1, 40):
        b = a.copy()
        b.ravel()[:k] += 3
        psnr = compare(PnmImage.gray(a), PnmImage.gray(b)).psnr
        assert psnr < previous
        previous = psnr
