"""Distortion between a cover and its stego image: MSE, PSNR and image fidelity."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pnm import PnmImage

PEAK = 255


@dataclass(frozen=True)
class MetricsReport:
    mse: float
    psnr: float
    image_fidelity: float


def compare(a: PnmImage, b: PnmImage) -> MetricsReport:
    """Compare cover `a` against stego `b` over every sample of every plane.

    Sums are exact integers; each metric does a single division at the end.
    PSNR is ``inf`` for identical images. When the cover is all zeros the
    fidelity ratio is undefined, so it is reported as 1 for identical images
    and ``-inf`` otherwise.
    """
    if a.kind != b.kind or (a.width, a.height) != (b.width, b.height):
        raise ValueError(
            f"image mismatch: {a.kind} {a.width}x{a.height} vs {b.kind} {b.width}x{b.height}")
    x = np.stack(a.planes).astype(np.int64)
    y = np.stack(b.planes).astype(np.int64)
    n = x.size
    sse = int(((x - y) ** 2).sum())
    energy = int((x ** 2).sum())

    if n == 0 or sse == 0:
        return MetricsReport(0.0, math.inf, 1.0)
    psnr = 10 * math.log10(PEAK * PEAK * n / sse)
    fidelity = 1 - sse / energy if energy else -math.inf
    return MetricsReport(sse / n, psnr, fidelity)
