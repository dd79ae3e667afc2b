"""Exact integer DFT of 2x2 pixel blocks.

For a 2x2 block every twiddle factor is +1 or -1, so the transform is real and
integral:

    D(u, v) = sum_{x,y} f(x, y) * (-1)**(u*x + v*y)

Coefficients are kept unnormalized. The inverse divides by 4, and only yields
integer pixels when each signed sum is a multiple of 4.

Blocks are tuples ``(a, b, c, d)`` for pixels (0,0), (0,1), (1,0), (1,1) and
coefficients ``(d00, d01, d10, d11)``. The scalar functions here also accept
numpy arrays element-wise, apart from :func:`inverse`, which is scalar only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class FractionalFailure:
    """Inverse transform of coefficients whose pixels are not all integers."""

    numerators: tuple[int, int, int, int]

    @property
    def pixels(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, 4) for n in self.numerators)


def forward(block):
    a, b, c, d = block
    return (a + b + c + d,
            a - b + c - d,
            a + b - c - d,
            a - b - c + d)


def inverse_sums(coeffs):
    """Signed sums 4*p(x, y) of the inverse transform, one per pixel."""
    d00, d01, d10, d11 = coeffs
    return (d00 + d01 + d10 + d11,
            d00 - d01 + d10 - d11,
            d00 + d01 - d10 - d11,
            d00 - d01 - d10 + d11)


def inverse(coeffs) -> tuple[int, int, int, int] | FractionalFailure:
    sums = tuple(int(s) for s in inverse_sums(coeffs))
    if any(s % 4 for s in sums):
        return FractionalFailure(sums)
    return tuple(s // 4 for s in sums)


def plane_to_blocks(plane: np.ndarray) -> np.ndarray:
    """Split a plane into its 2x2 blocks in row-major order.

    Returns an int64 array of shape (nblocks, 4) holding (a, b, c, d). A
    trailing odd row or column is not part of any block.
    """
    h, w = plane.shape
    h2, w2 = h // 2, w // 2
    p = plane[:2 * h2, :2 * w2].astype(np.int64)
    blocks = p.reshape(h2, 2, w2, 2).transpose(0, 2, 1, 3).reshape(-1, 4)
    return blocks


def blocks_to_plane(blocks: np.ndarray, plane: np.ndarray) -> np.ndarray:
    """Write (nblocks, 4) pixel blocks back over the leading blocks of `plane`.

    Blocks past ``len(blocks)`` and any odd trailing row/column keep their
    values from `plane`. Returns a new array.
    """
    h, w = plane.shape
    h2, w2 = h // 2, w // 2
    full = plane_to_blocks(plane)
    full[:len(blocks)] = blocks
    out = plane.copy()
    out[:2 * h2, :2 * w2] = (full.reshape(h2, w2, 2, 2).transpose(0, 2, 1, 3)
                             .reshape(2 * h2, 2 * w2).astype(plane.dtype))
    return out


def forward_blocks(blocks: np.ndarray) -> np.ndarray:
    """Vectorized :func:`forward` over an (n, 4) array."""
    return np.stack(forward(blocks.T), axis=1)
