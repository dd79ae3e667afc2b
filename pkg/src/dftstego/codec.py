"""Hide a bitstream in the non-DC coefficients of 2x2 block DFTs.

Every 2x2 block of every plane carries 9 bits: three bits in each of the
coefficients d01, d10, d11. A coefficient stores its 3-bit field in bits 1-3 of
its residue mod 16. Bit 0 is a parity bit shared by all three coefficients of
a block. Keeping the parities equal is what lets the DC coefficient restore
integral pixels after embedding (see :func:`readjust_dc`). Extraction reads
``(d mod 16) >> 1`` from each coefficient and never looks at d00, so any DC
correction leaves the payload intact.

The bitstream is a 160-bit header (width:16, height:16, digest:128) followed by
the payload bytes. Bytes are packed MSB-first and consumed 9 bits per block.
Planes go in R, G, B order, blocks row-major, coefficients d01, d10, d11.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .block_dft import (
    blocks_to_plane, forward, forward_blocks, inverse, inverse_sums, plane_to_blocks,
)
from .pnm import PnmImage

HEADER_BITS = 160
BITS_PER_COEFF = 3
BITS_PER_BLOCK = 9
RESIDUE_MOD = 16


class StegoError(ValueError):
    pass


class PayloadTooLarge(StegoError):
    pass


class Malformed(StegoError):
    pass


class Unembeddable(StegoError):
    """No DC value brings every pixel of the block back into [0, 255]."""

    def __init__(self, message, plane=None, row=None, col=None):
        self.plane, self.row, self.col = plane, row, col
        if row is not None:
            message = f"{message} (plane {plane}, block row {row}, block col {col})"
        super().__init__(message)


@dataclass(frozen=True)
class EmbedLayout:
    payload_positions: tuple[int, ...] = (1, 2, 3)
    parity_position: int = 0
    coeff_order: tuple[str, ...] = ("d01", "d10", "d11")
    block_order: str = "row-major"
    plane_order: str = "RGB"

    def __post_init__(self):
        if self.parity_position in self.payload_positions:
            raise ValueError("parity position overlaps payload positions")
        if len(self.payload_positions) != BITS_PER_COEFF:
            raise ValueError("exactly three payload bits per coefficient")
        if max(*self.payload_positions, self.parity_position) > 4:
            raise ValueError("bit positions must be <= 4")


DEFAULT_LAYOUT = EmbedLayout()


def _check_layout(layout: EmbedLayout) -> None:
    if layout != DEFAULT_LAYOUT:
        raise NotImplementedError("only the default embedding layout is implemented")


@dataclass(frozen=True)
class AuthHeader:
    payload_width: int
    payload_height: int
    digest: bytes

    def __post_init__(self):
        for v in (self.payload_width, self.payload_height):
            if not 0 <= v <= 0xFFFF:
                raise ValueError(f"payload dimension {v} does not fit in 16 bits")
        if len(self.digest) != 16:
            raise ValueError("digest must be 16 bytes")

    @property
    def payload_size(self) -> int:
        return self.payload_width * self.payload_height

    def to_bytes(self) -> bytes:
        return struct.pack(">HH", self.payload_width, self.payload_height) + bytes(self.digest)

    @classmethod
    def from_bytes(cls, raw: bytes) -> AuthHeader:
        width, height = struct.unpack(">HH", raw[:4])
        return cls(width, height, bytes(raw[4:20]))


class BitCursor:
    """MSB-first bit reader over a byte string."""

    def __init__(self, data: bytes):
        self.data = bytes(data)
        self.offset = 0

    @property
    def remaining(self) -> int:
        return 8 * len(self.data) - self.offset

    def read(self, nbits: int) -> int:
        if nbits > self.remaining:
            raise EOFError(f"requested {nbits} bits, {self.remaining} left")
        value = 0
        for _ in range(nbits):
            byte = self.data[self.offset >> 3]
            value = (value << 1) | ((byte >> (7 - (self.offset & 7))) & 1)
            self.offset += 1
        return value

    def read_bytes(self, n: int) -> bytes:
        if self.offset % 8 == 0:
            if 8 * n > self.remaining:
                raise EOFError(f"requested {n} bytes, {self.remaining // 8} left")
            start = self.offset // 8
            self.offset += 8 * n
            return self.data[start:start + n]
        return bytes(self.read(8) for _ in range(n))


def blocks_per_plane(image: PnmImage) -> int:
    return (image.width // 2) * (image.height // 2)


def capacity_bits(image: PnmImage) -> int:
    return BITS_PER_BLOCK * blocks_per_plane(image) * len(image.planes)


def payload_capacity(image: PnmImage) -> int:
    """Payload bytes that fit after the header."""
    return max(0, (capacity_bits(image) - HEADER_BITS) // 8)


# -- per-coefficient and per-block operations --------------------------------

def embed_coefficient(d, bits, parity):
    """Nearest value to `d` whose residue mod 16 is ``parity + 2*bits``.

    Ties (distance 8) go to the larger value, so the change is in [-7, 8].
    Works element-wise on numpy arrays.
    """
    delta = (parity + 2 * bits - d) % RESIDUE_MOD
    return d + delta - RESIDUE_MOD * (delta > RESIDUE_MOD // 2)


def coefficient_bits(d):
    return (d % RESIDUE_MOD) >> 1 & 0b111


def choose_parity(coeffs, fields) -> int:
    """Parity bit giving the smaller total change to d01, d10, d11 (ties -> 0)."""
    ac = coeffs[1:]
    cost = [sum(abs(embed_coefficient(d, b, p) - d) for d, b in zip(ac, fields))
            for p in (0, 1)]
    return int(cost[1] < cost[0])


def _dc_divisibility_step(total):
    # smallest |k| making total + k a multiple of 4; k = +2 on the tie
    return np.array([0, -1, 2, 1])[total % 4]


def readjust_dc(coeffs):
    """Change only d00 so the inverse transform gives integer pixels in [0, 255].

    d00 first moves by the smallest step that makes the pixel sums divisible by
    4. Each further step of +-4 then shifts every pixel by +-1 until the block
    fits. Raises :class:`Unembeddable` if the pixel span exceeds 255.
    """
    d00, d01, d10, d11 = (int(c) for c in coeffs)
    if not (d01 - d10) % 2 == (d10 - d11) % 2 == 0:
        raise ValueError("non-DC coefficients must share parity")
    d00 += int(_dc_divisibility_step(d00 + d01 + d10 + d11))
    pixels = inverse((d00, d01, d10, d11))
    lo, hi = min(pixels), max(pixels)
    if hi - lo > 255:
        raise Unembeddable(f"pixel span {hi - lo} exceeds 255")
    if lo < 0:
        d00 += 4 * -lo
    elif hi > 255:
        d00 -= 4 * (hi - 255)
    return (d00, d01, d10, d11)


def split_fields(bits9: int) -> tuple[int, int, int]:
    return (bits9 >> 6) & 7, (bits9 >> 3) & 7, bits9 & 7


def embed_block(block, fields, parity=None) -> tuple[int, int, int, int]:
    """Embed three 3-bit fields into one pixel block; returns the new pixels.

    `parity` forces the shared low bit; by default :func:`choose_parity` picks it.
    """
    coeffs = forward(tuple(int(p) for p in block))
    if parity is None:
        parity = choose_parity(coeffs, fields)
    marked = (coeffs[0],) + tuple(
        embed_coefficient(d, b, parity) for d, b in zip(coeffs[1:], fields))
    assert all(abs(m - d) <= 8 for m, d in zip(marked[1:], coeffs[1:]))
    return inverse(readjust_dc(marked))


def extract_block(block) -> tuple[int, int, int]:
    coeffs = forward(tuple(int(p) for p in block))
    return tuple(coefficient_bits(d) for d in coeffs[1:])


# -- vectorized paths ---------------------------------------------------------

def embed_blocks(blocks: np.ndarray, fields: np.ndarray, parity=None):
    """Vectorized :func:`embed_block` over (n, 4) blocks and (n, 3) fields.

    Returns ``(pixels, ok)``. ``ok`` is False for blocks that cannot be
    embedded. Their rows in ``pixels`` are left unchanged.
    """
    blocks = np.asarray(blocks, dtype=np.int64)
    fields = np.asarray(fields, dtype=np.int64)
    coeffs = forward_blocks(blocks)
    ac = coeffs[:, 1:]
    cand = [embed_coefficient(ac, fields, p) for p in (0, 1)]
    if parity is None:
        cost = [np.abs(c - ac).sum(axis=1) for c in cand]
        use_odd = cost[1] < cost[0]
    else:
        use_odd = np.full(len(blocks), bool(parity))
    marked = np.where(use_odd[:, None], cand[1], cand[0])
    assert np.all(np.abs(marked - ac) <= 8)

    d00 = coeffs[:, 0] + _dc_divisibility_step(coeffs[:, 0] + marked.sum(axis=1))
    sums = np.stack(inverse_sums((d00, marked[:, 0], marked[:, 1], marked[:, 2])), axis=1)
    pixels = sums // 4
    lo, hi = pixels.min(axis=1), pixels.max(axis=1)
    ok = hi - lo <= 255
    shift = np.where(lo < 0, -lo, np.where(hi > 255, 255 - hi, 0))
    pixels += shift[:, None]
    pixels[~ok] = blocks[~ok]
    return pixels, ok


def bytes_to_fields(data: bytes, nblocks: int) -> np.ndarray:
    """Split a byte string into (nblocks, 3) 3-bit fields, zero-padding the tail."""
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    padded = np.zeros(nblocks * BITS_PER_BLOCK, dtype=np.int64)
    padded[:len(bits)] = bits
    triples = padded.reshape(-1, BITS_PER_COEFF)
    return (triples @ np.array([4, 2, 1])).reshape(nblocks, 3)


def fields_to_bytes(fields: np.ndarray) -> bytes:
    fields = np.asarray(fields, dtype=np.int64).reshape(-1, 1)
    bits = (fields >> np.array([2, 1, 0])) & 1
    bits = bits.ravel()
    bits = bits[:len(bits) - len(bits) % 8]
    return np.packbits(bits.astype(np.uint8)).tobytes()


def embed(cover: PnmImage, header: AuthHeader, payload: bytes,
          layout: EmbedLayout = DEFAULT_LAYOUT) -> PnmImage:
    """Embed header + payload into a copy of `cover`."""
    _check_layout(layout)
    payload = bytes(payload)
    if len(payload) != header.payload_size:
        raise ValueError(f"header declares {header.payload_size} payload bytes, got {len(payload)}")
    stream = header.to_bytes() + payload
    nbits = 8 * len(stream)
    if nbits > capacity_bits(cover):
        raise PayloadTooLarge(
            f"{len(payload)} payload bytes exceed capacity of {payload_capacity(cover)} bytes")

    per_plane = blocks_per_plane(cover)
    nblocks = -(-nbits // BITS_PER_BLOCK)
    fields = bytes_to_fields(stream, nblocks)
    out = cover.copy()
    for index, plane in enumerate(cover.planes):
        start = index * per_plane
        if start >= nblocks:
            break
        plane_fields = fields[start:start + per_plane]
        blocks = plane_to_blocks(plane)[:len(plane_fields)]
        pixels, ok = embed_blocks(blocks, plane_fields)
        if not ok.all():
            bad = int(np.argmin(ok))
            row, col = divmod(bad, cover.width // 2)
            raise Unembeddable("embedded block does not fit in [0, 255]", index, row, col)
        out.planes[index] = blocks_to_plane(pixels, plane)
    return out


def extract_fields(stego: PnmImage) -> np.ndarray:
    """All 3-bit fields of an image in traversal order, shape (nblocks, 3)."""
    fields = [coefficient_bits(forward_blocks(plane_to_blocks(p))[:, 1:]) for p in stego.planes]
    return np.concatenate(fields) if fields else np.zeros((0, 3), dtype=np.int64)


def extract(stego: PnmImage, layout: EmbedLayout = DEFAULT_LAYOUT) -> tuple[AuthHeader, bytes]:
    _check_layout(layout)
    capacity = capacity_bits(stego)
    if capacity < HEADER_BITS:
        raise Malformed(f"image carries {capacity} bits, fewer than the {HEADER_BITS}-bit header")
    cursor = BitCursor(fields_to_bytes(extract_fields(stego)))
    header = AuthHeader.from_bytes(cursor.read_bytes(HEADER_BITS // 8))
    if HEADER_BITS + 8 * header.payload_size > capacity:
        raise Malformed(
            f"header declares {header.payload_width}x{header.payload_height} payload, "
            f"beyond capacity of {payload_capacity(stego)} bytes")
    return header, cursor.read_bytes(header.payload_size)
