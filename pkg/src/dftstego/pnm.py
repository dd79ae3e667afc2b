"""Netpbm reader/writer for 8-bit gray (PGM) and color (PPM) images.

Input may be ASCII (P2/P3) or binary (P5/P6); output is always binary.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

MAGICS = {b"P2": ("gray", False), b"P3": ("color", False),
          b"P5": ("gray", True), b"P6": ("color", True)}
_WHITESPACE = b" \t\r\n\v\f"


class PnmError(ValueError):
    pass


@dataclass
class PnmImage:
    """An 8-bit netpbm image held as one (H, W) uint8 array per channel.

    Gray images have a single plane; color images have three, in R, G, B order.
    """

    kind: str
    planes: list[np.ndarray]

    def __post_init__(self):
        if self.kind not in ("gray", "color"):
            raise ValueError(f"unknown image kind {self.kind!r}")
        expected = 1 if self.kind == "gray" else 3
        if len(self.planes) != expected:
            raise ValueError(f"{self.kind} image needs {expected} plane(s), got {len(self.planes)}")
        planes = []
        for p in self.planes:
            p = np.asarray(p)
            if p.ndim != 2:
                raise ValueError("planes must be 2-D")
            if p.dtype != np.uint8:
                if p.size and (p.min() < 0 or p.max() > 255):
                    raise ValueError("samples must lie in [0, 255]")
                p = p.astype(np.uint8)
            planes.append(p)
        if len({p.shape for p in planes}) != 1:
            raise ValueError("all planes must share width and height")
        self.planes = planes

    @classmethod
    def gray(cls, pixels) -> PnmImage:
        return cls("gray", [np.asarray(pixels)])

    @classmethod
    def color(cls, rgb) -> PnmImage:
        rgb = np.asarray(rgb)
        return cls("color", [rgb[..., i] for i in range(3)])

    @property
    def height(self) -> int:
        return self.planes[0].shape[0]

    @property
    def width(self) -> int:
        return self.planes[0].shape[1]

    def copy(self) -> PnmImage:
        return PnmImage(self.kind, [p.copy() for p in self.planes])

    def interleaved(self) -> np.ndarray:
        """Samples in raster order: (H, W) for gray, (H, W, 3) for color."""
        if self.kind == "gray":
            return self.planes[0]
        return np.stack(self.planes, axis=-1)

    def __eq__(self, other):
        if not isinstance(other, PnmImage):
            return NotImplemented
        return self.kind == other.kind and all(
            a.shape == b.shape and np.array_equal(a, b)
            for a, b in zip(self.planes, other.planes))


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read `count` whitespace-separated header tokens, skipping '#' comments.

    Returns the tokens and the offset just past the single whitespace byte
    that terminates the last token.
    """
    tokens = []
    pos, n = 0, len(data)
    while len(tokens) < count:
        while pos < n and data[pos] in _WHITESPACE:
            pos += 1
        if pos >= n:
            raise PnmError("truncated header")
        if data[pos] == ord("#"):
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
            continue
        start = pos
        while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
            pos += 1
        tokens.append(data[start:pos])
    if pos < n and data[pos] in _WHITESPACE:
        pos += 1
    return tokens, pos


def _to_int(token: bytes, what: str) -> int:
    if not token.isdigit():
        raise PnmError(f"non-numeric {what} in header: {token!r}")
    return int(token)


def parse_pnm(data: bytes) -> PnmImage:
    magic = data[:2]
    if magic not in MAGICS:
        raise PnmError(f"unsupported magic {magic!r}")
    kind, binary = MAGICS[magic]
    tokens, pos = _header_tokens(data, 4)
    if tokens[0] != magic:
        raise PnmError(f"malformed magic {tokens[0]!r}")
    width = _to_int(tokens[1], "width")
    height = _to_int(tokens[2], "height")
    maxval = _to_int(tokens[3], "maxval")
    if maxval != 255:
        raise PnmError(f"only maxval 255 is supported, got {maxval}")

    channels = 1 if kind == "gray" else 3
    count = width * height * channels
    if binary:
        raster = data[pos:pos + count]
        if len(raster) < count:
            raise PnmError(f"truncated raster: expected {count} bytes, got {len(raster)}")
        samples = np.frombuffer(raster, dtype=np.uint8)
    else:
        # comments are not allowed in the raster, so a plain split is enough
        words = data[pos:].split()
        if len(words) < count:
            raise PnmError(f"truncated raster: expected {count} samples, got {len(words)}")
        try:
            values = np.array([int(w) for w in words[:count]], dtype=np.int64)
        except ValueError as exc:
            raise PnmError(f"non-numeric sample in raster: {exc}") from None
        if values.size and (values.min() < 0 or values.max() > 255):
            raise PnmError("sample exceeds maxval")
        samples = values.astype(np.uint8)

    samples = samples.reshape(height, width, channels)
    return PnmImage(kind, [samples[..., i].copy() for i in range(channels)])


def write_pnm(image: PnmImage) -> bytes:
    magic = b"P5" if image.kind == "gray" else b"P6"
    header = b"%s\n%d %d\n255\n" % (magic, image.width, image.height)
    return header + np.ascontiguousarray(image.interleaved()).tobytes()


def read_pnm(path) -> PnmImage:
    return parse_pnm(Path(path).read_bytes())


def save_pnm(image: PnmImage, path) -> None:
    Path(path).write_bytes(write_pnm(image))
