"""Message digests over payloads and the authenticity check for stego images."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .codec import AuthHeader, Malformed, embed, extract
from .pnm import PnmImage

AUTHENTIC = "authentic"
FORGED = "forged"
MALFORMED = "malformed"


def digest(payload: bytes) -> bytes:
    """128-bit MD5 digest of the payload (RFC 1321)."""
    return hashlib.md5(bytes(payload)).digest()


@dataclass(frozen=True)
class Verdict:
    status: str
    extracted_digest: bytes | None = None
    recomputed_digest: bytes | None = None
    header: AuthHeader | None = None
    reason: str = ""

    @property
    def authentic(self) -> bool:
        return self.status == AUTHENTIC


def message_header(message: bytes) -> AuthHeader:
    # messages ride as a single row: width = length, height = 1
    if len(message) > 0xFFFF:
        raise ValueError(f"message of {len(message)} bytes exceeds the 65535-byte limit")
    return AuthHeader(len(message), 1, digest(message))


def image_header(payload: PnmImage) -> tuple[AuthHeader, bytes]:
    if payload.kind != "gray":
        raise ValueError("image payloads must be gray (PGM)")
    data = np.ascontiguousarray(payload.planes[0]).tobytes()
    return AuthHeader(payload.width, payload.height, digest(data)), data


def embed_message(cover: PnmImage, message: bytes) -> PnmImage:
    return embed(cover, message_header(message), message)


def embed_image(cover: PnmImage, payload: PnmImage) -> PnmImage:
    header, data = image_header(payload)
    return embed(cover, header, data)


def verify(stego: PnmImage) -> Verdict:
    try:
        header, payload = extract(stego)
    except Malformed as exc:
        return Verdict(MALFORMED, reason=str(exc))
    recomputed = digest(payload)
    status = AUTHENTIC if recomputed == header.digest else FORGED
    return Verdict(status, header.digest, recomputed, header)
