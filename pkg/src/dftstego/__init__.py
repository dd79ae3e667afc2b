"""Payload embedding and image authentication in the 2x2 block DFT domain."""

from .auth import Verdict, digest, embed_image, embed_message, verify
from .block_dft import FractionalFailure, forward, inverse
from .codec import (
    DEFAULT_LAYOUT, AuthHeader, EmbedLayout, Malformed, PayloadTooLarge, Unembeddable,
    capacity_bits, embed, extract, payload_capacity,
)
from .metrics import MetricsReport, compare
from .pnm import PnmError, PnmImage, parse_pnm, read_pnm, save_pnm, write_pnm

__all__ = [
    "AuthHeader", "DEFAULT_LAYOUT", "EmbedLayout", "FractionalFailure", "Malformed",
    "MetricsReport", "PayloadTooLarge", "PnmError", "PnmImage", "Unembeddable", "Verdict",
    "capacity_bits", "compare", "digest", "embed", "embed_image", "embed_message", "extract",
    "forward", "inverse", "parse_pnm", "payload_capacity", "read_pnm", "save_pnm", "verify",
    "write_pnm",
]
