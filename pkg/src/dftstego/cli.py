"""Command-line interface.

    dftstego capacity --cover cover.pgm
    dftstego embed    --cover cover.pgm (--payload img.pgm | --message-file msg.txt) --out stego.pgm
    dftstego extract  --stego stego.pgm --out payload
    dftstego verify   --stego stego.pgm
    dftstego metrics  --a cover.pgm --b stego.pgm

verify exits 0 when authentic, 1 when forged, 2 when malformed. Every other
failure also exits 2 with a one-line diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import auth, codec, metrics
from .pnm import PnmError, PnmImage, read_pnm, save_pnm

EXIT_OK, EXIT_FORGED, EXIT_ERROR = 0, 1, 2


def _print(key, value):
    print(f"{key}: {value}")


def cmd_capacity(args):
    cover = read_pnm(args.cover)
    total = codec.capacity_bits(cover) // 8
    print(f"total: {total} bytes, payload: {codec.payload_capacity(cover)} bytes")
    return EXIT_OK


def cmd_embed(args):
    cover = read_pnm(args.cover)
    if args.payload:
        header, data = auth.image_header(read_pnm(args.payload))
    else:
        data = Path(args.message_file).read_bytes()
        header = auth.message_header(data)
    stego = codec.embed(cover, header, data)
    save_pnm(stego, args.out)
    _print("payload", f"{header.payload_width}x{header.payload_height}")
    _print("used", f"{codec.HEADER_BITS // 8 + len(data)} bytes")
    _print("capacity", f"{codec.capacity_bits(cover) // 8} bytes")
    _print("digest", header.digest.hex())
    return EXIT_OK


def cmd_extract(args):
    header, data = codec.extract(read_pnm(args.stego))
    # a single row is a message; anything taller is a gray image
    if header.payload_height > 1:
        pixels = np.frombuffer(data, dtype=np.uint8)
        img = PnmImage.gray(pixels.reshape(header.payload_height, header.payload_width))
        save_pnm(img, args.out)
        _print("type", "image")
    else:
        Path(args.out).write_bytes(data)
        _print("type", "message")
    _print("width", header.payload_width)
    _print("height", header.payload_height)
    _print("digest", header.digest.hex())
    return EXIT_OK


def cmd_verify(args):
    verdict = auth.verify(read_pnm(args.stego))
    _print("status", verdict.status)
    if verdict.status == auth.MALFORMED:
        _print("reason", verdict.reason)
        return EXIT_ERROR
    _print("extracted", verdict.extracted_digest.hex())
    _print("recomputed", verdict.recomputed_digest.hex())
    return EXIT_OK if verdict.authentic else EXIT_FORGED


def _fmt(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.6f}"


def cmd_metrics(args):
    report = metrics.compare(read_pnm(args.a), read_pnm(args.b))
    _print("mse", _fmt(report.mse))
    _print("psnr", _fmt(report.psnr))
    _print("if", _fmt(report.image_fidelity))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dftstego",
        description="Hide and authenticate payloads in PNM images via 2x2 block DFT.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="show embedding capacity of a cover")
    p.add_argument("--cover", required=True)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("embed", help="embed a gray image or message into a cover")
    p.add_argument("--cover", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--payload", help="gray PGM image to embed")
    group.add_argument("--message-file", help="raw bytes to embed")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover the embedded payload")
    p.add_argument("--stego", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify", help="check the embedded digest")
    p.add_argument("--stego", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("metrics", help="MSE, PSNR and IF between two images")
    p.add_argument("--a", required=True, help="cover image")
    p.add_argument("--b", required=True, help="stego image")
    p.set_defaults(func=cmd_metrics)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except (OSError, PnmError, codec.StegoError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
