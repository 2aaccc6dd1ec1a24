"""Deterministic image codecs and the budget-constrained transcoder."""

from __future__ import annotations

from .container import Bitstream, ContainerError, HEADER_BYTES
from .dct_codec import decode_image, encode_image, tables_for_quality
from .entropy import EntropyDecodeError
from .raster import RasterImage, read_ppm, write_ppm
from .registry import (
    IDENTITY_CODEC,
    NATIVE_CODEC,
    CodecRegistrationError,
    UnknownCodecError,
    codec_names,
    get_codec,
    get_codec_by_byte,
    register_codec,
)
from .resample import VALID_DIVISORS, bilinear_resize, box_downsample
from .transcode import (
    CodecParams,
    InfeasibleBudgetError,
    TranscodeResult,
    measured_bpp,
    transcode_under_budget,
)

__all__ = [
    "Bitstream",
    "ContainerError",
    "HEADER_BYTES",
    "RasterImage",
    "read_ppm",
    "write_ppm",
    "encode",
    "decode",
    "downsample",
    "encode_image",
    "decode_image",
    "tables_for_quality",
    "EntropyDecodeError",
    "IDENTITY_CODEC",
    "NATIVE_CODEC",
    "CodecRegistrationError",
    "UnknownCodecError",
    "codec_names",
    "get_codec",
    "get_codec_by_byte",
    "register_codec",
    "VALID_DIVISORS",
    "bilinear_resize",
    "box_downsample",
    "CodecParams",
    "InfeasibleBudgetError",
    "TranscodeResult",
    "measured_bpp",
    "transcode_under_budget",
]


def encode(image: RasterImage, quality: int) -> Bitstream:
    """Encode with the native block-DCT codec."""
    return encode_image(image, quality)


def decode(stream: Bitstream) -> RasterImage:
    """Decode any registered codec's bitstream, dispatching on its id byte."""
    return get_codec_by_byte(stream.codec_id).decoder(stream)


def downsample(image: RasterImage, divisor: int) -> RasterImage:
    """Box-filter reduction by an integer divisor from {1, 2, 4, 8}."""
    return box_downsample(image, divisor)
