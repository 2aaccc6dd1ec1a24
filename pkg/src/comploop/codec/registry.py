"""Pluggable codec registry.

Each codec exposes encode/decode over the shared container format. The
native block-DCT codec and a distortion-free identity codec ship built in;
external codecs can be registered under new ids at runtime.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import dct_codec
from .container import Bitstream
from .raster import RasterImage
from .resample import bilinear_resize

__all__ = [
    "CodecEntry",
    "CodecRegistrationError",
    "UnknownCodecError",
    "register_codec",
    "get_codec",
    "get_codec_by_byte",
    "codec_names",
    "NATIVE_CODEC",
    "IDENTITY_CODEC",
]

EncoderFn = Callable[..., Bitstream]
DecoderFn = Callable[[Bitstream], RasterImage]


class CodecRegistrationError(ValueError):
    """Codec id collision or malformed registration."""


class UnknownCodecError(KeyError):
    """Codec id not present in the registry."""


@dataclass(frozen=True)
class CodecEntry:
    name: str
    byte_id: int
    encoder: EncoderFn
    decoder: DecoderFn
    # Fast exact rate oracle; None means the search prices candidates by
    # running the encoder itself.
    rate_probe: Optional[Callable[[RasterImage], Callable[[int], int]]] = None
    # Fixed-rate pseudo codecs (identity) report this bpp regardless of content.
    fixed_bpp: Optional[float] = None


_REGISTRY: dict[str, CodecEntry] = {}
_BYTE_IDS: dict[int, str] = {}


def _add(entry: CodecEntry) -> None:
    if entry.name in _REGISTRY:
        raise CodecRegistrationError(f"codec id {entry.name!r} already registered")
    if entry.byte_id in _BYTE_IDS:
        raise CodecRegistrationError(f"codec byte {entry.byte_id} already registered")
    _REGISTRY[entry.name] = entry
    _BYTE_IDS[entry.byte_id] = entry.name


def register_codec(name: str, encoder: EncoderFn, decoder: DecoderFn) -> None:
    """Register an external codec; it becomes selectable by id everywhere."""
    byte_id = max(_BYTE_IDS) + 1
    if byte_id > 0xFF:
        raise CodecRegistrationError("codec byte space exhausted")
    _add(CodecEntry(name=name, byte_id=byte_id, encoder=encoder, decoder=decoder))


def get_codec(name: str) -> CodecEntry:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownCodecError(
            f"unknown codec {name!r}; registered: {sorted(_REGISTRY)}"
        ) from None


def get_codec_by_byte(byte_id: int) -> CodecEntry:
    try:
        return _REGISTRY[_BYTE_IDS[byte_id]]
    except KeyError:
        raise UnknownCodecError(f"no codec registered for byte id {byte_id}") from None


def codec_names() -> list[str]:
    return sorted(_REGISTRY)


# --- built-ins ---------------------------------------------------------------

IDENTITY_CODEC = "identity"
NATIVE_CODEC = "dct8"

_IDENTITY_BYTE = 0


def _identity_encode(
    image: RasterImage, quality: int, original_size: tuple[int, int] | None = None
) -> Bitstream:
    oh, ow = original_size if original_size is not None else (image.height_px, image.width_px)
    return Bitstream(
        codec_id=_IDENTITY_BYTE,
        original_height=oh,
        original_width=ow,
        encoded_height=image.height_px,
        encoded_width=image.width_px,
        quality=quality,
        payload=image.tobytes(),
    )


def _identity_decode(stream: Bitstream) -> RasterImage:
    expected = stream.encoded_height * stream.encoded_width * 3
    if len(stream.payload) != expected:
        raise ValueError(
            f"payload: identity payload size {len(stream.payload)} != {expected}"
        )
    px = np.frombuffer(stream.payload, dtype=np.uint8).reshape(
        stream.encoded_height, stream.encoded_width, 3
    )
    if (stream.encoded_height, stream.encoded_width) != (
        stream.original_height,
        stream.original_width,
    ):
        px = np.rint(
            bilinear_resize(px, stream.original_height, stream.original_width)
        ).clip(0, 255).astype(np.uint8)
    return RasterImage(pixels=px.copy())


def _dct_rate_probe(image: RasterImage) -> Callable[[int], int]:
    return dct_codec.RateProbe(image).size_bytes


_add(
    CodecEntry(
        name=IDENTITY_CODEC,
        byte_id=_IDENTITY_BYTE,
        encoder=_identity_encode,
        decoder=_identity_decode,
        fixed_bpp=24.0,
    )
)
_add(
    CodecEntry(
        name=NATIVE_CODEC,
        byte_id=dct_codec.DCT_CODEC_ID,
        encoder=dct_codec.encode_image,
        decoder=dct_codec.decode_image,
        rate_probe=_dct_rate_probe,
    )
)
