"""Little-endian wire container for compressed frames.

Layout: magic ``EMBC``, version byte, codec id byte, four u16 dims
(original height, original width, encoded height, encoded width), u8
quality, u32 payload length, payload bytes. Header is 19 bytes and always
counts toward the transmitted size.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

__all__ = ["Bitstream", "ContainerError", "HEADER_BYTES", "MAGIC", "VERSION"]

MAGIC = b"EMBC"
VERSION = 1
_HEADER_FMT = "<4sBBHHHHBI"
HEADER_BYTES = struct.calcsize(_HEADER_FMT)


class ContainerError(ValueError):
    """Malformed container framing."""


@dataclass(frozen=True)
class Bitstream:
    """Compressed frame plus the header needed to decode it standalone."""

    codec_id: int
    original_height: int
    original_width: int
    encoded_height: int
    encoded_width: int
    quality: int
    payload: bytes
    version: int = VERSION

    def __post_init__(self) -> None:
        for name in ("original_height", "original_width", "encoded_height", "encoded_width"):
            v = getattr(self, name)
            if not (1 <= v <= 0xFFFF):
                raise ContainerError(f"{name} out of u16 range: {v}")
        if not (0 <= self.codec_id <= 0xFF):
            raise ContainerError(f"codec_id out of byte range: {self.codec_id}")
        if not (1 <= self.quality <= 100):
            raise ContainerError(f"quality out of range [1, 100]: {self.quality}")

    @property
    def wire_bytes(self) -> int:
        """Total transmitted size: header plus payload."""
        return HEADER_BYTES + len(self.payload)

    def to_bytes(self) -> bytes:
        header = struct.pack(
            _HEADER_FMT,
            MAGIC,
            self.version,
            self.codec_id,
            self.original_height,
            self.original_width,
            self.encoded_height,
            self.encoded_width,
            self.quality,
            len(self.payload),
        )
        return header + self.payload

    @classmethod
    def from_bytes(cls, data: bytes) -> "Bitstream":
        if len(data) < HEADER_BYTES:
            raise ContainerError(f"container: truncated header ({len(data)} bytes)")
        magic, version, codec_id, oh, ow, eh, ew, quality, plen = struct.unpack(
            _HEADER_FMT, data[:HEADER_BYTES]
        )
        if magic != MAGIC:
            raise ContainerError(f"container: bad magic {magic!r}")
        if version != VERSION:
            raise ContainerError(f"container: unsupported version {version}")
        payload = data[HEADER_BYTES : HEADER_BYTES + plen]
        if len(payload) != plen:
            raise ContainerError(
                f"container: payload truncated (declared {plen}, got {len(payload)})"
            )
        return cls(
            codec_id=codec_id,
            original_height=oh,
            original_width=ow,
            encoded_height=eh,
            encoded_width=ew,
            quality=quality,
            payload=payload,
            version=version,
        )
