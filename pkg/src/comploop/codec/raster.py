"""8-bit RGB raster frames and binary PPM (P6) I/O."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["RasterImage", "read_ppm", "write_ppm"]


@dataclass(frozen=True)
class RasterImage:
    """Row-major 8-bit RGB frame.

    ``pixels`` has shape (height, width, 3) dtype uint8 and is treated as
    immutable; operations return new frames.
    """

    pixels: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        px = np.asarray(self.pixels)
        if px.dtype != np.uint8:
            raise ValueError(f"pixels must be uint8, got {px.dtype}")
        if px.ndim != 3 or px.shape[2] != 3:
            raise ValueError(f"pixels must have shape (h, w, 3), got {px.shape}")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError("image dimensions must be positive")
        px = np.ascontiguousarray(px)
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def height_px(self) -> int:
        return self.pixels.shape[0]

    @property
    def width_px(self) -> int:
        return self.pixels.shape[1]

    def tobytes(self) -> bytes:
        return self.pixels.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RasterImage):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )

    def __hash__(self) -> int:  # frozen dataclass with array field
        return hash((self.pixels.shape, self.pixels.tobytes()))


def write_ppm(image: RasterImage, path: str) -> None:
    header = f"P6\n{image.width_px} {image.height_px}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(image.tobytes())


def _read_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # Skips whitespace and '#' comment lines between header tokens.
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif c.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos : pos + 1].isspace():
        pos += 1
    if start == pos:
        raise ValueError("truncated PPM header")
    return data[start:pos], pos


def read_ppm(path: str) -> RasterImage:
    with open(path, "rb") as fh:
        data = fh.read()
    magic, pos = _read_token(data, 0)
    if magic != b"P6":
        raise ValueError(f"not a binary PPM (P6) file: magic {magic!r}")
    width_b, pos = _read_token(data, pos)
    height_b, pos = _read_token(data, pos)
    maxval_b, pos = _read_token(data, pos)
    width, height, maxval = int(width_b), int(height_b), int(maxval_b)
    if maxval != 255:
        raise ValueError(f"unsupported PPM maxval {maxval}, expected 255")
    pos += 1  # single whitespace byte after maxval
    expected = width * height * 3
    raw = data[pos : pos + expected]
    if len(raw) != expected:
        raise ValueError(f"PPM pixel data truncated: expected {expected} bytes, got {len(raw)}")
    px = np.frombuffer(raw, dtype=np.uint8).reshape(height, width, 3)
    return RasterImage(pixels=px)
