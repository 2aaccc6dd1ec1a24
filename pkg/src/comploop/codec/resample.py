"""Deterministic resampling: box-filter reduction and bilinear enlargement."""

from __future__ import annotations

import numpy as np

from .raster import RasterImage

__all__ = ["box_downsample", "bilinear_resize", "VALID_DIVISORS"]

VALID_DIVISORS = (1, 2, 4, 8)


def box_downsample(image: RasterImage, divisor: int) -> RasterImage:
    """Average over divisor x divisor cells; output dims are ceil(dim / r).

    Edge cells short of a full window are padded by edge replication before
    averaging. Rounding is half-up.
    """
    if divisor not in VALID_DIVISORS:
        raise ValueError(f"resolution divisor must be one of {VALID_DIVISORS}, got {divisor}")
    if divisor == 1:
        return image
    h, w = image.height_px, image.width_px
    oh, ow = -(-h // divisor), -(-w // divisor)
    pad_h, pad_w = oh * divisor - h, ow * divisor - w
    px = np.pad(image.pixels, ((0, pad_h), (0, pad_w), (0, 0)), mode="edge").astype(np.float64)
    cells = px.reshape(oh, divisor, ow, divisor, 3).mean(axis=(1, 3))
    return RasterImage(pixels=np.floor(cells + 0.5).clip(0, 255).astype(np.uint8))


def bilinear_resize(pixels: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Bilinear resize of an (h, w, c) float or uint8 array to (out_h, out_w, c).

    Uses the half-pixel-center convention. Returns float64; callers round.
    """
    src = pixels.astype(np.float64)
    h, w = src.shape[:2]
    if (h, w) == (out_h, out_w):
        return src
    ys = (np.arange(out_h) + 0.5) * (h / out_h) - 0.5
    xs = (np.arange(out_w) + 0.5) * (w / out_w) - 0.5
    y0 = np.clip(np.floor(ys), 0, h - 1).astype(np.int64)
    x0 = np.clip(np.floor(xs), 0, w - 1).astype(np.int64)
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    wy = np.clip(ys - y0, 0.0, 1.0)[:, None, None]
    wx = np.clip(xs - x0, 0.0, 1.0)[None, :, None]
    top = src[y0][:, x0] * (1 - wx) + src[y0][:, x1] * wx
    bot = src[y1][:, x0] * (1 - wx) + src[y1][:, x1] * wx
    return top * (1 - wy) + bot * wy
