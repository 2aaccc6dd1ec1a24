"""Budget-constrained transcoding: pick the least destructive (r, q).

The search walks the resolution ladder from full size down. At each
divisor it finds the highest quality whose verified wire size fits the
budget (binary search plus an upward re-verification walk, so small rate
non-monotonicities near a boundary cannot produce an infeasible answer).
The first divisor with any feasible quality wins: the result is the
lexicographic maximum preferring full resolution, then quality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..channel_budget import BppBudget
from .container import HEADER_BYTES
from .raster import RasterImage
from .registry import CodecEntry, get_codec
from .resample import VALID_DIVISORS, box_downsample

__all__ = [
    "CodecParams",
    "TranscodeResult",
    "InfeasibleBudgetError",
    "measured_bpp",
    "transcode_under_budget",
]


class InfeasibleBudgetError(ValueError):
    """Even the most aggressive configuration exceeds the budget."""

    def __init__(self, budget_bpp: float, min_achievable_bpp: float):
        self.budget_bpp = budget_bpp
        self.min_achievable_bpp = min_achievable_bpp
        super().__init__(
            f"budget {budget_bpp} bpp infeasible; codec floor is "
            f"{min_achievable_bpp:.6f} bpp"
        )


@dataclass(frozen=True)
class CodecParams:
    quality: int
    resolution_divisor: int

    def __post_init__(self) -> None:
        if not (1 <= self.quality <= 100):
            raise ValueError(f"quality must be in [1, 100], got {self.quality}")
        if self.resolution_divisor not in VALID_DIVISORS:
            raise ValueError(
                f"resolution divisor must be one of {VALID_DIVISORS}, "
                f"got {self.resolution_divisor}"
            )


@dataclass(frozen=True)
class TranscodeResult:
    decoded: RasterImage = field(repr=False)
    achieved_bpp: float
    chosen: CodecParams
    payload_bytes: int

    def __post_init__(self) -> None:
        pixels = self.decoded.height_px * self.decoded.width_px
        expected = self.payload_bytes * 8 / pixels
        if not math.isclose(self.achieved_bpp, expected, rel_tol=0, abs_tol=1e-12):
            raise ValueError(
                f"achieved_bpp {self.achieved_bpp} inconsistent with "
                f"{self.payload_bytes} bytes over {pixels} px"
            )


def measured_bpp(payload_bytes: int, original_dims: tuple[int, int]) -> float:
    """Bits per pixel of a payload over the ORIGINAL pixel count."""
    h, w = original_dims
    if h < 1 or w < 1:
        raise ValueError(f"dims must be positive, got {original_dims}")
    return payload_bytes * 8 / (h * w)


def _target_bits(budget: float, h: int, w: int) -> float:
    if budget < 0:
        raise ValueError(f"budget must be nonnegative, got {budget}")
    return budget * h * w


def _fixed_rate_result(
    image: RasterImage, entry: CodecEntry, budget: float
) -> "TranscodeResult":
    h, w = image.height_px, image.width_px
    if entry.fixed_bpp > budget:
        raise InfeasibleBudgetError(budget, entry.fixed_bpp)
    stream = entry.encoder(image, 100, original_size=(h, w))
    decoded = entry.decoder(stream)
    payload_bytes = int(round(entry.fixed_bpp * h * w / 8))
    return TranscodeResult(
        decoded=decoded,
        achieved_bpp=measured_bpp(payload_bytes, (h, w)),
        chosen=CodecParams(quality=100, resolution_divisor=1),
        payload_bytes=payload_bytes,
    )


def transcode_under_budget(
    image: RasterImage,
    budget: float | BppBudget,
    codec: str = "dct8",
) -> TranscodeResult:
    """Compress under the bpp budget, preferring resolution, then quality.

    Raises :class:`InfeasibleBudgetError` (carrying the codec's floor bpp)
    when no (r, q) fits. Wire size, container header included, is what is
    charged against the budget.
    """
    if isinstance(budget, BppBudget):
        budget = budget.target_bpp
    entry = get_codec(codec)
    h, w = image.height_px, image.width_px
    if entry.fixed_bpp is not None:
        return _fixed_rate_result(image, entry, budget)

    limit_bits = _target_bits(budget, h, w)
    min_size: int | None = None
    for divisor in VALID_DIVISORS:
        reduced = image if divisor == 1 else box_downsample(image, divisor)
        if entry.rate_probe is not None:
            size_of = entry.rate_probe(reduced)
        else:
            size_of = lambda q: entry.encoder(reduced, q, original_size=(h, w)).wire_bytes

        floor_size = size_of(1)
        if divisor == VALID_DIVISORS[-1]:
            min_size = floor_size
        if floor_size * 8 > limit_bits:
            continue

        lo, hi, best = 2, 100, 1
        while lo <= hi:
            mid = (lo + hi) // 2
            if size_of(mid) * 8 <= limit_bits:
                best = mid
                lo = mid + 1
            else:
                hi = mid - 1
        while best < 100 and size_of(best + 1) * 8 <= limit_bits:
            best += 1

        stream = entry.encoder(reduced, best, original_size=(h, w))
        wire = stream.wire_bytes
        if entry.rate_probe is not None and wire != size_of(best):
            raise AssertionError(
                f"rate probe predicted {size_of(best)} bytes, encoder produced {wire}"
            )
        if wire * 8 > limit_bits:  # confirming encode must itself fit
            raise AssertionError("confirming encode exceeded the verified budget")
        decoded = entry.decoder(stream)
        return TranscodeResult(
            decoded=decoded,
            achieved_bpp=measured_bpp(wire, (h, w)),
            chosen=CodecParams(quality=best, resolution_divisor=divisor),
            payload_bytes=wire,
        )

    assert min_size is not None
    raise InfeasibleBudgetError(budget, measured_bpp(min_size, (h, w)))
