"""Statistics suite: correlations, distribution distance, quality metrics,
low-level image features, and rate-performance curve extraction.

Everything here is a pure function over immutable inputs. Indicator
conventions: PSNR of identical frames returns ``math.inf``; SSIM is computed
on luma over non-overlapping 8x8 windows; the Chrominance and Spatial
Information features are standard-practice stand-ins (mean chroma magnitude,
std of Sobel magnitude).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .codec.raster import RasterImage

__all__ = [
    "UndefinedStatisticError",
    "Series",
    "DegradationTriple",
    "FeatureVector",
    "srcc",
    "plcc",
    "wasserstein_1d",
    "degradation_ratio",
    "psnr",
    "ssim",
    "low_level_features",
    "rate_performance_curve",
    "STEP_CAP",
]

STEP_CAP = 250  # closed-loop iteration budget; normalizes step distributions


class UndefinedStatisticError(ValueError):
    """The statistic is undefined for this input (degenerate variance etc.)."""


@dataclass(frozen=True)
class Series:
    """Paired observations for correlation analysis."""

    label: str
    x: tuple[float, ...]
    y: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.x) != len(self.y):
            raise ValueError("series coordinates must pair up")
        if len(self.x) < 2:
            raise ValueError("series needs at least two observations")
        if not all(map(math.isfinite, self.x)) or not all(map(math.isfinite, self.y)):
            raise ValueError("series values must be finite")

    @classmethod
    def from_pairs(cls, label: str, pairs: Iterable[tuple[float, float]]) -> "Series":
        xs, ys = zip(*pairs)
        return cls(label=label, x=tuple(map(float, xs)), y=tuple(map(float, ys)))


@dataclass(frozen=True)
class DegradationTriple:
    """Indicator value at the three operating stages of one sweep."""

    value_gt: float
    value_normal: float
    value_ultralow: float
    higher_better: bool = True


@dataclass(frozen=True)
class FeatureVector:
    luminance: float
    contrast: float
    chrominance: float
    blur: float
    spatial_information: float

    def as_dict(self) -> dict[str, float]:
        return {
            "luminance": self.luminance,
            "contrast": self.contrast,
            "chrominance": self.chrominance,
            "blur": self.blur,
            "spatial_information": self.spatial_information,
        }


def _average_ranks(values: np.ndarray) -> np.ndarray:
    # Competition-free ranking: ties share the mean of their rank span.
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=np.float64)
    sv = values[order]
    i = 0
    while i < len(sv):
        j = i
        while j + 1 < len(sv) and sv[j + 1] == sv[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    xc = x - x.mean()
    yc = y - y.mean()
    denom = math.sqrt(float(xc @ xc)) * math.sqrt(float(yc @ yc))
    if denom == 0.0:
        raise UndefinedStatisticError("zero variance in a coordinate")
    return float(np.clip((xc @ yc) / denom, -1.0, 1.0))


def srcc(series: Series) -> float:
    """Spearman rank correlation with average ranks for ties."""
    rx = _average_ranks(np.asarray(series.x, dtype=np.float64))
    ry = _average_ranks(np.asarray(series.y, dtype=np.float64))
    try:
        return _pearson(rx, ry)
    except UndefinedStatisticError:
        raise UndefinedStatisticError("zero rank variance: all values tied") from None


def plcc(series: Series) -> float:
    """Pearson linear correlation."""
    return _pearson(
        np.asarray(series.x, dtype=np.float64), np.asarray(series.y, dtype=np.float64)
    )


def wasserstein_1d(
    a: Sequence[float], b: Sequence[float], normalize: bool = False
) -> float:
    """W1 between empirical distributions via quantile integration.

    With ``normalize=True`` supports are divided by the step cap first, so
    step-count distributions land in [0, 1].
    """
    if len(a) == 0 or len(b) == 0:
        raise ValueError("wasserstein_1d requires non-empty samples")
    xa = np.sort(np.asarray(a, dtype=np.float64))
    xb = np.sort(np.asarray(b, dtype=np.float64))
    if normalize:
        xa = xa / STEP_CAP
        xb = xb / STEP_CAP
    n, m = len(xa), len(xb)
    # Quantile functions are step-wise constant; integrate |Qa - Qb| exactly
    # over the union of the two breakpoint grids.
    ts = np.union1d(np.arange(1, n) / n, np.arange(1, m) / m)
    edges = np.concatenate([[0.0], ts, [1.0]])
    mids = 0.5 * (edges[:-1] + edges[1:])
    qa = xa[np.minimum((mids * n).astype(np.int64), n - 1)]
    qb = xb[np.minimum((mids * m).astype(np.int64), m - 1)]
    return float(np.sum(np.abs(qa - qb) * np.diff(edges)))


def degradation_ratio(triple: DegradationTriple) -> tuple[float, float, float]:
    """Stage-relative drops in percent and their ratio.

    d1 is the GT->Normal drop relative to GT; d2 the Normal->Ultra-low drop
    relative to Normal; ratio d1/d2. Orientation is handled with absolute
    deltas, so the construct works for both higher-better and lower-better
    indicators.
    """
    if triple.value_gt == 0:
        raise UndefinedStatisticError("GT stage value is zero")
    d1 = abs(triple.value_gt - triple.value_normal) / abs(triple.value_gt) * 100.0
    if d1 == 0.0:
        return 0.0, 0.0, 0.0
    if triple.value_normal == 0:
        raise UndefinedStatisticError("Normal stage value is zero")
    d2 = abs(triple.value_normal - triple.value_ultralow) / abs(triple.value_normal) * 100.0
    if d2 == 0.0:
        raise UndefinedStatisticError("Normal->Ultra-low delta is zero")
    return d1, d2, d1 / d2


def _check_same_dims(a: RasterImage, b: RasterImage) -> None:
    if (a.height_px, a.width_px) != (b.height_px, b.width_px):
        raise ValueError(
            f"image dims differ: {(a.height_px, a.width_px)} vs {(b.height_px, b.width_px)}"
        )


def psnr(a: RasterImage, b: RasterImage) -> float:
    """Peak signal-to-noise ratio in dB over all channels; inf if identical."""
    _check_same_dims(a, b)
    diff = a.pixels.astype(np.float64) - b.pixels.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / mse)


_SSIM_C1 = (0.01 * 255.0) ** 2
_SSIM_C2 = (0.03 * 255.0) ** 2


def _luma(image: RasterImage) -> np.ndarray:
    px = image.pixels.astype(np.float64)
    return 0.299 * px[..., 0] + 0.587 * px[..., 1] + 0.114 * px[..., 2]


def ssim(a: RasterImage, b: RasterImage) -> float:
    """Mean SSIM on luma over non-overlapping 8x8 windows."""
    _check_same_dims(a, b)
    if a.height_px < 8 or a.width_px < 8:
        raise ValueError("ssim requires dims of at least 8x8")
    la, lb = _luma(a), _luma(b)
    h8, w8 = (a.height_px // 8) * 8, (a.width_px // 8) * 8

    def windows(plane: np.ndarray) -> np.ndarray:
        return (
            plane[:h8, :w8].reshape(h8 // 8, 8, w8 // 8, 8).swapaxes(1, 2).reshape(-1, 64)
        )

    wa, wb = windows(la), windows(lb)
    mu_a, mu_b = wa.mean(axis=1), wb.mean(axis=1)
    var_a = wa.var(axis=1)
    var_b = wb.var(axis=1)
    cov = ((wa - mu_a[:, None]) * (wb - mu_b[:, None])).mean(axis=1)
    num = (2 * mu_a * mu_b + _SSIM_C1) * (2 * cov + _SSIM_C2)
    den = (mu_a**2 + mu_b**2 + _SSIM_C1) * (var_a + var_b + _SSIM_C2)
    return float(np.mean(num / den))


_SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=np.float64)
_SOBEL_Y = _SOBEL_X.T


def _convolve3(plane: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    # Valid-region 3x3 correlation via shifted sums (no padding artifacts).
    out = np.zeros((plane.shape[0] - 2, plane.shape[1] - 2), dtype=np.float64)
    for dy in range(3):
        for dx in range(3):
            out += kernel[dy, dx] * plane[dy : dy + out.shape[0], dx : dx + out.shape[1]]
    return out


def low_level_features(image: RasterImage) -> FeatureVector:
    """Five low-level features: mean luma, luma std, mean chroma magnitude,
    mean Sobel gradient magnitude, and std of Sobel magnitude."""
    px = image.pixels.astype(np.float64)
    y = _luma(image)
    cb = 128.0 + (px[..., 2] - y) / 1.772
    cr = 128.0 + (px[..., 0] - y) / 1.402
    chroma = np.hypot(cb - 128.0, cr - 128.0)
    if y.shape[0] >= 3 and y.shape[1] >= 3:
        gx = _convolve3(y, _SOBEL_X)
        gy = _convolve3(y, _SOBEL_Y)
        grad = np.hypot(gx, gy)
        blur = float(grad.mean())
        si = float(grad.std())
    else:
        blur = 0.0
        si = 0.0
    return FeatureVector(
        luminance=float(y.mean()),
        contrast=float(y.std()),
        chrominance=float(chroma.mean()),
        blur=blur,
        spatial_information=si,
    )


def rate_performance_curve(
    result,
    metric: str,
    expected_budgets: Sequence[float] | None = None,
) -> dict[tuple[str, str], dict]:
    """Per (codec, profile) sorted (bpp, value) points for SR or Step.

    Missing budgets relative to ``expected_budgets`` are flagged in the
    returned ``gaps`` list, never interpolated.
    """
    if metric not in ("SR", "Step"):
        raise ValueError(f"metric must be 'SR' or 'Step', got {metric!r}")
    curves: dict[tuple[str, str], dict] = {}
    for cell in result.cells:
        key = (cell.codec, cell.profile)
        entry = curves.setdefault(key, {"points": [], "gaps": []})
        value = cell.success_rate() if metric == "SR" else cell.mean_step()
        entry["points"].append((cell.budget, value))
    for key, entry in curves.items():
        entry["points"].sort(key=lambda p: p[0])
        if expected_budgets is not None:
            have = {p[0] for p in entry["points"]}
            entry["gaps"] = [b for b in expected_budgets if b not in have]
    return curves
