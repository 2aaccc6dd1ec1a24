"""Flat-shaded raster views of the tabletop world.

Camera mapping (third-person, fixed at the robot base, oblique orthographic):

    u = CX + PX_PER_M_X * x
    v = CY - PX_PER_M_Y * y - PX_PER_M_Z * (z - TABLE_Z)

x runs rightward across the image, y recedes up-screen with foreshortening,
height lifts silhouettes up-screen. Objects are drawn as their side-profile
silhouette anchored at the base of the body: width 2*hx*PX_PER_M_X, height
2*hy*PX_PER_M_Y + 2*hz*PX_PER_M_Z. The first-person view is a zoom window
that follows the gripper marker.

Every texture is procedural with a fixed seed, so identical states always
render byte-identical frames.
"""

from __future__ import annotations

import math

import numpy as np

from ..codec.raster import RasterImage
from ..codec.resample import bilinear_resize
from .objects import (
    BACKGROUND_BASE_COLORS,
    GRIPPER_COLOR,
    TABLE_BASE_COLORS,
    ObjectSpec,
)
from .scene import TABLE_Z, WorldState

__all__ = [
    "render",
    "IMAGE_SIZE",
    "world_to_pixel",
    "pixel_to_world_xy",
    "expected_blob_area_px",
    "VIEWS",
]

IMAGE_SIZE = 256
CX, CY = 128.0, 150.0
PX_PER_M_X = 200.0
PX_PER_M_Y = 100.0
PX_PER_M_Z = 180.0

TABLE_HALF_M = 0.4  # drawn tabletop half-extent

GRIPPER_MARKER_HALF_PX = 5
_FP_WINDOW_HALF_PX = 48

VIEWS = ("third_person", "first_person")


def world_to_pixel(x: float, y: float, z: float) -> tuple[float, float]:
    """Project a world point to (u, v) image coordinates."""
    u = CX + PX_PER_M_X * x
    v = CY - PX_PER_M_Y * y - PX_PER_M_Z * (z - TABLE_Z)
    return u, v


def pixel_to_world_xy(u: float, v: float, z: float) -> tuple[float, float]:
    """Invert the projection for a point of known height z."""
    x = (u - CX) / PX_PER_M_X
    y = (CY - v - PX_PER_M_Z * (z - TABLE_Z)) / PX_PER_M_Y
    return x, y


def _silhouette_dims_px(spec: ObjectSpec, toppled: bool) -> tuple[float, float]:
    hx, hy, hz = spec.half_extent_m
    if toppled:  # lying on its side: height axis swaps with x
        hx, hz = hz, hx
    width = 2 * hx * PX_PER_M_X
    height = 2 * hy * PX_PER_M_Y + 2 * hz * PX_PER_M_Z
    return width, height


def expected_blob_area_px(spec: ObjectSpec, toppled: bool = False) -> float:
    """Analytic unoccluded silhouette area, used for perception confidence."""
    w, h = _silhouette_dims_px(spec, toppled)
    if spec.shape in ("sphere", "capsule"):
        return math.pi / 4 * w * h
    if spec.shape == "annulus":
        return w * h * (1.0 - 0.4 * 0.4) * (math.pi / 4 if spec.id == "Nut-round" else 1.0)
    return w * h


def _smooth_noise(shape: tuple[int, int], seed: int, amplitude: float) -> np.ndarray:
    rng = np.random.default_rng(seed)
    coarse = rng.uniform(-amplitude, amplitude, (17, 17))
    return bilinear_resize(coarse[..., None], shape[0], shape[1])[..., 0]


def _with_luma_noise(base: tuple[int, int, int], noise: np.ndarray) -> np.ndarray:
    out = np.asarray(base, dtype=np.float64)[None, None, :] + noise[..., None]
    return np.clip(np.rint(out), 0, 255).astype(np.uint8)


_TEXTURE_CACHE: dict[str, np.ndarray] = {}


def _background_texture(name: str) -> np.ndarray:
    key = f"bg:{name}"
    if key not in _TEXTURE_CACHE:
        base = BACKGROUND_BASE_COLORS[name]
        shape = (IMAGE_SIZE, IMAGE_SIZE)
        if name == "Daily":
            tex = _with_luma_noise(base, _smooth_noise(shape, 101, 8.0))
        elif name == "Dark":
            tex = _with_luma_noise(base, _smooth_noise(shape, 102, 5.0))
        elif name == "Light":
            tex = _with_luma_noise(base, _smooth_noise(shape, 103, 5.0))
        else:  # Wall: brick courses
            noise = _smooth_noise(shape, 104, 6.0)
            rows = np.arange(IMAGE_SIZE) % 24 < 2
            noise = noise - 24.0 * rows[:, None]
            tex = _with_luma_noise(base, noise)
        _TEXTURE_CACHE[key] = tex
    return _TEXTURE_CACHE[key]


def _table_texture(name: str, shape: tuple[int, int]) -> np.ndarray:
    key = f"table:{name}:{shape}"
    if key not in _TEXTURE_CACHE:
        base = TABLE_BASE_COLORS[name]
        if name == "Black":
            tex = _with_luma_noise(base, _smooth_noise(shape, 201, 3.0))
        elif name == "Ceramic":
            noise = _smooth_noise(shape, 202, 3.0)
            cols = np.arange(shape[1]) % 20 < 1
            rows = np.arange(shape[0]) % 16 < 1
            noise = noise - 20.0 * (cols[None, :] | rows[:, None])
            tex = _with_luma_noise(base, noise)
        else:
            seed, period, depth, amp = {
                "Cherry": (203, 7, 10.0, 5.0),
                "Wood-dark": (204, 9, 12.0, 5.0),
                "Wood-light": (205, 8, 14.0, 6.0),
            }[name]
            noise = _smooth_noise(shape, seed, amp)
            rows = np.arange(shape[0]) % period < 1
            noise = noise - depth * rows[:, None]
            tex = _with_luma_noise(base, noise)
        _TEXTURE_CACHE[key] = tex
    return _TEXTURE_CACHE[key]


def _fill_rect(frame: np.ndarray, u0: float, v0: float, u1: float, v1: float, color) -> None:
    c0, r0 = int(math.floor(u0)), int(math.floor(v0))
    c1, r1 = int(math.ceil(u1)), int(math.ceil(v1))
    c0, c1 = max(c0, 0), min(c1, frame.shape[1])
    r0, r1 = max(r0, 0), min(r1, frame.shape[0])
    if r1 > r0 and c1 > c0:
        frame[r0:r1, c0:c1] = color


def _ellipse_mask(frame: np.ndarray, uc: float, vc: float, ru: float, rv: float) -> np.ndarray:
    rows = np.arange(frame.shape[0])[:, None]
    cols = np.arange(frame.shape[1])[None, :]
    return ((cols + 0.5 - uc) / ru) ** 2 + ((rows + 0.5 - vc) / rv) ** 2 <= 1.0


def _draw_object(frame: np.ndarray, state: WorldState) -> None:
    spec = state.scene.object_spec()
    ox, oy, oz, _ = state.object_pose
    hz_eff = state.object_half_height()
    width, height = _silhouette_dims_px(spec, state.toppled)
    u0, vb = world_to_pixel(ox, oy, oz - hz_eff)  # anchor at the body base
    vt = vb - height
    if spec.shape in ("sphere", "capsule"):
        mask = _ellipse_mask(frame, u0, (vt + vb) / 2, width / 2, height / 2)
        frame[mask] = spec.color_rgb
    elif spec.shape == "annulus":
        if spec.id == "Nut-round":
            outer = _ellipse_mask(frame, u0, (vt + vb) / 2, width / 2, height / 2)
            inner = _ellipse_mask(frame, u0, (vt + vb) / 2, 0.4 * width / 2, 0.4 * height / 2)
            frame[outer & ~inner] = spec.color_rgb
        else:
            _fill_rect(frame, u0 - width / 2, vt, u0 + width / 2, vb, spec.color_rgb)
            iw, ih = 0.4 * width, 0.4 * height
            vc = (vt + vb) / 2
            _fill_rect(
                frame,
                u0 - iw / 2,
                vc - ih / 2,
                u0 + iw / 2,
                vc + ih / 2,
                _table_patch_color(state),
            )
    else:  # box, cylinder
        _fill_rect(frame, u0 - width / 2, vt, u0 + width / 2, vb, spec.color_rgb)


def _table_patch_color(state: WorldState) -> tuple[int, int, int]:
    return TABLE_BASE_COLORS[state.scene.table]


def _draw_gripper(frame: np.ndarray, state: WorldState) -> None:
    gx, gy, gz = state.gripper_pose
    u, v = world_to_pixel(gx, gy, gz)
    h = GRIPPER_MARKER_HALF_PX
    _fill_rect(frame, u - h - 1, v - h - 1, u + h + 1, v + h + 1, (20, 20, 20))
    _fill_rect(frame, u - h, v - h, u + h, v + h, GRIPPER_COLOR)


def render(state: WorldState, view: str = "third_person") -> RasterImage:
    """Deterministic 256x256 view of the state."""
    if view not in VIEWS:
        raise ValueError(f"view must be one of {VIEWS}, got {view!r}")
    frame = _background_texture(state.scene.background).copy()

    tu0, tv0 = world_to_pixel(-TABLE_HALF_M, TABLE_HALF_M, TABLE_Z)
    tu1, tv1 = world_to_pixel(TABLE_HALF_M, -TABLE_HALF_M, TABLE_Z)
    r0, r1 = int(round(tv0)), int(round(tv1))
    c0, c1 = int(round(tu0)), int(round(tu1))
    frame[r0:r1, c0:c1] = _table_texture(state.scene.table, (r1 - r0, c1 - c0))

    _draw_object(frame, state)
    _draw_gripper(frame, state)

    if view == "first_person":
        gu, gv = world_to_pixel(*state.gripper_pose)
        half = _FP_WINDOW_HALF_PX
        cu = int(round(min(max(gu, half), IMAGE_SIZE - half)))
        cv = int(round(min(max(gv, half), IMAGE_SIZE - half)))
        window = frame[cv - half : cv + half, cu - half : cu + half]
        zoomed = bilinear_resize(window, IMAGE_SIZE, IMAGE_SIZE)
        frame = np.clip(np.rint(zoomed), 0, 255).astype(np.uint8)

    return RasterImage(pixels=frame)
