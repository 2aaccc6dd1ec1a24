"""Deterministic seedable tabletop world with raster observations."""

from __future__ import annotations

from .objects import (
    BACKGROUND_NAMES,
    GRIPPER_COLOR,
    OBJECT_CATALOG,
    OBJECT_NAMES,
    TABLE_NAMES,
    TASK_NAMES,
    ObjectSpec,
)
from .render import (
    IMAGE_SIZE,
    VIEWS,
    expected_blob_area_px,
    pixel_to_world_xy,
    render,
    world_to_pixel,
)
from .scene import (
    GRIPPER_HOME,
    STEP_CAP,
    STEP_CLAMP_M,
    SUCCESS_DISPLACEMENT_M,
    TABLE_Z,
    Action,
    ProtocolError,
    SceneSpec,
    SceneSpecError,
    WorldState,
    apply_action,
    check_success,
    init_scene,
)

__all__ = [
    "BACKGROUND_NAMES",
    "GRIPPER_COLOR",
    "OBJECT_CATALOG",
    "OBJECT_NAMES",
    "TABLE_NAMES",
    "TASK_NAMES",
    "ObjectSpec",
    "IMAGE_SIZE",
    "VIEWS",
    "expected_blob_area_px",
    "pixel_to_world_xy",
    "render",
    "world_to_pixel",
    "GRIPPER_HOME",
    "STEP_CAP",
    "STEP_CLAMP_M",
    "SUCCESS_DISPLACEMENT_M",
    "TABLE_Z",
    "Action",
    "ProtocolError",
    "SceneSpec",
    "SceneSpecError",
    "WorldState",
    "apply_action",
    "check_success",
    "init_scene",
]
