"""Deterministic tabletop world: scene setup, kinematics, success checks.

The world is a kinematic toy: a point gripper with an openable two-finger
hand above a table, one main object resting on the tabletop. Movement is
clamped per step; grasping, pushing and contact are instantaneous rules, no
physics solver. Everything is a pure function of (seed, action sequence).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .objects import (
    BACKGROUND_NAMES,
    OBJECT_CATALOG,
    TABLE_NAMES,
    TASK_NAMES,
    ObjectSpec,
)

__all__ = [
    "SceneSpec",
    "WorldState",
    "Action",
    "SceneSpecError",
    "ProtocolError",
    "init_scene",
    "apply_action",
    "check_success",
    "TABLE_Z",
    "STEP_CAP",
    "STEP_CLAMP_M",
    "GRIPPER_HOME",
]

TABLE_Z = 0.8  # tabletop surface height in meters
STEP_CAP = 250
STEP_CLAMP_M = 0.02  # per-step clamp on each translation component

PLACEMENT_RANGE_M = 0.2  # object (x, y) sampled uniformly within +-0.2 m
GRIPPER_HOME = (-0.40, 0.0, TABLE_Z + 0.55)

_WORKSPACE_X = (-0.55, 0.55)
_WORKSPACE_Y = (-0.45, 0.45)
_WORKSPACE_Z = (TABLE_Z + 0.004, TABLE_Z + 0.70)

GRIPPER_RADIUS_M = 0.012
_STRADDLE_MARGIN_M = 0.006
_GRASP_HEIGHT_TOL_M = 0.02
_PRESS_CONTACT_EPS_M = 0.004
_TIP_DISPLACEMENT_M = 0.012
_ROLL_FACTOR = 2.2
_HEAVY_FACTOR = 0.7
_MAX_PUSH_STEP_M = 0.06

SUCCESS_DISPLACEMENT_M = 0.07  # pick (vertical) and push (horizontal), inclusive


class SceneSpecError(ValueError):
    """Scene references an unknown object, table, background, or task."""


class ProtocolError(RuntimeError):
    """Action applied to a terminal (step-capped) state."""


@dataclass(frozen=True)
class SceneSpec:
    object: str
    table: str
    background: str
    task: str
    seed: int

    def __post_init__(self) -> None:
        if self.object not in OBJECT_CATALOG:
            raise SceneSpecError(f"unknown object {self.object!r}")
        if self.table not in TABLE_NAMES:
            raise SceneSpecError(f"unknown table {self.table!r}")
        if self.background not in BACKGROUND_NAMES:
            raise SceneSpecError(f"unknown background {self.background!r}")
        if self.task not in TASK_NAMES:
            raise SceneSpecError(f"unknown task {self.task!r}")

    def object_spec(self) -> ObjectSpec:
        return OBJECT_CATALOG[self.object]

    def to_dict(self) -> dict:
        return {
            "object": self.object,
            "table": self.table,
            "background": self.background,
            "task": self.task,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SceneSpec":
        return cls(
            object=data["object"],
            table=data["table"],
            background=data["background"],
            task=data["task"],
            seed=int(data["seed"]),
        )


@dataclass(frozen=True)
class Action:
    delta: tuple[float, float, float] = (0.0, 0.0, 0.0)
    gripper_command: str = "hold"  # open | close | hold

    def __post_init__(self) -> None:
        if self.gripper_command not in ("open", "close", "hold"):
            raise ValueError(f"bad gripper command {self.gripper_command!r}")


@dataclass(frozen=True)
class WorldState:
    scene: SceneSpec
    object_pose: tuple[float, float, float, float]  # x, y, z (center), yaw
    gripper_pose: tuple[float, float, float]
    gripper_open: bool
    grasped: bool
    contact: bool  # latched: true once any contact has occurred
    toppled: bool
    step_index: int
    initial_object_pose: tuple[float, float, float, float]
    grasp_offset: Optional[tuple[float, float, float]] = field(default=None)

    @property
    def terminal(self) -> bool:
        return self.step_index >= STEP_CAP

    def object_half_height(self) -> float:
        spec = self.scene.object_spec()
        return spec.half_extent_m[0] if self.toppled else spec.half_extent_m[2]


def init_scene(spec: SceneSpec) -> WorldState:
    """Seeded initial configuration: object placed uniformly within +-0.2 m
    of the table center, gripper at its fixed home pose, all flags clear."""
    rng = np.random.default_rng(spec.seed)
    ox, oy = rng.uniform(-PLACEMENT_RANGE_M, PLACEMENT_RANGE_M, size=2)
    hz = spec.object_spec().half_extent_m[2]
    pose = (float(ox), float(oy), TABLE_Z + hz, 0.0)
    return WorldState(
        scene=spec,
        object_pose=pose,
        gripper_pose=GRIPPER_HOME,
        gripper_open=True,
        grasped=False,
        contact=False,
        toppled=False,
        step_index=0,
        initial_object_pose=pose,
    )


def _clamp(v: float, lo: float, hi: float) -> float:
    return lo if v < lo else hi if v > hi else v


def apply_action(state: WorldState, action: Action) -> WorldState:
    """One kinematic step: move gripper (clamped), actuate hand, resolve
    grasp/push/press interactions, advance the step counter."""
    if state.terminal:
        raise ProtocolError(f"state is terminal at step {state.step_index}")

    spec = state.scene.object_spec()
    hz_eff = state.object_half_height()
    ox, oy, oz, oyaw = state.object_pose
    gx, gy, gz = state.gripper_pose
    prev_gz = gz

    dx = _clamp(action.delta[0], -STEP_CLAMP_M, STEP_CLAMP_M)
    dy = _clamp(action.delta[1], -STEP_CLAMP_M, STEP_CLAMP_M)
    dz = _clamp(action.delta[2], -STEP_CLAMP_M, STEP_CLAMP_M)
    gx = _clamp(gx + dx, *_WORKSPACE_X)
    gy = _clamp(gy + dy, *_WORKSPACE_Y)
    z_floor = _WORKSPACE_Z[0]
    if state.grasped and state.grasp_offset is not None:
        # Holding the object: never let it be dragged through the tabletop.
        z_floor = max(z_floor, TABLE_Z + hz_eff - state.grasp_offset[2])
    gz = _clamp(gz + dz, z_floor, _WORKSPACE_Z[1])

    gripper_open = state.gripper_open
    grasped = state.grasped
    grasp_offset = state.grasp_offset
    toppled = state.toppled
    contact = state.contact

    if action.gripper_command == "open":
        gripper_open = True
        if grasped:
            grasped = False
            grasp_offset = None
            oz = TABLE_Z + hz_eff  # released object settles onto the table
    elif action.gripper_command == "close" and gripper_open:
        gripper_open = False
        if not grasped and not toppled:
            d = math.hypot(gx - ox, gy - oy)
            if d <= spec.grasp_width_m / 2 and abs(gz - oz) <= _GRASP_HEIGHT_TOL_M:
                grasped = True
                grasp_offset = (ox - gx, oy - gy, oz - gz)

    if grasped and grasp_offset is not None:
        ox = gx + grasp_offset[0]
        oy = gy + grasp_offset[1]
        oz = gz + grasp_offset[2]
    elif not grasped:
        o_r = spec.footprint_radius_m
        if toppled:  # lying on its side widens the footprint
            o_r = max(o_r, spec.half_extent_m[2])
        o_top = oz + hz_eff
        o_base = oz - hz_eff
        d = math.hypot(gx - ox, gy - oy)
        straddle = spec.grasp_width_m / 2 + _STRADDLE_MARGIN_M
        fingers_engage = (not gripper_open) or d > straddle
        if fingers_engage and d < o_r + GRIPPER_RADIUS_M:
            descending_onto = (
                prev_gz > o_top
                and gz <= o_top + _PRESS_CONTACT_EPS_M
                and d <= o_r
            )
            if descending_onto:
                contact = True
                gz = max(gz, o_top)  # rigid top stops the hand
            elif o_base - 1e-9 < gz < o_top:
                # Lateral shove: resolve overlap outward along the contact normal.
                if d > 1e-9:
                    nx, ny = (ox - gx) / d, (oy - gy) / d
                else:
                    nx, ny = 1.0, 0.0
                disp = (o_r + GRIPPER_RADIUS_M) - d
                if spec.rolls:
                    disp *= _ROLL_FACTOR
                if spec.mass_class == "heavy":
                    disp *= _HEAVY_FACTOR
                disp = min(disp, _MAX_PUSH_STEP_M)
                ox = _clamp(ox + nx * disp, *_WORKSPACE_X)
                oy = _clamp(oy + ny * disp, *_WORKSPACE_Y)
                contact = True
                if not toppled and spec.topple_propensity >= 0.5:
                    moved = math.hypot(
                        ox - state.initial_object_pose[0],
                        oy - state.initial_object_pose[1],
                    )
                    if moved >= _TIP_DISPLACEMENT_M:
                        toppled = True
        oz = TABLE_Z + (spec.half_extent_m[0] if toppled else spec.half_extent_m[2])

    return replace(
        state,
        object_pose=(ox, oy, oz, oyaw),
        gripper_pose=(gx, gy, gz),
        gripper_open=gripper_open,
        grasped=grasped,
        grasp_offset=grasp_offset,
        contact=contact,
        toppled=toppled,
        step_index=state.step_index + 1,
    )


def check_success(state: WorldState, task: str) -> bool:
    """Pick: vertical rise >= 7 cm from the initial pose. Push: horizontal
    displacement >= 7 cm. Press: any recorded contact. Inclusive thresholds."""
    if task not in TASK_NAMES:
        raise SceneSpecError(f"unknown task {task!r}")
    ix, iy, iz, _ = state.initial_object_pose
    ox, oy, oz, _ = state.object_pose
    if task == "pick":
        return (oz - iz) >= SUCCESS_DISPLACEMENT_M
    if task == "push":
        return math.hypot(ox - ix, oy - iy) >= SUCCESS_DISPLACEMENT_M
    return state.contact
