"""Catalog of manipulable objects and scene surface palettes.

Object colors are saturated and chosen so that every object sits at a large
per-channel distance (L-inf >= 60 before texture noise) from every table and
background base color, and has enough channel spread that achromatic blur or
ringing cannot fall inside a sane segmentation tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "ObjectSpec",
    "OBJECT_CATALOG",
    "OBJECT_NAMES",
    "TABLE_NAMES",
    "BACKGROUND_NAMES",
    "TASK_NAMES",
    "TABLE_BASE_COLORS",
    "BACKGROUND_BASE_COLORS",
    "GRIPPER_COLOR",
]


@dataclass(frozen=True)
class ObjectSpec:
    id: str
    shape: str  # box | cylinder | sphere | capsule | annulus
    half_extent_m: tuple[float, float, float]  # (hx, hy, hz)
    color_rgb: tuple[int, int, int]
    grasp_width_m: float
    topple_propensity: float
    mass_class: str  # light | heavy

    @property
    def footprint_radius_m(self) -> float:
        return max(self.half_extent_m[0], self.half_extent_m[1])

    @property
    def rolls(self) -> bool:
        return self.shape in ("sphere", "capsule")


_CATALOG = [
    ObjectSpec("Bottle", "cylinder", (0.030, 0.030, 0.090), (24, 160, 56), 0.050, 0.30, "heavy"),
    ObjectSpec("Can", "cylinder", (0.030, 0.030, 0.050), (208, 22, 28), 0.055, 0.35, "light"),
    ObjectSpec("Cube", "box", (0.025, 0.025, 0.025), (234, 48, 44), 0.045, 0.05, "light"),
    ObjectSpec("Bread", "box", (0.030, 0.030, 0.030), (196, 96, 24), 0.050, 0.05, "light"),
    ObjectSpec("Capsule", "capsule", (0.015, 0.015, 0.012), (250, 140, 8), 0.030, 0.10, "light"),
    ObjectSpec("Cereal", "box", (0.035, 0.020, 0.080), (134, 40, 168), 0.060, 0.90, "light"),
    ObjectSpec("Lemon", "sphere", (0.025, 0.025, 0.025), (240, 214, 26), 0.040, 0.10, "light"),
    ObjectSpec("Milk", "box", (0.030, 0.030, 0.095), (88, 128, 224), 0.055, 0.85, "light"),
    ObjectSpec("Hammer", "box", (0.080, 0.020, 0.020), (70, 130, 180), 0.040, 0.05, "heavy"),
    ObjectSpec("Nut-round", "annulus", (0.030, 0.030, 0.012), (40, 90, 170), 0.030, 0.02, "heavy"),
    ObjectSpec("Nut-square", "annulus", (0.030, 0.030, 0.012), (184, 136, 8), 0.030, 0.02, "light"),
]

OBJECT_CATALOG: dict[str, ObjectSpec] = {spec.id: spec for spec in _CATALOG}
OBJECT_NAMES = tuple(spec.id for spec in _CATALOG)

TABLE_NAMES = ("Black", "Ceramic", "Cherry", "Wood-dark", "Wood-light")
BACKGROUND_NAMES = ("Daily", "Dark", "Light", "Wall")
TASK_NAMES = ("pick", "push", "press")

TABLE_BASE_COLORS: dict[str, tuple[int, int, int]] = {
    "Black": (30, 30, 32),
    "Ceramic": (214, 218, 222),
    "Cherry": (122, 52, 44),
    "Wood-dark": (88, 58, 36),
    "Wood-light": (184, 148, 104),
}

BACKGROUND_BASE_COLORS: dict[str, tuple[int, int, int]] = {
    "Daily": (168, 150, 126),
    "Dark": (44, 46, 50),
    "Light": (232, 230, 222),
    "Wall": (150, 118, 96),
}

GRIPPER_COLOR = (250, 250, 250)
