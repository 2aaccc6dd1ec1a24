"""IoT channel model and per-image bitrate budgets.

A fleet of agents shares one narrowband uplink. The Shannon capacity of the
channel, split evenly across agents, bounds the bits each agent may spend on
one observation frame within its transmission window. The resulting budget is
expressed in bits per pixel (bpp) of the frame to be compressed.

Named deployment scenarios cover the realistic envelope from a quiet
10-device home network down to a saturated 50-device mesh at the antenna
sensitivity floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

__all__ = [
    "ChannelModel",
    "BppBudget",
    "ChannelParameterError",
    "UnknownScenarioError",
    "channel_bps",
    "bpp_budget",
    "scenario_preset",
    "scenario_names",
    "benchmark_bpp_grid",
]

# NB-IoT uplink channel width in Hz.
NBIOT_BANDWIDTH_HZ = 180_000.0

# Fraction of the raw channel rate available after duplexing/overhead.
EFFECTIVE_RATE_FACTOR = 0.5


class ChannelParameterError(ValueError):
    """A channel model field is outside its allowed domain."""


class UnknownScenarioError(KeyError):
    """Requested deployment scenario is not in the preset table."""


@dataclass(frozen=True)
class ChannelModel:
    """Shared-uplink channel seen by one agent.

    ``snr_db`` is stored in decibels and converted to a linear power ratio
    where capacity is computed.
    """

    bandwidth_hz: float = NBIOT_BANDWIDTH_HZ
    agent_count: int = 1
    snr_db: float = 20.0
    transmission_time_s: float = 0.1
    spectral_efficiency: float = 1.0
    image_height_px: int = 256
    image_width_px: int = 256

    def __post_init__(self) -> None:
        if not (self.bandwidth_hz > 0 and math.isfinite(self.bandwidth_hz)):
            raise ChannelParameterError(f"bandwidth_hz must be positive, got {self.bandwidth_hz}")
        if self.agent_count < 1:
            raise ChannelParameterError(f"agent_count must be >= 1, got {self.agent_count}")
        if not math.isfinite(self.snr_db):
            raise ChannelParameterError(f"snr_db must be finite, got {self.snr_db}")
        if not (self.transmission_time_s >= 0 and math.isfinite(self.transmission_time_s)):
            raise ChannelParameterError(
                f"transmission_time_s must be nonnegative, got {self.transmission_time_s}"
            )
        if not (0.0 < self.spectral_efficiency <= 1.0):
            raise ChannelParameterError(
                f"spectral_efficiency must be in (0, 1], got {self.spectral_efficiency}"
            )
        if self.image_height_px < 1 or self.image_width_px < 1:
            raise ChannelParameterError("image dimensions must be positive")


@dataclass(frozen=True)
class BppBudget:
    """Bit budget per pixel for a single compressed frame."""

    target_bpp: float

    def __post_init__(self) -> None:
        if not (self.target_bpp >= 0 and math.isfinite(self.target_bpp)):
            raise ChannelParameterError(f"target_bpp must be nonnegative, got {self.target_bpp}")


def channel_bps(model: ChannelModel) -> float:
    """Per-agent channel capacity in bits per second.

    Capacity of the shared band divided evenly over the agents, with the SNR
    taken from dB to a linear ratio first.
    """
    snr_linear = 10.0 ** (model.snr_db / 10.0)
    return (model.bandwidth_hz / model.agent_count) * math.log2(1.0 + snr_linear)


def bpp_budget(model: ChannelModel) -> BppBudget:
    """Per-image bit budget in bits per pixel.

    The agent transmits for ``transmission_time_s`` at the effective rate
    (spectral efficiency times half the Shannon rate); the resulting bits are
    spread over the frame's pixels. Full precision is kept; rounding is a
    presentation concern.
    """
    bits = (
        model.transmission_time_s
        * model.spectral_efficiency
        * channel_bps(model)
        * EFFECTIVE_RATE_FACTOR
    )
    pixels = model.image_height_px * model.image_width_px
    return BppBudget(target_bpp=bits / pixels)


# Deployment presets: (agent_count, snr_db). All other fields keep the
# NB-IoT defaults. Printed bpp values: ideal 0.137, assisted_living 0.061,
# smart_office 0.031, micro_market 0.023, vineyard 0.023, extreme 0.014.
_SCENARIOS: dict[str, tuple[int, float]] = {
    "ideal": (10, 30.0),
    "assisted_living": (15, 20.0),
    "smart_office": (35, 24.0),
    "micro_market": (40, 20.0),
    "vineyard": (30, 15.0),
    "extreme": (50, 15.0),
}


def scenario_names() -> list[str]:
    return list(_SCENARIOS)


def scenario_preset(name: str) -> ChannelModel:
    """Channel model for a named deployment scenario."""
    try:
        agents, snr = _SCENARIOS[name]
    except KeyError:
        raise UnknownScenarioError(
            f"unknown scenario {name!r}; expected one of {sorted(_SCENARIOS)}"
        ) from None
    return replace(ChannelModel(), agent_count=agents, snr_db=snr)


def benchmark_bpp_grid() -> list[BppBudget]:
    """The four-point operating grid used by the benchmark sweeps."""
    return [BppBudget(b) for b in (0.015, 0.03, 0.06, 0.1)]
