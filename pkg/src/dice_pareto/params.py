"""DICE-2016R model constants and initial conditions.

All defaults follow the published DICE-2016R calibration. Time is a 5-year
grid starting in 2015; step index i maps to year t0 + i*dt. Monetary units
are trillions of 2010 USD, population is in millions of people, carbon
masses in GtC, emissions in GtCO2 per year, temperatures in degrees C of
deviation relative to 1900.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Any

from .errors import ConfigError


@dataclass(frozen=True)
class ModelParams:
    # Time grid
    t0: float = 2015.0           # start year
    dt: float = 5.0              # step length, years
    # Population dynamics
    ell_g: float = 0.134         # population convergence exponent
    L_a: float = 11500.0         # asymptotic population, millions
    # Economy
    gamma: float = 0.3           # capital elasticity
    g_A: float = 0.076           # initial TFP growth per step
    delta_A: float = 0.005       # annual decline of TFP growth
    delta_K: float = 0.1         # annual capital depreciation rate
    theta2: float = 2.6          # abatement cost exponent
    p_b: float = 550.0           # backstop price, 2010 USD/tCO2
    delta_pb: float = 0.025      # backstop price decline per step
    psi1: float = 0.0            # linear damage coefficient
    psi2: float = 0.00236        # quadratic damage coefficient
    # Carbon cycle
    g_sigma: float = 0.0152      # initial annual decline of emission intensity
    delta_sigma: float = 0.001   # annual decline of g_sigma
    delta_EL: float = 0.115      # land-use emission decline per step
    E_L0: float = 2.6            # initial land-use emissions, GtCO2/yr
    zeta11: float = 0.88         # carbon transition: atmosphere <- atmosphere
    zeta12: float = 0.196        # carbon transition: atmosphere <- upper ocean
    zeta21: float = 0.12         # carbon transition: upper ocean <- atmosphere
    zeta22: float = 0.797        # carbon transition: upper ocean <- upper ocean
    zeta23: float = 0.001465     # carbon transition: upper ocean <- lower ocean
    zeta32: float = 0.007        # carbon transition: lower ocean <- upper ocean
    zeta33: float = 0.99853488   # carbon transition: lower ocean <- lower ocean
    xi1: float = 0.1005          # forcing-to-temperature input coefficient
    xi2: float = 3.0 / 11.0      # emission-to-carbon-mass conversion, GtC/GtCO2
    # Climate
    phi11: float = 0.8718        # temperature transition: atmosphere <- atmosphere
    phi12: float = 0.0088        # temperature transition: atmosphere <- lower ocean
    phi21: float = 0.025         # temperature transition: lower ocean <- atmosphere
    phi22: float = 0.975         # temperature transition: lower ocean <- lower ocean
    F_2x: float = 3.6813         # forcing at CO2 doubling, W/m^2
    M_AT_1750: float = 588.0     # pre-industrial atmospheric carbon, GtC
    f0: float = 0.5              # exogenous forcing in 2015, W/m^2
    f1: float = 1.0              # exogenous forcing ceiling, W/m^2
    t_f: float = 17.0            # steps until the exogenous forcing ceiling
    # Preferences
    alpha: float = 1.45          # elasticity of marginal utility of consumption
    rho: float = 0.015           # annual discount rate
    # Horizon
    H: int = 37                  # number of 5-year steps (2015..2200)
    # Initial state (2015), from the published DICE-2016R release
    L0: float = 7403.0           # millions of people
    A0: float = 5.115            # total factor productivity
    K0: float = 223.0            # trillions 2010 USD
    sigma0: float = 0.3503       # tCO2 per 1000 USD of gross output
    M_AT0: float = 851.0         # GtC
    M_UP0: float = 460.0         # GtC
    M_LO0: float = 1740.0        # GtC
    T_AT0: float = 0.85          # deg C vs 1900
    T_LO0: float = 0.0068        # deg C vs 1900

    def __post_init__(self) -> None:
        if not self.dt > 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if not (isinstance(self.H, int) and self.H >= 0):
            raise ConfigError(f"H must be a non-negative integer, got {self.H!r}")
        for name in ("delta_K", "delta_pb", "delta_sigma", "delta_EL"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {value}")
        if self.alpha < 0 or self.alpha == 1.0:
            raise ConfigError(f"alpha must be >= 0 and != 1, got {self.alpha}")
        if not self.L_a > 0:
            raise ConfigError(f"L_a must be positive, got {self.L_a}")
        for name in ("L0", "A0", "sigma0", "M_AT0", "M_UP0", "M_LO0"):
            value = getattr(self, name)
            if not value > 0:
                raise ConfigError(f"{name} must be positive, got {value}")
        if self.K0 < 0:
            raise ConfigError(f"K0 must be non-negative, got {self.K0}")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ModelParams":
        """Build params from a key-value mapping; unknown keys are rejected."""
        return cls(**_checked_fields(cls, data, "model"))

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def year(self, i: int) -> float:
        """Calendar year of step index i."""
        return self.t0 + i * self.dt


def _checked_fields(cls: type, data: dict[str, Any], section: str) -> dict[str, Any]:
    """Validate a config mapping against a dataclass: strict keys, numeric coercion."""
    if not isinstance(data, dict):
        raise ConfigError(f"section '{section}' must be a mapping, got {type(data).__name__}")
    by_name = {f.name: f for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - set(by_name))
    if unknown:
        raise ConfigError(f"unknown key(s) in section '{section}': {', '.join(unknown)}")
    out: dict[str, Any] = {}
    for key, value in data.items():
        field = by_name[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{section}.{key} must be a number, got {value!r}")
        if field.type in ("int", int):
            if float(value) != int(value):
                raise ConfigError(f"{section}.{key} must be an integer, got {value!r}")
            out[key] = int(value)
        else:
            out[key] = float(value)
    return out
