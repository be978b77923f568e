"""DICE-2016R dynamics, trajectory simulation, and the two control objectives.

Everything here is a pure function of its arguments: identical inputs give
bit-identical outputs, so policies can be evaluated concurrently without
synchronization. Step indices are 0-based; step i covers year t0 + i*dt.

A policy is a pair of control sequences over the horizon H:

* mu(i) in [0, 1] - mitigation rate, scales down emissions from economic
  activity (mu = 1 cancels them entirely);
* s(i)  in [0, 1] - saving rate, splits net output between investment and
  consumption.

The two objectives are social welfare W (discounted sum of population-
weighted isoelastic utility of per-capita consumption, to be maximized) and
the peak atmospheric temperature deviation T_AT,max over the horizon (to be
minimized).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ModelDomainError
from .params import ModelParams

# Consumption is floored here (trillions/yr) before the utility evaluation so
# that s = 1, which the search space can represent, scores terribly instead of
# crashing.
CONSUMPTION_FLOOR = 1e-6


class SimState(NamedTuple):
    """The ten dynamic state variables at one time step."""

    L: float        # population, millions
    A: float        # total factor productivity
    K: float        # capital, trillions 2010 USD
    sigma: float    # emission intensity of gross output
    E_Land: float   # land-use emissions, GtCO2/yr
    M_AT: float     # atmospheric carbon, GtC
    M_UP: float     # upper-ocean carbon, GtC
    M_LO: float     # lower-ocean carbon, GtC
    T_AT: float     # atmospheric temperature deviation, deg C
    T_LO: float     # lower-ocean temperature deviation, deg C


class StepDerived(NamedTuple):
    """Per-step derived quantities; defined for steps 0..H-1."""

    Y: float        # gross output, trillions/yr
    Omega: float    # climate damage factor in (0, 1]
    Lambda: float   # abatement cost fraction of gross output
    Q: float        # net output, trillions/yr
    I: float        # investment, trillions/yr
    C: float        # consumption, trillions/yr
    E: float        # total emissions, GtCO2/yr
    F: float        # radiative forcing, W/m^2
    theta1: float   # mitigation cost coefficient
    U: float        # undiscounted utility contribution


class ObjectivePair(NamedTuple):
    """Social welfare (maximize) and peak temperature deviation (minimize)."""

    W: float
    T_max: float


@dataclass(frozen=True)
class PolicyMatrix:
    """Control trajectory: H mitigation rates and H saving rates, each in [0, 1]."""

    mu: np.ndarray
    s: np.ndarray

    def __post_init__(self) -> None:
        mu = np.asarray(self.mu, dtype=float)
        s = np.asarray(self.s, dtype=float)
        if mu.ndim != 1 or s.ndim != 1 or mu.shape != s.shape:
            raise ModelDomainError("mu and s must be 1-d sequences of equal length")
        if not (np.isfinite(mu).all() and np.isfinite(s).all()):
            raise ModelDomainError("policy entries must be finite")
        mu = np.clip(mu, 0.0, 1.0)
        s = np.clip(s, 0.0, 1.0)
        mu.flags.writeable = False
        s.flags.writeable = False
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "s", s)

    @property
    def horizon(self) -> int:
        return self.mu.shape[0]

    @classmethod
    def constant(cls, mu: float, s: float, H: int) -> "PolicyMatrix":
        """Policy holding both control inputs constant over the horizon."""
        return cls(np.full(H, float(mu)), np.full(H, float(s)))

    @classmethod
    def from_genome(cls, genome: np.ndarray) -> "PolicyMatrix":
        """Split a flat vector of 2H genes into the mu row and the s row."""
        genome = np.asarray(genome, dtype=float)
        if genome.ndim != 1 or genome.shape[0] % 2 != 0:
            raise ModelDomainError("genome must be a flat vector of even length")
        H = genome.shape[0] // 2
        return cls(genome[:H].copy(), genome[H:].copy())

    def to_genome(self) -> np.ndarray:
        return np.concatenate([self.mu, self.s])


@dataclass(frozen=True)
class Trajectory:
    """H+1 states (indices 0..H) plus the H per-step derived records."""

    states: tuple[SimState, ...]
    derived: tuple[StepDerived, ...]
    params: ModelParams


def initial_state(p: ModelParams) -> SimState:
    """State at step 0 (year t0), from the configured initial conditions."""
    return SimState(
        L=p.L0, A=p.A0, K=p.K0, sigma=p.sigma0, E_Land=p.E_L0,
        M_AT=p.M_AT0, M_UP=p.M_UP0, M_LO=p.M_LO0, T_AT=p.T_AT0, T_LO=p.T_LO0,
    )


def step_population(L: float, p: ModelParams) -> float:
    """Advance population one step; L_a is a fixed point and an upper bound."""
    if not L > 0:
        raise ModelDomainError(f"population must be positive, got {L}")
    return ((1.0 + p.L_a) / (1.0 + L)) ** p.ell_g * L


def step_tfp(A: float, i: int, p: ModelParams) -> float:
    """Advance total factor productivity; per-step growth tends to 1/(1-g_A)."""
    if not A > 0:
        raise ModelDomainError(f"TFP must be positive, got {A}")
    denom = 1.0 - p.g_A * math.exp(-p.delta_A * i * p.dt)
    if not denom > 0:
        raise ModelDomainError(f"TFP growth denominator non-positive at step {i}")
    return A / denom


def gross_output(A: float, K: float, L: float, p: ModelParams) -> float:
    """Cobb-Douglas gross output in trillions/yr.

    Population enters in billions (L/1000, with L in millions): the standard
    DICE-2016R calibration of A is built around that scaling and keeps output
    near 105 trillion USD/yr in 2015.
    """
    if not (A > 0 and K > 0 and L > 0):
        raise ModelDomainError(f"gross output needs positive A, K, L; got {A}, {K}, {L}")
    return A * K**p.gamma * (L / 1000.0) ** (1.0 - p.gamma)


def damage_factor(T_AT: float, p: ModelParams) -> float:
    """Multiplicative output-loss factor from temperature deviation, in (0, 1]."""
    return 1.0 / (1.0 + p.psi1 * T_AT + p.psi2 * T_AT * T_AT)


def mitigation_cost_theta1(sigma: float, i: int, p: ModelParams) -> float:
    """Cost coefficient of mitigation effort; declines with the backstop price."""
    return (p.p_b / (1000.0 * p.theta2)) * (1.0 - p.delta_pb) ** i * sigma


def abatement_fraction(mu: float, theta1: float, p: ModelParams) -> float:
    """Share of gross output spent on mitigation: theta1 * mu ** theta2."""
    if not 0.0 <= mu <= 1.0:
        raise ModelDomainError(f"mitigation rate must lie in [0, 1], got {mu}")
    return theta1 * mu**p.theta2


def step_capital(K: float, I: float, p: ModelParams) -> float:
    """Advance capital: depreciate over dt years and add the invested flow."""
    return (1.0 - p.delta_K) ** p.dt * K + I * p.dt


def step_emission_intensity(sigma: float, i: int, p: ModelParams) -> float:
    """Advance emission intensity; strictly decreasing toward 0 for sigma > 0."""
    return sigma / math.exp(p.dt * p.g_sigma * (1.0 - p.delta_sigma) ** (i * p.dt))


def land_emissions(i: int, p: ModelParams) -> float:
    """Land-use emissions at step i, a decaying geometric sequence."""
    return p.E_L0 * (1.0 - p.delta_EL) ** i


def total_emissions(sigma: float, mu: float, Y: float, E_Land: float) -> float:
    """Emissions from economic activity, scaled down by mitigation, plus land use."""
    if not 0.0 <= mu <= 1.0:
        raise ModelDomainError(f"mitigation rate must lie in [0, 1], got {mu}")
    return sigma * (1.0 - mu) * Y + E_Land


def step_carbon(
    M_AT: float, M_UP: float, M_LO: float, E: float, p: ModelParams
) -> tuple[float, float, float]:
    """Advance the three carbon reservoirs.

    Emissions enter the atmosphere box only, as xi2 * E * dt: E is a rate in
    GtCO2/yr accumulated over the dt-year step and converted to GtC.
    """
    M_AT1 = p.zeta11 * M_AT + p.zeta12 * M_UP + p.xi2 * E * p.dt
    M_UP1 = p.zeta21 * M_AT + p.zeta22 * M_UP + p.zeta23 * M_LO
    M_LO1 = p.zeta32 * M_UP + p.zeta33 * M_LO
    return M_AT1, M_UP1, M_LO1


def exogenous_forcing(i: int, p: ModelParams) -> float:
    """Non-CO2 forcing: ramps from f0 to f1 over t_f steps, then stays at f1."""
    return p.f0 + min((p.f1 - p.f0) * i / p.t_f, p.f1 - p.f0)


def radiative_forcing(M_AT: float, i: int, p: ModelParams) -> float:
    """Total forcing: logarithmic in atmospheric carbon plus the exogenous term."""
    if not M_AT > 0:
        raise ModelDomainError(f"atmospheric carbon must be positive, got {M_AT}")
    return p.F_2x * math.log2(M_AT / p.M_AT_1750) + exogenous_forcing(i, p)


def step_climate(T_AT: float, T_LO: float, F: float, p: ModelParams) -> tuple[float, float]:
    """Advance the two temperature states; forcing acts on the atmosphere only."""
    T_AT1 = p.phi11 * T_AT + p.phi12 * T_LO + p.xi1 * F
    T_LO1 = p.phi21 * T_AT + p.phi22 * T_LO
    return T_AT1, T_LO1


def utility(C: float, L: float, p: ModelParams) -> float:
    """Population-weighted isoelastic utility of per-capita consumption.

    Per-capita consumption is expressed in thousands of 2010 USD per person
    per year (C in trillions, L in millions).
    """
    if not C > 0:
        raise ModelDomainError(f"consumption must be positive, got {C}")
    if not L > 0:
        raise ModelDomainError(f"population must be positive, got {L}")
    cpc = 1000.0 * C / L
    return L * (cpc ** (1.0 - p.alpha) - 1.0) / (1.0 - p.alpha)


def economy_step(state: SimState, mu: float, s: float, i: int, p: ModelParams) -> StepDerived:
    """All derived quantities of step i in one pass.

    C = Q - I by construction, so consumption plus investment reconstructs
    net output to the last bit.
    """
    if not 0.0 <= s <= 1.0:
        raise ModelDomainError(f"saving rate must lie in [0, 1], got {s}")
    Y = gross_output(state.A, state.K, state.L, p)
    Omega = damage_factor(state.T_AT, p)
    theta1 = mitigation_cost_theta1(state.sigma, i, p)
    Lambda = abatement_fraction(mu, theta1, p)
    Q = (1.0 - Lambda) * Omega * Y
    I = s * Q
    C = Q - I
    E = total_emissions(state.sigma, mu, Y, state.E_Land)
    F = radiative_forcing(state.M_AT, i, p)
    U = utility(max(C, CONSUMPTION_FLOOR), state.L, p)
    return StepDerived(Y=Y, Omega=Omega, Lambda=Lambda, Q=Q, I=I, C=C,
                       E=E, F=F, theta1=theta1, U=U)


def simulate(policy: PolicyMatrix, p: ModelParams) -> Trajectory:
    """Run the closed-loop dynamics over the horizon.

    Returns H+1 states and H derived records. Pure: repeated calls with the
    same inputs give bit-identical trajectories.
    """
    if policy.horizon != p.H:
        raise ModelDomainError(
            f"policy horizon {policy.horizon} does not match configured H = {p.H}"
        )
    # plain Python floats keep the scalar recursion off numpy's slower
    # scalar path; the arithmetic is bit-identical either way
    mu = policy.mu.tolist()
    s = policy.s.tolist()
    states = [initial_state(p)]
    derived: list[StepDerived] = []
    st = states[0]
    for i in range(p.H):
        try:
            d = economy_step(st, mu[i], s[i], i, p)
            M_AT, M_UP, M_LO = step_carbon(st.M_AT, st.M_UP, st.M_LO, d.E, p)
            T_AT, T_LO = step_climate(st.T_AT, st.T_LO, d.F, p)
            st = SimState(
                L=step_population(st.L, p),
                A=step_tfp(st.A, i, p),
                K=step_capital(st.K, d.I, p),
                sigma=step_emission_intensity(st.sigma, i, p),
                E_Land=land_emissions(i + 1, p),
                M_AT=M_AT, M_UP=M_UP, M_LO=M_LO, T_AT=T_AT, T_LO=T_LO,
            )
        except ModelDomainError as exc:
            raise ModelDomainError(f"step {i}: {exc}") from exc
        derived.append(d)
        states.append(st)
    return Trajectory(states=tuple(states), derived=tuple(derived), params=p)


def welfare(traj: Trajectory, p: ModelParams | None = None) -> float:
    """Discounted utility sum over steps 0..H-1 (horizon-truncated)."""
    if p is None:
        p = traj.params
    total = 0.0
    for i, d in enumerate(traj.derived):
        total += d.U / (1.0 + p.rho) ** (i * p.dt)
    return total


def t_at_max(traj: Trajectory) -> float:
    """Peak atmospheric temperature deviation over states 0..H."""
    return max(st.T_AT for st in traj.states)


def evaluate_policy(policy: PolicyMatrix, p: ModelParams) -> ObjectivePair:
    """Simulate a policy and score it: (welfare, peak temperature deviation)."""
    traj = simulate(policy, p)
    return ObjectivePair(W=welfare(traj, p), T_max=t_at_max(traj))
