"""Switch-controlled evolution, switch measurement, conditional battery states.

The register is D (x) Q (x) C1..CN with D leftmost (most significant).  The
joint evolution is pure up to the measurement step; density operators appear
only after the partial trace.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .linalg import (
    Layout,
    Operator,
    PureState,
    battery_charger_layout,
    reduced_density,
    switch_register_layout,
)
from .model import KET_E, KET_G, ModelParams, embed_pair, pair_unitary


def cyclic_sequence(j: int, n: int) -> tuple[int, ...]:
    """The j-th cyclic charging order: (j, j+1, ..., N, 1, ..., j-1)."""
    if not 1 <= j <= n:
        raise ValueError(f"order index {j} out of range 1..{n}")
    return tuple((j - 1 + k) % n + 1 for k in range(n))


@dataclass(frozen=True)
class ProtocolResult:
    """Conditional battery states at one time point (all 2x2, |g> = index 0)."""

    t: float
    p1: float                 # probability of switch outcome k = 1
    rho_given_1: np.ndarray   # battery state conditioned on k = 1
    rest_weight: float        # 1 - p1
    rho_rest: np.ndarray      # normalized aggregate over k != 1
    rho_bar: np.ndarray       # DCO reference state
    rho_avg: np.ndarray       # p1 * rho_given_1 + rest_weight * rho_rest


def ordered_charging_unitary(params: ModelParams, t: float, j: int,
                             layout: Layout | None = None) -> Operator:
    """Product of pair unitaries (each for time t/N) along cyclic order j."""
    n = params.n_chargers
    if layout is None:
        layout = battery_charger_layout(n)
    u_pair = pair_unitary(params, t / n)
    acc = np.eye(layout.dim, dtype=complex)
    for l in cyclic_sequence(j, n):
        acc = embed_pair(u_pair, layout, l).mat @ acc
    return Operator(layout, acc)


def total_unitary(params: ModelParams, t: float) -> Operator:
    """Block-diagonal switch-controlled unitary on D (x) Q (x) C1..CN."""
    n = params.n_chargers
    layout = switch_register_layout(n)
    sub_layout = battery_charger_layout(n)
    sub = sub_layout.dim
    u = np.zeros((n * sub, n * sub), dtype=complex)
    for j in range(1, n + 1):
        block = ordered_charging_unitary(params, t, j, sub_layout).mat
        lo = (j - 1) * sub
        u[lo:lo + sub, lo:lo + sub] = block
    return Operator(layout, u)


def initial_state(params: ModelParams) -> PureState:
    """Uniform switch superposition (x) |g>_Q (x) |e> on every charger."""
    n = params.n_chargers
    vec = np.ones(n, dtype=complex) / np.sqrt(n)
    vec = np.kron(vec, KET_G)
    for _ in range(n):
        vec = np.kron(vec, KET_E)
    return PureState(switch_register_layout(n), vec)


def switch_projector(n: int) -> Operator:
    """Rank-1 projector onto the uniform switch superposition, entries 1/N."""
    if n < 2:
        raise ValueError(f"switch dimension must be >= 2, got {n}")
    return Operator(Layout(("D",), (n,)), np.full((n, n), 1.0 / n, dtype=complex))


def run_dco(params: ModelParams, t: float, j: int) -> np.ndarray:
    """Battery state after the single definite charging order j (no switch)."""
    n = params.n_chargers
    layout = battery_charger_layout(n)
    vec = KET_G.copy()
    for _ in range(n):
        vec = np.kron(vec, KET_E)
    out = ordered_charging_unitary(params, t, j, layout).mat @ vec
    return reduced_density(PureState(layout, out), {"Q"}).mat


def run_ico(params: ModelParams, t: float) -> ProtocolResult:
    """Evolve the joint input, measure the switch, and condition the battery.

    The k = 1 outcome uses the uniform-superposition projector; all k != 1
    outcomes are aggregated as its complement (their individual projectors
    never affect the battery state, only the total weight).
    """
    n = params.n_chargers
    layout = switch_register_layout(n)
    psi = total_unitary(params, t).mat @ initial_state(params).vec

    proj = switch_projector(n).mat
    rest_dim = layout.dim // n
    proj_full = np.kron(proj, np.eye(rest_dim))

    psi_1 = proj_full @ psi
    psi_rest = psi - psi_1
    p1 = float(np.vdot(psi_1, psi_1).real)
    rest_weight = float(np.vdot(psi_rest, psi_rest).real)

    sigma_1 = reduced_density(PureState(layout, psi_1, normalized=False), {"Q"}).mat
    sigma_rest = reduced_density(PureState(layout, psi_rest, normalized=False), {"Q"}).mat

    ket_e = np.outer(KET_E, KET_E.conj())
    rho_given_1 = sigma_1 / p1 if p1 > tol.ENERGY_EPS else np.outer(KET_G, KET_G.conj())
    rho_rest = sigma_rest / rest_weight if rest_weight > tol.ENERGY_EPS else ket_e

    rho_bar = run_dco(params, t, 1)
    rho_avg = p1 * rho_given_1 + rest_weight * rho_rest
    return ProtocolResult(
        t=t,
        p1=p1,
        rho_given_1=rho_given_1,
        rest_weight=rest_weight,
        rho_rest=rho_rest,
        rho_bar=rho_bar,
        rho_avg=rho_avg,
    )
