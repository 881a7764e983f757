"""Passive states, ergotropy, daemonic ergotropy, stored energy, efficiency.

Energies in EnergyReport are expressed in units of hbar*omega; the raw
operator-level functions (ergotropy, stored_energy, ...) work in whatever
units the supplied Hamiltonian carries and for any finite dimension.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .model import KET_G, ModelParams, battery_hamiltonian
from .protocol import ProtocolResult


@dataclass(frozen=True)
class EnergyReport:
    E: float                  # stored energy, hbar*omega units
    W: float                  # ergotropy, hbar*omega units
    P: float | None           # efficiency W/E, None when E is below threshold
    passive_k1: bool
    passive_dco: bool


def _as_pair(rho: np.ndarray, h: np.ndarray):
    rho = np.asarray(rho, dtype=complex)
    h = np.asarray(h, dtype=complex)
    if rho.shape != h.shape or rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"dimension mismatch: state {rho.shape}, Hamiltonian {h.shape}")
    return rho, h


def passive_state(rho: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Populations of rho sorted descending onto energy eigenstates sorted ascending.

    Degenerate populations keep eigensolver order; ergotropy is tie-invariant.
    """
    rho, h = _as_pair(rho, h)
    pops = np.linalg.eigvalsh(rho)[::-1]          # descending
    energies, vecs = np.linalg.eigh(h)            # ascending
    return (vecs * pops) @ vecs.conj().T


def ergotropy(rho: np.ndarray, h: np.ndarray) -> float:
    """Tr[rho H] - Tr[phi H] with phi the passive state; clamped to >= 0."""
    rho, h = _as_pair(rho, h)
    phi = passive_state(rho, h)
    w = float(np.trace((rho - phi) @ h).real)
    if w < tol.ERGOTROPY_FLOOR:
        raise ValueError(f"ergotropy {w:g} below numerical floor")
    return max(w, 0.0)


def is_passive(rho: np.ndarray, h: np.ndarray) -> bool:
    return ergotropy(rho, h) <= tol.PASSIVITY_ATOL


def daemonic_ergotropy(ensemble, h: np.ndarray) -> float:
    """Probability-weighted ergotropy of a conditional ensemble."""
    probs = np.array([p for p, _ in ensemble], dtype=float)
    if np.any(probs < -tol.TRACE_ATOL) or abs(probs.sum() - 1.0) > 1e-10:
        raise ValueError(f"ensemble probabilities {probs} are not a distribution")
    return float(sum(p * ergotropy(rho, h) for p, rho in ensemble if p > 0))


def stored_energy(rho_avg: np.ndarray, rho0: np.ndarray, h: np.ndarray) -> float:
    """Tr[rho_avg H] - Tr[rho0 H]."""
    rho_avg, h = _as_pair(rho_avg, h)
    return float(np.trace((rho_avg - np.asarray(rho0, dtype=complex)) @ h).real)


def efficiency(w: float, e: float) -> float | None:
    return w / e if e >= tol.ENERGY_EPS else None


def report(result: ProtocolResult, params: ModelParams) -> tuple[EnergyReport, EnergyReport]:
    """Energy accounting for the ICO ensemble and the DCO reference state.

    ICO uses the two-outcome ensemble {(p1, rho_given_1), (1-p1, rho_rest)};
    both reports share the stored energy (the E_DCO = E_ICO equality)
    but it is computed independently for each here.
    """
    h = battery_hamiltonian(params).mat
    rho0 = np.outer(KET_G, KET_G.conj())
    unit = params.omega  # hbar*omega with hbar = 1

    ensemble = [(result.p1, result.rho_given_1), (result.rest_weight, result.rho_rest)]
    e_ico = stored_energy(result.rho_avg, rho0, h) / unit
    w_ico = daemonic_ergotropy(ensemble, h) / unit
    e_dco = stored_energy(result.rho_bar, rho0, h) / unit
    w_dco = ergotropy(result.rho_bar, h) / unit

    passive_k1 = is_passive(result.rho_given_1, h)
    passive_dco = is_passive(result.rho_bar, h)

    ico = EnergyReport(E=e_ico, W=w_ico, P=efficiency(w_ico, e_ico),
                       passive_k1=passive_k1, passive_dco=passive_dco)
    dco = EnergyReport(E=e_dco, W=w_dco, P=efficiency(w_dco, e_dco),
                       passive_k1=passive_k1, passive_dco=passive_dco)
    return ico, dco
