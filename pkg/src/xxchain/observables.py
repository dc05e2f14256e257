"""End-to-end observables of one chain at zero or finite temperature.

Everything descends from the single fermionic correlation x = <c_1^dag c_L>:

  x(T=0)  = sum over filled (negative-energy) modes of xi_k^(1) xi_k^(L)
  x(T>0)  = sum over all modes of xi_k^(1) xi_k^(L) / (1 + exp(Lambda_k / T))

The two-site reduced density matrix of the end spins is then

  rho = I/4 + s (sx ox sx + sy ox sy) + z (sz ox sz),
  s = <S_1^x S_L^x> = -(-1)^{L/2} x / 2,   z = <S_1^z S_L^z> = -x^2,

from which concurrence C = 2 max(0, x^2 + |x| - 1/4), fully entangled
fraction F = 1/4 + |x| + x^2, and teleportation fidelity f = (2F + 1)/3.
The string-operator phase e^{i pi N} is replaced by e^{i pi L/2} at every
temperature; at T = 0 the half-filled ground state makes this exact, at
T > 0 it is an approximation whose size the oracle module measures.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .spectral import SpectralDecomposition

logger = logging.getLogger(__name__)

# Modes with |Lambda| below this (in units of J) count as zero modes at T=0.
ZERO_MODE_TOL = 1e-12

CLASSICAL_FIDELITY = 2.0 / 3.0

_SX = np.array([[0.0, 1.0], [1.0, 0.0]])
_SY_IM = np.array([[0.0, -1.0], [1.0, 0.0]])  # sigma_y = i * _SY_IM
_SZ = np.diag([1.0, -1.0])


class ObservableError(ValueError):
    """Raised for unphysical observable inputs."""


@dataclass(frozen=True)
class ThermalContext:
    """Temperature in units of J/k_B.  T = 0 selects the exact ground-state
    branch, never a large-beta stand-in."""

    temperature: float

    def __post_init__(self) -> None:
        if self.temperature < 0:
            raise ObservableError(f"temperature must be >= 0, got {self.temperature}")

    @property
    def beta(self) -> float:
        return np.inf if self.temperature == 0 else 1.0 / self.temperature

    @property
    def is_zero(self) -> bool:
        return self.temperature == 0


@dataclass(frozen=True)
class EndToEndState:
    """Correlation data and teleportation figures of merit for the end pair."""

    x: float
    transverse: float
    longitudinal: float
    rho: np.ndarray
    concurrence: float
    fef: float
    fidelity: float


def _zero_temperature_weights(eigenvalues: np.ndarray, tol: float) -> np.ndarray:
    """Occupations of the exact ground state.

    Negative modes are filled.  Modes inside the zero window are particle-hole
    partners whose splitting underflowed (even count; the parity repair in
    spectral orders them), so the lower half of them is filled; a structurally
    degenerate lone zero mode (odd count, possible only for hand-built
    odd-size matrices) gets the T -> 0 Fermi weight 1/2.
    """
    weights = (eigenvalues < -tol).astype(float)
    zero = np.flatnonzero(np.abs(eigenvalues) <= tol)
    if zero.size:
        nfill, rem = divmod(zero.size, 2)
        if rem:
            logger.warning(
                "lone near-zero mode (|Lambda| <= %.1e) gets Fermi weight 1/2", tol
            )
        else:
            # underflowed particle-hole doublet(s): exact half filling
            logger.debug(
                "%d near-zero modes (|Lambda| <= %.1e); filling by particle-hole count",
                zero.size, tol,
            )
        weights[zero[:nfill]] = 1.0
        if rem:
            weights[zero[nfill]] = 0.5
    return weights


def end_to_end_correlation(decomp: SpectralDecomposition, ctx: ThermalContext) -> float:
    """Fermionic correlation x = <c_1^dag c_L> at the given temperature."""
    products = decomp.boundary_products()
    if ctx.is_zero:
        weights = _zero_temperature_weights(
            decomp.eigenvalues, ZERO_MODE_TOL * decomp.energy_scale
        )
    else:
        weights = expit(-decomp.eigenvalues * ctx.beta)
    return float(np.dot(products, weights))


def reduced_density_matrix(x: float, length: int) -> np.ndarray:
    """4x4 end-pair density matrix in the computational basis (up = |0>)."""
    if abs(x) > 0.5 + 1e-9:
        raise ObservableError(f"|x| = {abs(x)} exceeds the physical bound 1/2")
    if length % 2 != 0:
        raise ObservableError("length must be even")
    sign = 1.0 if (length // 2) % 2 == 0 else -1.0
    s = -sign * x / 2.0
    z = -x * x
    rho = np.eye(4) / 4.0
    rho += s * (np.kron(_SX, _SX) - np.kron(_SY_IM, _SY_IM))
    rho += z * np.kron(_SZ, _SZ)
    return rho


def concurrence_from_x(x: float) -> float:
    """C = 2 max(0, x^2 + |x| - 1/4); nonzero above |x| = (sqrt(2)-1)/2."""
    return 2.0 * max(0.0, x * x + abs(x) - 0.25)


def fully_entangled_fraction(x: float) -> float:
    """F = 1/4 + |x| + x^2, the best overlap with a maximally entangled state."""
    return 0.25 + abs(x) + x * x


def fidelity_from_x(x: float) -> float:
    """Average teleportation fidelity f = (2F + 1)/3; classical threshold 2/3."""
    return (2.0 * fully_entangled_fraction(x) + 1.0) / 3.0


def energy_gap(decomp: SpectralDecomposition) -> float:
    """Lowest single-particle excitation energy min_k |Lambda_k| in units of J.

    The lowest many-body excitation of the half-filled chain is a
    particle-hole pair across the Fermi level, of energy 2 * min_k |Lambda_k|
    for the particle-hole symmetric chains handled here.
    """
    return float(np.min(np.abs(decomp.eigenvalues)))


def end_to_end_state(decomp: SpectralDecomposition, ctx: ThermalContext) -> EndToEndState:
    """Bundle x, the reduced state and the teleportation figures of merit."""
    x = end_to_end_correlation(decomp, ctx)
    length = decomp.size
    sign = 1.0 if (length // 2) % 2 == 0 else -1.0
    return EndToEndState(
        x=x,
        transverse=-sign * x / 2.0,
        longitudinal=-x * x,
        rho=reduced_density_matrix(x, length),
        concurrence=concurrence_from_x(x),
        fef=fully_entangled_fraction(x),
        fidelity=fidelity_from_x(x),
    )
