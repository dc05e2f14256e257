"""Dense many-body ground truth for small chains, independent of the
free-fermion pipeline.

The full 2^L Hamiltonian is assembled from spin-1/2 operators in the
computational basis with site 1 as the most significant bit and spin-up
encoded by bit value 0.  Ground or Gibbs states, the partial trace onto the
end pair, Wootters' concurrence and the direct spin-spin correlators then
cross-check every step of the fermionic route.  Capped at L <= 12; this is a
test fixture, not a production path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ChainSpec

MAX_LENGTH = 12
PSD_TOL = 1e-10
DEGENERACY_WINDOW = 1e-10

_SPLUS = np.array([[0.0, 1.0], [0.0, 0.0]])
_SMINUS = _SPLUS.T
_SZ = np.diag([0.5, -0.5])
_I2 = np.eye(2)
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])


class OracleError(ValueError):
    """Invalid oracle input (size cap, non-physical density matrix)."""


@dataclass(frozen=True)
class DenseState:
    """Density matrix on the full 2^L space.

    Entries may be complex; for the real XX Hamiltonian every state produced
    here is real, but consumers must not rely on that.
    """

    matrix: np.ndarray
    length: int

    @property
    def dimension(self) -> int:
        return 2 ** self.length

    def validate(self) -> None:
        rho = self.matrix
        if rho.shape != (self.dimension, self.dimension):
            raise OracleError("density matrix shape does not match length")
        if abs(np.trace(rho) - 1.0) > 1e-12:
            raise OracleError("density matrix trace != 1")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
            raise OracleError("density matrix not Hermitian")
        if np.min(np.linalg.eigvalsh(rho)) < -PSD_TOL:
            raise OracleError("density matrix not positive semidefinite")


def _site_operator(op: np.ndarray, site: int, length: int) -> np.ndarray:
    """Embed a single-site operator; ``site`` is 1-based, site 1 = MSB."""
    out = np.array([[1.0]])
    for j in range(1, length + 1):
        out = np.kron(out, op if j == site else _I2)
    return out


def dense_hamiltonian(spec: ChainSpec) -> np.ndarray:
    """Full XX Hamiltonian sum_i J_i (Sx_i Sx_{i+1} + Sy_i Sy_{i+1}).

    Assembled via the flip-flop form (S+ S- + S- S+)/2, which keeps the
    matrix explicitly real.
    """
    if spec.length > MAX_LENGTH:
        raise OracleError(f"length {spec.length} exceeds the oracle cap {MAX_LENGTH}")
    dim = 2 ** spec.length
    ham = np.zeros((dim, dim))
    for bond, coupling in enumerate(spec.couplings, start=1):
        hop = _site_operator(_SPLUS, bond, spec.length) @ \
            _site_operator(_SMINUS, bond + 1, spec.length)
        ham += 0.5 * coupling * (hop + hop.T)
    return ham


def gibbs_state(hamiltonian: np.ndarray, beta: float) -> DenseState:
    """Gibbs state e^{-beta H}/Z; beta = inf selects the ground state, with
    equal-weight mixing of any levels within 1e-10 of the minimum."""
    if beta < 0:
        raise OracleError(f"beta must be >= 0, got {beta}")
    energies, states = np.linalg.eigh(hamiltonian)
    if np.isinf(beta):
        weights = (energies <= energies[0] + DEGENERACY_WINDOW).astype(float)
    else:
        weights = np.exp(-beta * (energies - energies[0]))
    weights /= weights.sum()
    rho = (states * weights) @ states.conj().T
    length = int(round(np.log2(hamiltonian.shape[0])))
    return DenseState(matrix=rho, length=length)


def reduce_to_endpoints(state: DenseState) -> np.ndarray:
    """Partial trace over sites 2..L-1, leaving the 4x4 end-pair matrix."""
    length = state.length
    mid = 2 ** (length - 2)
    blocks = state.matrix.reshape(2, mid, 2, 2, mid, 2)
    reduced = np.einsum("ambcmd->abcd", blocks)
    return reduced.reshape(4, 4)


def wootters_concurrence(rho4: np.ndarray) -> float:
    """Wootters' concurrence of an arbitrary two-qubit density matrix.

    Uses the singular values of sqrt(rho) (sy ox sy) sqrt(rho)^T, which equal
    the square roots of the eigenvalues of rho rho-tilde but stay accurate in
    absolute terms even when some of them underflow toward zero (the direct
    eigenvalue route loses ~1e-8 of precision near pure Bell states).
    """
    rho4 = np.asarray(rho4, dtype=complex)
    if rho4.shape != (4, 4):
        raise OracleError("expected a 4x4 density matrix")
    evals, vecs = np.linalg.eigh(rho4)
    if evals[0] < -PSD_TOL:
        raise OracleError("density matrix not positive semidefinite")
    sqrt_rho = (vecs * np.sqrt(np.clip(evals, 0.0, None))) @ vecs.conj().T
    yy = np.kron(_SY, _SY).real
    singular = np.linalg.svd(sqrt_rho @ yy @ sqrt_rho.T, compute_uv=False)
    return float(max(0.0, 2.0 * singular[0] - singular.sum()))


def oracle_end_correlators(state: DenseState) -> tuple[float, float, float]:
    """(transverse, longitudinal, x_inferred) from the spin basis directly.

    transverse   = <S1+ SL- + S1- SL+>
    longitudinal = <S1z SLz>
    x_inferred   = -(-1)^{L/2} transverse / 2, the fermionic x the
                   string-substituted correlator implies.
    """
    length = state.length
    flip = _site_operator(_SPLUS, 1, length) @ _site_operator(_SMINUS, length, length)
    flip = flip + flip.T
    zz = _site_operator(_SZ, 1, length) @ _site_operator(_SZ, length, length)
    transverse = float(np.real(np.trace(state.matrix @ flip)))
    longitudinal = float(np.real(np.trace(state.matrix @ zz)))
    sign = 1.0 if (length // 2) % 2 == 0 else -1.0
    return transverse, longitudinal, -sign * transverse / 2.0


def site_magnetization(state: DenseState, site: int) -> float:
    """<S_site^z>; vanishes at every site and temperature for these chains."""
    op = _site_operator(_SZ, site, state.length)
    return float(np.real(np.trace(state.matrix @ op)))
