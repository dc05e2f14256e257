"""Diagonalization of the one-body tridiagonal matrix.

Produces ascending eigenvalues, orthonormal eigenvectors with a fixed global
sign (first nonzero component positive), and parity labels for palindromic
chains.  For an unreduced symmetric tridiagonal matrix the spectrum is simple,
but boundary-localized midgap doublets of long dimerized chains split by less
than machine precision; LAPACK then returns an arbitrary orthonormal basis of
the two-dimensional eigenspace.  For palindromic chains such clusters are
repaired here: the reflection-symmetric and antisymmetric combinations are
recovered and assigned to slots by the oscillation rule below.

Slot-parity rule.  For a palindromic chain with positive couplings, Sturm
oscillation theory fixes the number of sign changes of the n-th eigenvector
(ascending order, 1-based) to L - n, and a mirror-symmetric (antisymmetric)
vector has an even (odd) number of sign changes when L is even.  Hence slot n
always carries reflection parity (-1)^n.  This pins down which member of an
unresolvably split doublet is the filled one at half filling.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .model import ChainSpec, TridiagonalMatrix

logger = logging.getLogger(__name__)

# Clusters narrower than this (in units of the chain's energy scale) are
# treated as numerically degenerate and parity-repaired.  Physical level
# spacings of the chains handled here stay above ~1e-5 * J up to L ~ 1000.
CLUSTER_TOL = 1e-7

RESIDUAL_TOL = 1e-10
ORTHONORMALITY_TOL = 1e-10
PAIRING_TOL = 1e-10
MIRROR_TOL = 1e-8


class SpectralError(RuntimeError):
    """Eigensolver failure or violated spectral contract."""


@dataclass
class SpectralDecomposition:
    """Eigenpairs of one chain: eigenvalues ascending, eigenvectors in columns.

    ``parities`` holds mu_k = +-1 for palindromic sources and is None (an
    explicit no-parity marker) otherwise.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    parities: np.ndarray | None
    matrix: TridiagonalMatrix
    source: ChainSpec | None = field(default=None)

    @property
    def size(self) -> int:
        return len(self.eigenvalues)

    @property
    def energy_scale(self) -> float:
        return self.matrix.energy_scale

    def boundary_products(self) -> np.ndarray:
        """xi_k^(1) * xi_k^(L) for every mode; the only vector data x needs."""
        return self.eigenvectors[0, :] * self.eigenvectors[-1, :]

    def validate(self) -> None:
        """Assert the spectral contract; raises SpectralError on violation."""
        lam, v = self.eigenvalues, self.eigenvectors
        n = self.size
        scale = self.energy_scale
        m = self.matrix.dense()
        resid = np.max(np.abs(m @ v - v * lam[None, :]))
        if resid > RESIDUAL_TOL * np.max(np.abs(m)):
            raise SpectralError(f"residual {resid:.3e} above tolerance")
        gram = v.T @ v - np.eye(n)
        if np.max(np.abs(gram)) > ORTHONORMALITY_TOL:
            raise SpectralError("eigenvectors not orthonormal")
        gaps = np.diff(lam)
        degenerate_ok = (np.abs(lam[:-1]) <= 1e-12 * scale) & (np.abs(lam[1:]) <= 1e-12 * scale)
        if np.any((gaps <= 0) & ~degenerate_ok):
            raise SpectralError("eigenvalues not strictly increasing")
        if n % 2 == 0 and np.allclose(self.matrix.diagonal, 0.0):
            pair = lam + lam[::-1]
            if np.max(np.abs(pair)) > PAIRING_TOL * scale:
                raise SpectralError("particle-hole pairing violated")
        if self.parities is not None:
            mirror = v[::-1, :] * self.parities[None, :] - v
            if np.max(np.abs(mirror)) > MIRROR_TOL:
                raise SpectralError("mirror symmetry violated")
            if np.sum(self.parities == 1) != np.sum(self.parities == -1):
                raise SpectralError("parity sectors unbalanced")


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    for j in range(vectors.shape[1]):
        col = vectors[:, j]
        nz = np.flatnonzero(col != 0.0)
        if nz.size and col[nz[0]] < 0:
            vectors[:, j] = -col
    return vectors


def _orthonormal_subset(vecs: list[np.ndarray]) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    for v in vecs:
        w = v.copy()
        for u in out:
            w -= (u @ w) * u
        norm = np.linalg.norm(w)
        if norm > 1e-6:
            out.append(w / norm)
    return out


def _repair_degenerate_clusters(
    eigenvalues: np.ndarray, vectors: np.ndarray, tol: float
) -> np.ndarray:
    """Replace vectors of near-degenerate clusters by parity eigenvectors,
    ordered so slot n (1-based) carries parity (-1)^n."""
    n = len(eigenvalues)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and eigenvalues[j + 1] - eigenvalues[j] < tol:
            j += 1
        if j > i:
            block = vectors[:, i:j + 1]
            syms = [0.5 * (block[:, c] + block[::-1, c]) for c in range(block.shape[1])]
            antis = [0.5 * (block[:, c] - block[::-1, c]) for c in range(block.shape[1])]
            plus = _orthonormal_subset(syms)
            minus = _orthonormal_subset(antis)
            if len(plus) + len(minus) != j - i + 1:
                raise SpectralError(
                    f"cluster [{i}, {j}] does not decompose into parity eigenvectors"
                )
            for slot in range(i, j + 1):
                pool = plus if (slot + 1) % 2 == 0 else minus
                if not pool:
                    raise SpectralError(
                        f"cluster [{i}, {j}] parity content conflicts with slot order"
                    )
                vectors[:, slot] = pool.pop(0)
            logger.debug("repaired degenerate cluster at slots %d..%d", i, j)
        i = j + 1
    return vectors


def diagonalize(matrix: TridiagonalMatrix, source: ChainSpec | None = None) -> SpectralDecomposition:
    """Full eigendecomposition of the one-body matrix.

    Eigenvalues ascend; eigenvector signs follow the first-nonzero-positive
    convention; palindromic chains additionally get parity labels and the
    degenerate-doublet repair described in the module docstring.
    """
    if source is None:
        source = matrix.source
    try:
        eigenvalues, vectors = eigh_tridiagonal(matrix.diagonal, matrix.off_diagonal)
    except LinAlgError as exc:  # pragma: no cover - unreachable for valid input
        raise SpectralError(f"eigensolver failed to converge: {exc}") from exc

    palindromic = source.is_palindromic if source is not None else bool(
        np.allclose(matrix.off_diagonal, matrix.off_diagonal[::-1], rtol=0.0,
                    atol=1e-12 * matrix.energy_scale)
        and np.allclose(matrix.diagonal, matrix.diagonal[::-1], rtol=0.0,
                        atol=1e-12 * matrix.energy_scale)
    )
    if palindromic:
        vectors = _repair_degenerate_clusters(
            eigenvalues, vectors, CLUSTER_TOL * matrix.energy_scale
        )
    vectors = _fix_signs(vectors)

    parities: np.ndarray | None = None
    if palindromic:
        parities = np.where(vectors[0, :] * vectors[-1, :] >= 0.0, 1, -1).astype(int)

    return SpectralDecomposition(
        eigenvalues=eigenvalues,
        eigenvectors=vectors,
        parities=parities,
        matrix=matrix,
        source=source,
    )


def classify_parity(decomp: SpectralDecomposition) -> np.ndarray | None:
    """Reflection parity mu_k per mode, or None for non-palindromic chains.

    Decided by the sign of xi_k^(1) * xi_k^(L); no analytic form is assumed,
    so any palindromic coupling list is handled uniformly.
    """
    src = decomp.source
    palindromic = src.is_palindromic if src is not None else decomp.parities is not None
    if not palindromic:
        return None
    if decomp.parities is not None:
        return decomp.parities
    return np.where(decomp.boundary_products() >= 0.0, 1, -1).astype(int)
