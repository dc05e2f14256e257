"""Chain definitions for open XX spin-1/2 chains.

A chain is specified by its length L (number of sites, even) and the list of
L-1 nearest-neighbor couplings J_i > 0, in units of a global energy scale J.
Three named bond patterns are supported:

  uniform    J_i = J everywhere
  dimer      alternating J(1-delta), J(1+delta), starting (and ending) weak,
             so the end spins hang on weak bonds; requires 0 <= delta < 1
  end_bond   uniform bulk with two weak boundary bonds lambda*J,
             0 < lambda <= 1

Custom coupling lists are first class: analytics dispatch on the pattern tag,
but every downstream computation consumes the explicit coupling list, so one
code path covers all patterns.

After the Jordan-Wigner mapping the chain is a free-fermion hopping problem
whose one-body matrix is tridiagonal with zero diagonal and off-diagonal
entries J_i/2; :func:`build_adjacency` constructs it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

VALID_PATTERNS = ("uniform", "dimer", "end_bond", "custom")


class ChainSpecError(ValueError):
    """Raised when chain parameters violate the model constraints."""


@dataclass(frozen=True)
class ChainSpec:
    """Immutable description of one XX chain instance.

    ``couplings`` are stored explicitly (not only as pattern parameters), so
    custom chains go through the same pipeline as the named patterns.  All
    energies downstream are reported in units of ``scale``.
    """

    length: int
    couplings: tuple[float, ...]
    pattern: str = "custom"
    scale: float = 1.0
    delta: float | None = None
    lam: float | None = None

    def __post_init__(self) -> None:
        if self.length % 2 != 0 or self.length < 2:
            raise ChainSpecError(f"length must be even and >= 2, got {self.length}")
        if len(self.couplings) != self.length - 1:
            raise ChainSpecError(
                f"need {self.length - 1} couplings for length {self.length}, "
                f"got {len(self.couplings)}"
            )
        if self.scale <= 0:
            raise ChainSpecError(f"scale must be positive, got {self.scale}")
        if any(c <= 0 for c in self.couplings):
            raise ChainSpecError("all couplings must be strictly positive")
        if self.pattern not in VALID_PATTERNS:
            raise ChainSpecError(f"unknown pattern {self.pattern!r}")

    @property
    def weak_strong_ratio(self) -> float:
        """Dimerization ratio a = (1-delta)/(1+delta) of the dimer pattern."""
        if self.pattern != "dimer" or self.delta is None:
            raise ChainSpecError("weak_strong_ratio is defined for dimer chains only")
        return (1.0 - self.delta) / (1.0 + self.delta)

    @property
    def is_palindromic(self) -> bool:
        c = np.asarray(self.couplings)
        return bool(np.allclose(c, c[::-1], rtol=0.0, atol=1e-12 * self.scale))

    def coupling_array(self) -> np.ndarray:
        return np.asarray(self.couplings, dtype=float)

    def to_json(self) -> str:
        doc: dict = {
            "length": self.length,
            "pattern": self.pattern,
            "couplings": list(self.couplings),
            "scale": self.scale,
        }
        if self.delta is not None:
            doc["delta"] = self.delta
        if self.lam is not None:
            doc["lambda"] = self.lam
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "ChainSpec":
        doc = json.loads(text)
        return cls(
            length=int(doc["length"]),
            couplings=tuple(float(c) for c in doc["couplings"]),
            pattern=doc.get("pattern", "custom"),
            scale=float(doc.get("scale", 1.0)),
            delta=doc.get("delta"),
            lam=doc.get("lambda"),
        )


def _require_pattern_length(length: int) -> None:
    if length % 2 != 0:
        raise ChainSpecError(f"length must be even, got {length}")
    if length < 4:
        raise ChainSpecError(f"pattern chains need length >= 4, got {length}")


def make_uniform(length: int, scale: float = 1.0) -> ChainSpec:
    """Uniform chain, J_i = J."""
    _require_pattern_length(length)
    return ChainSpec(
        length=length,
        couplings=(float(scale),) * (length - 1),
        pattern="uniform",
        scale=scale,
    )


def make_dimer(length: int, delta: float, scale: float = 1.0) -> ChainSpec:
    """Alternating-bond chain J_i = J(1 + (-1)^i delta), i = 1..L-1.

    The i = 1 bond is weak, J(1-delta), and even length makes the last bond
    weak as well, so both end spins couple weakly to the bulk.  delta = 1 is
    rejected: it would disconnect the end spins.
    """
    _require_pattern_length(length)
    if not 0.0 <= delta < 1.0:
        raise ChainSpecError(f"delta must lie in [0, 1), got {delta}")
    i = np.arange(1, length)
    couplings = scale * (1.0 + ((-1.0) ** i) * delta)
    return ChainSpec(
        length=length,
        couplings=tuple(couplings),
        pattern="dimer",
        scale=scale,
        delta=float(delta),
    )


def make_end_bond(length: int, lam: float, scale: float = 1.0) -> ChainSpec:
    """Uniform bulk with weak boundary bonds: couplings [lam*J, J, ..., J, lam*J].

    lam <= 0 would disconnect the probe spins; lam > 1 (boundary bonds
    stronger than the bulk) is outside the model and rejected, with lam = 1
    admitted as the uniform boundary case.
    """
    _require_pattern_length(length)
    if not 0.0 < lam <= 1.0:
        raise ChainSpecError(f"lambda must lie in (0, 1], got {lam}")
    couplings = np.full(length - 1, float(scale))
    couplings[0] = lam * scale
    couplings[-1] = lam * scale
    return ChainSpec(
        length=length,
        couplings=tuple(couplings),
        pattern="end_bond",
        scale=scale,
        lam=float(lam),
    )


def make_custom(couplings, scale: float = 1.0) -> ChainSpec:
    """Chain with an explicit coupling list (length = len(couplings) + 1, even)."""
    couplings = tuple(float(c) for c in couplings)
    return ChainSpec(
        length=len(couplings) + 1,
        couplings=couplings,
        pattern="custom",
        scale=scale,
    )


@dataclass(frozen=True)
class TridiagonalMatrix:
    """One-body hopping matrix of the chain: zero diagonal, off-diagonal J_i/2."""

    diagonal: np.ndarray
    off_diagonal: np.ndarray
    source: ChainSpec | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        d = np.asarray(self.diagonal, dtype=float)
        e = np.asarray(self.off_diagonal, dtype=float)
        if e.ndim != 1 or d.ndim != 1 or len(d) != len(e) + 1:
            raise ChainSpecError("need len(diagonal) == len(off_diagonal) + 1")
        if np.any(e == 0.0):
            raise ChainSpecError("off-diagonal entries must be nonzero")
        object.__setattr__(self, "diagonal", d)
        object.__setattr__(self, "off_diagonal", e)

    @property
    def size(self) -> int:
        return len(self.diagonal)

    def dense(self) -> np.ndarray:
        m = np.diag(self.diagonal)
        m += np.diag(self.off_diagonal, 1) + np.diag(self.off_diagonal, -1)
        return m

    @property
    def energy_scale(self) -> float:
        if self.source is not None:
            return self.source.scale
        return 2.0 * float(np.max(np.abs(self.off_diagonal)))


def build_adjacency(spec: ChainSpec) -> TridiagonalMatrix:
    """One-body matrix of the Jordan-Wigner fermion hopping problem."""
    return TridiagonalMatrix(
        diagonal=np.zeros(spec.length),
        off_diagonal=spec.coupling_array() / 2.0,
        source=spec,
    )
