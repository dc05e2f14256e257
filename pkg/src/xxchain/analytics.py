"""Closed-form and asymptotic results for the dimer and end-bond chains.

Quasimomentum equations
-----------------------
Dimer (alternating bonds, ratio a = (1-delta)/(1+delta)):

    sin(k(L+2)) / sin(kL) = -1/a,

multiplied through into the pole-free form

    h(k) = (1 + 1/a) sin(k(L+1)) cos k + (1 - 1/a) cos(k(L+1)) sin k = 0.

At the points k_m = (2m-1) pi / (2(L+1)) the first term dominates and h
alternates in sign, so each interval (k_m, k_{m+1}) inside (0, pi/2) brackets
exactly one root.  When a < L/(L+2) there are L/2 - 1 real roots and one
boundary-localized mode with complex quasimomentum k0 = pi/2 + i p, where p
solves cosh(2p) + coth(Lp) sinh(2p) = 1/a.

End bond (weak boundary couplings lambda):

    mu cot(k) [cot((L-1)k/2)]^mu = lambda^2 / (2 - lambda^2),  mu = +-1,

multiplied through into the pole-free pair

    G+(k) = cos(k(L+1)/2) + (1 - lambda^2) cos(k(L-3)/2) = 0   (mu = +1)
    G-(k) = sin(k(L+1)/2) + (1 - lambda^2) sin(k(L-3)/2) = 0   (mu = -1)

whose sign alternation on the lattice k = m pi/(L+1) brackets exactly L/2
roots per parity in (0, pi).  Eigenvalues are J cos(k).

End-bond eigenvectors
---------------------
In the reflection-centered gauge the exact components are, with
c = (L+1)/2 and unnormalized,

    mu = +1:  w_i = cos(k (i - c)) for 1 < i < L,  w_1 = cos(k(L-1)/2)/lambda
    mu = -1:  w_i = sin(k (i - c)) for 1 < i < L,  w_1 = -sin(k(L-1)/2)/lambda

and w_L = mu w_1.  The boundary weight of the normalized vector has the
closed form (xi^(1))^2 = lambda^2 sin^2(k) / A_k^2 with

    A_k^2 = (L-1) [2 (1-lambda^2) cos^2 k + lambda^4/2] + 2 lambda^2 - lambda^4,

which this module uses for the zero-temperature correlation sum.

Dimer band functions
--------------------
``dimer_dispersion`` returns the conventional quoted two-band form
+-sqrt(cos^2 k + 4 delta^2 sin^2 k).  Finite-chain eigenvalue reconstruction
uses ``dimer_band_energy`` = sqrt(cos^2 k + delta^2 sin^2 k), the band
function that actually matches direct diagonalization (gap edges +-delta J);
the quoted form overstates the gap edge by a factor of two.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

logger = logging.getLogger(__name__)

_BRENTQ_KW = dict(xtol=1e-13, rtol=8.9e-16, maxiter=200)


class RootCountError(RuntimeError):
    """Bracketing produced the wrong number of quasimomentum roots."""


class FitError(ValueError):
    """Surface-order fit rejected its input."""


@dataclass(frozen=True)
class Constants:
    """Model constants: entanglement threshold and derived dimerization scales."""

    x_threshold: float
    delta0: float
    zeta0: float
    catalan: float
    c_coefficient: float


def _delta0() -> float:
    r = math.sqrt(2.0 - math.sqrt(2.0))
    return (1.0 - r) / (1.0 + r)


CATALAN = 0.915965594177219

CONSTANTS = Constants(
    x_threshold=(math.sqrt(2.0) - 1.0) / 2.0,
    delta0=_delta0(),
    zeta0=2.0 / math.log((1.0 + _delta0()) / (1.0 - _delta0())),
    catalan=CATALAN,
    c_coefficient=0.25 + 2.0 * CATALAN / math.pi ** 2,
)


@dataclass(frozen=True)
class QuasimomentumSet:
    """Real quasimomentum roots (ascending), their parities where defined,
    and the dimer's complex boundary mode as (p, k0 = pi/2 + i p).

    For the end-bond model every root carries a parity; for the dimer each
    real root parameterizes one +- band pair, so ``parities`` is None.
    """

    model: str
    length: int
    parameter: float
    real_roots: np.ndarray
    parities: np.ndarray | None
    complex_mode: tuple[float, complex] | None

    def implied_spectrum(self) -> np.ndarray:
        """All L one-body energies (units of J) reconstructed from the roots."""
        if self.model == "end_bond":
            return np.sort(np.cos(self.real_roots))
        energies = []
        for k in self.real_roots:
            e = dimer_band_energy(k, self.parameter)
            energies += [e, -e]
        if self.complex_mode is not None:
            e = _dimer_midgap_energy(self.length, self.parameter, self.complex_mode[0])
            energies += [e, -e]
        if len(energies) != self.length:
            raise RootCountError(
                f"{len(energies)} implied energies for chain of length {self.length}"
            )
        return np.sort(energies)


# ---------------------------------------------------------------------------
# dimer chain
# ---------------------------------------------------------------------------

def dimer_dispersion(k: float, delta: float) -> tuple[float, float]:
    """Conventional two-band dispersion (Lambda_+, Lambda_-) in units of J.

    Quoted form +-sqrt(cos^2 k + 4 delta^2 sin^2 k); see the module docstring
    for its relation to the finite-chain band function.
    """
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"delta must lie in [0, 1), got {delta}")
    root = math.sqrt(math.cos(k) ** 2 + 4.0 * delta ** 2 * math.sin(k) ** 2)
    return root, -root


def dimer_band_energy(k: float, delta: float) -> float:
    """|Lambda(k)| = sqrt(cos^2 k + delta^2 sin^2 k): matches diagonalization."""
    return math.sqrt(math.cos(k) ** 2 + delta ** 2 * math.sin(k) ** 2)


def localization_length(delta: float) -> float:
    """Decay length zeta = 2 / ln((1+delta)/(1-delta)) of the boundary mode.

    Diverges at delta = 0 (returned as math.inf) and vanishes as delta -> 1.
    """
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"delta must lie in [0, 1), got {delta}")
    if delta == 0.0:
        return math.inf
    return 2.0 / math.log((1.0 + delta) / (1.0 - delta))


def dimer_has_complex_mode(length: int, delta: float) -> bool:
    """The boundary doublet exists iff a < L/(L+2)."""
    a = (1.0 - delta) / (1.0 + delta)
    return a < length / (length + 2.0)


def _dimer_complex_p(length: int, delta: float) -> float:
    """Imaginary part p of the boundary quasimomentum k0 = pi/2 + i p.

    Solves cosh(2p) + coth(Lp) sinh(2p) = 1/a, rewritten with
    coth(Lp) = 1 + 2/(e^{2Lp} - 1) for stable evaluation, seeded by the
    leading-order solution e^{2p} = 1/a - (1 - a^2) a^{L-1}.
    """
    a = (1.0 - delta) / (1.0 + delta)
    seed = 0.5 * math.log(1.0 / a - (1.0 - a * a) * a ** (length - 1))

    def f(p: float) -> float:
        eps = 2.0 / math.expm1(2.0 * length * p)
        return math.exp(2.0 * p) + eps * math.sinh(2.0 * p) - 1.0 / a

    lo, hi = 0.5 * seed, 1.5 * seed
    while f(lo) > 0.0:
        lo *= 0.5
    while f(hi) < 0.0:
        hi *= 1.5
    return float(brentq(f, lo, hi, **_BRENTQ_KW))


def _dimer_midgap_energy(length: int, delta: float, p: float) -> float:
    """|Lambda| of the boundary doublet, evaluated without cancellation.

    The naive form sqrt(delta^2 cosh^2 p - sinh^2 p) loses all precision once
    the doublet splitting drops below ~1e-8 J.  Writing t = tanh(p), the root
    equation becomes t^2 + q t - delta = 0 with q = 2a(1 + eps)/(1+a) and
    eps = 2/(e^{2Lp} - 1); substituting t = delta + s isolates the tiny
    correction s, and Lambda^2 = cosh^2(p) (delta - t)(delta + t)
    = cosh^2(p) (-s)(2 delta + s).
    """
    a = (1.0 - delta) / (1.0 + delta)
    eps = 2.0 / math.expm1(2.0 * length * p)
    q = 2.0 * a * (1.0 + eps) / (1.0 + a)
    q1 = 2.0 * a * eps / (1.0 + a)
    two_d_q = 2.0 * delta + q
    s = -2.0 * q1 * delta / (two_d_q + math.sqrt(two_d_q * two_d_q - 4.0 * q1 * delta))
    return math.cosh(p) * math.sqrt((-s) * (2.0 * delta + s))


def dimer_quasimomenta(length: int, delta: float) -> QuasimomentumSet:
    """All quasimomenta of the alternating-bond chain.

    Real roots lie one per bracket between consecutive extrema of
    sin(k(L+1)); the complex boundary mode is present iff a < L/(L+2).
    A wrong root count raises RootCountError.
    """
    if length % 2 != 0 or length < 4:
        raise ValueError("length must be even and >= 4")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    a = (1.0 - delta) / (1.0 + delta)
    c1, c2 = 1.0 + 1.0 / a, 1.0 - 1.0 / a

    def h(k: float) -> float:
        return c1 * math.sin(k * (length + 1)) * math.cos(k) \
            + c2 * math.cos(k * (length + 1)) * math.sin(k)

    points = [(2 * m - 1) * math.pi / (2 * (length + 1)) for m in range(1, length // 2 + 1)]
    roots = [float(brentq(h, lo, hi, **_BRENTQ_KW)) for lo, hi in zip(points[:-1], points[1:])]

    complex_mode: tuple[float, complex] | None = None
    if dimer_has_complex_mode(length, delta):
        expected = length // 2 - 1
        p = _dimer_complex_p(length, delta)
        complex_mode = (p, complex(math.pi / 2.0, p))
    else:
        expected = length // 2
        roots.append(float(brentq(h, points[-1], math.pi / 2.0 * (1.0 - 1e-13), **_BRENTQ_KW)))

    roots_arr = np.array(sorted(roots))
    if len(roots_arr) != expected or np.any(np.diff(roots_arr) <= 0):
        raise RootCountError(
            f"found {len(roots_arr)} dimer roots, expected {expected}"
        )
    return QuasimomentumSet(
        model="dimer",
        length=length,
        parameter=delta,
        real_roots=roots_arr,
        parities=None,
        complex_mode=complex_mode,
    )


def dimer_gap_asymptotic(length: int, delta: float) -> float:
    """Leading-order splitting 2(1-a) e^{-L/zeta} of the boundary doublet.

    This equals the lowest many-body excitation energy of the half-filled
    chain (particle-hole pair across the doublet); the single-particle
    energies sit at half of it, +-(1-a) e^{-L/zeta}.
    """
    a = (1.0 - delta) / (1.0 + delta)
    return 2.0 * (1.0 - a) * math.exp(-length / localization_length(delta))


def dimer_x_asymptotic(length: int, delta: float) -> float:
    """Surface-order correlation (-1)^{L/2} 2 delta / (1+delta)^2."""
    sign = 1.0 if (length // 2) % 2 == 0 else -1.0
    return sign * 2.0 * delta / (1.0 + delta) ** 2


def dimer_concurrence_fidelity(a: float) -> tuple[float, float]:
    """Asymptotic (C, f) of long dimer chains as functions of a = (1-d)/(1+d)."""
    if not 0.0 < a <= 1.0:
        raise ValueError(f"ratio a must lie in (0, 1], got {a}")
    core = 0.5 - a * a + a ** 4 / 4.0
    return 2.0 * max(0.0, core), (2.0 / 3.0) * (1.0 + core)


def fit_surface_order(pairs, delta: float) -> tuple[float, float, float]:
    """Fit |x_L| = x_inf - A0 L^2 exp(-L/zeta) with x_inf pinned analytically.

    Least squares on ln[(x_inf - |x_L|)/L^2] versus L; returns
    (x_inf, A0, zeta_fit).  Any non-positive residual (the asymptote must be
    approached from below) raises FitError naming the offending L.
    """
    pairs = sorted((int(L), abs(float(x))) for L, x in pairs)
    if len(pairs) < 4:
        raise FitError(f"need at least 4 points, got {len(pairs)}")
    x_inf = abs(dimer_x_asymptotic(4, delta))
    lengths = np.array([p[0] for p in pairs], dtype=float)
    residuals = x_inf - np.array([p[1] for p in pairs])
    bad = np.flatnonzero(residuals <= 0.0)
    if bad.size:
        raise FitError(
            f"|x_L| >= x_inf at L = {int(lengths[bad[0]])}: "
            "asymptote must be approached from below"
        )
    y = np.log(residuals / lengths ** 2)
    slope, intercept = np.polyfit(lengths, y, 1)
    if slope >= 0.0:
        raise FitError("fitted decay rate is non-negative")
    return x_inf, float(np.exp(intercept)), float(-1.0 / slope)


# ---------------------------------------------------------------------------
# end-bond chain
# ---------------------------------------------------------------------------

def endbond_quasimomenta(length: int, lam: float) -> QuasimomentumSet:
    """All L real quasimomentum roots of the end-bond chain, with parities."""
    if length % 2 != 0 or length < 4:
        raise ValueError("length must be even and >= 4")
    if not 0.0 < lam <= 1.0:
        raise ValueError(f"lambda must lie in (0, 1], got {lam}")
    one = 1.0 - lam * lam
    half_up = (length + 1) / 2.0
    half_dn = (length - 3) / 2.0

    def g_plus(k: float) -> float:
        return math.cos(k * half_up) + one * math.cos(k * half_dn)

    def g_minus(k: float) -> float:
        return math.sin(k * half_up) + one * math.sin(k * half_dn)

    found: list[tuple[float, int]] = []
    for m in range(length // 2):
        lo = 2 * m * math.pi / (length + 1)
        hi = 2 * (m + 1) * math.pi / (length + 1)
        found.append((float(brentq(g_plus, lo, hi, **_BRENTQ_KW)), +1))
    points = [(2 * m - 1) * math.pi / (length + 1) for m in range(1, length // 2 + 1)]
    points.append(math.pi)
    for lo, hi in zip(points[:-1], points[1:]):
        found.append((float(brentq(g_minus, lo, hi, **_BRENTQ_KW)), -1))

    found.sort()
    roots = np.array([k for k, _ in found])
    if len(roots) != length or np.any(np.diff(roots) <= 0):
        raise RootCountError(f"found {len(roots)} end-bond roots, expected {length}")
    return QuasimomentumSet(
        model="end_bond",
        length=length,
        parameter=lam,
        real_roots=roots,
        parities=np.array([mu for _, mu in found], dtype=int),
        complex_mode=None,
    )


def endbond_normalization_sq(k: float, lam: float, length: int) -> float:
    """A_k^2 such that the normalized boundary component is lambda sin(k)/A_k."""
    return (length - 1) * (2.0 * (1.0 - lam ** 2) * math.cos(k) ** 2 + lam ** 4 / 2.0) \
        + 2.0 * lam ** 2 - lam ** 4


def endbond_eigenvector(k: float, mu: int, lam: float, length: int) -> np.ndarray:
    """Exact normalized eigenvector for root k of parity mu.

    Interior components follow the reflection-centered closed form (module
    docstring); boundary components carry the extra 1/lambda weight.  The
    global sign makes the first component positive.
    """
    if mu not in (+1, -1):
        raise ValueError("mu must be +1 or -1")
    sites = np.arange(1, length + 1, dtype=float)
    centered = k * (sites - (length + 1) / 2.0)
    w = np.cos(centered) if mu == 1 else np.sin(centered)
    w[0] = w[0] / lam
    w[-1] = mu * w[0]
    v = w / np.linalg.norm(w)
    nz = np.flatnonzero(v != 0.0)[0]
    return v if v[nz] > 0 else -v


def endbond_x_zeroT(length: int, lam: float) -> float:
    """Zero-temperature x from the quasimomentum roots alone.

    x = sum over filled roots (pi/2 < k < pi) of mu_k lambda^2 sin^2(k)/A_k^2,
    an analytic pipeline fully independent of the matrix eigensolver.
    """
    qset = endbond_quasimomenta(length, lam)
    filled = qset.real_roots > math.pi / 2.0
    total = 0.0
    for k, mu in zip(qset.real_roots[filled], qset.parities[filled]):
        total += mu * lam ** 2 * math.sin(k) ** 2 / endbond_normalization_sq(k, lam, length)
    return total


# Beyond this the small-lambda expansion of x is no longer quantitative.
SMALL_LAMBDA_REGIME = 0.5


def smalllambda_in_regime(length: int, lam: float) -> bool:
    """The expansion in lambda requires lambda^2 L << 1."""
    return lam * lam * length < SMALL_LAMBDA_REGIME


def endbond_x_smalllambda(length: int, lam: float, warn: bool = True) -> float:
    """Weak-coupling law x = (-1)^{L/2} [1/2 - lambda^2 L c], c = 1/4 + 2G/pi^2
    with Catalan's constant G; valid for lambda << 1/sqrt(L).

    ``warn=False`` silences the out-of-regime log line for sweeps that
    evaluate the law beyond its validity on purpose.
    """
    if warn and not smalllambda_in_regime(length, lam):
        logger.warning(
            "lambda^2 L = %.3f outside the weak-coupling regime", lam * lam * length
        )
    sign = 1.0 if (length // 2) % 2 == 0 else -1.0
    return sign * (0.5 - lam ** 2 * length * CONSTANTS.c_coefficient)


def endbond_x_largelambda(length: int, lam: float) -> float:
    """Strong-coupling law x = (-1)^{L/2} / (lambda^2 (L-3) + 4)."""
    sign = 1.0 if (length // 2) % 2 == 0 else -1.0
    return sign / (lam ** 2 * (length - 3) + 4.0)


def endbond_x_interpolated(length: int, lam: float) -> float:
    """Interpolating ansatz x = (-1)^{L/2} / (2 + 4 c L lambda^2); exact
    through O(lambda^2) at small lambda."""
    sign = 1.0 if (length // 2) % 2 == 0 else -1.0
    return sign / (2.0 + 4.0 * CONSTANTS.c_coefficient * length * lam ** 2)


def endbond_gap_approx(length: int, lam: float) -> float:
    """Algebraic gap law Delta/J = pi/(2(L-1)) - pi/[(L-1)^2 r + 2(L-1)],
    r = lambda^2/(2 - lambda^2), kept in unexpanded form."""
    r = lam ** 2 / (2.0 - lam ** 2)
    m = length - 1
    return math.pi / (2.0 * m) - math.pi / (m * m * r + 2.0 * m)
