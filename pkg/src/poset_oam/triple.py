"""Lattice Dirac operator, gauge connection and the module of sections.

Sections form a right module over C^N (``eta c``), and operators on the
K-cycle act on them from the right as well: ``eta -> eta @ A``.  With the
Dirac matrix laid out as

    D[i, i+1] = conj(M) / (eps sqrt 2),    D[i+1, i] = M / (eps sqrt 2)

(indices mod N), the ``conj(M)`` superdiagonal is the part that moves the
component at site j-1 to site j, i.e. ``(eta D^-)_j = conj(M) eta_{j-1} /
(eps sqrt 2)``.  This is the lowering part ``D^-``; the subdiagonal is ``D^+``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .poset import AlgebraElement, check_sites

__all__ = [
    "SpectralTriple",
    "GaugeConnection",
    "ModuleSection",
    "default_epsilon",
    "check_theta",
    "build_dirac",
    "build_sigma",
    "build_connection",
    "split_dirac",
    "lowering_part",
    "apply_operator",
    "hermitian_structure",
    "trace_product",
    "module_action",
    "build_section",
]

UNIT_TOL = 1e-12


def default_epsilon(N: int) -> float:
    """Arc spacing of N equally spaced sites on the unit circle."""
    return 2 * math.pi / N


def check_theta(theta: float) -> float:
    theta = float(theta)
    if not 0.0 <= theta < 1.0:
        raise ValueError(f"theta must lie in [0, 1), got {theta}")
    return theta


def _hopping(N: int, upper: complex, lower: complex, scale: float) -> np.ndarray:
    """Cyclic matrix with ``upper`` at (i, i+1) and ``lower`` at (i+1, i)."""
    up = np.roll(np.eye(N), 1, axis=1)
    return scale * (upper * up + lower * up.T)


@dataclass(frozen=True, eq=False)
class SpectralTriple:
    N: int
    epsilon: float
    M: complex
    D: np.ndarray

    @property
    def scale(self) -> float:
        return 1.0 / (self.epsilon * math.sqrt(2))


def build_dirac(N: int, epsilon: float | None = None, M: complex = 1.0) -> SpectralTriple:
    N = check_sites(N)
    if epsilon is None:
        epsilon = default_epsilon(N)
    epsilon = float(epsilon)
    if not epsilon > 0:
        raise ValueError(f"lattice spacing must be positive, got {epsilon}")
    M = complex(M)
    if abs(abs(M) - 1) > UNIT_TOL:
        raise ValueError(f"hopping phase must have modulus one, |M|={abs(M)}")
    D = _hopping(N, M.conjugate(), M, 1.0 / (epsilon * math.sqrt(2)))
    D.setflags(write=False)
    return SpectralTriple(N, epsilon, M, D)


def build_sigma(theta: float, phi: float, N: int) -> complex:
    """``sigma = exp(-i theta phi / N) - 1``."""
    theta = check_theta(theta)
    N = check_sites(N)
    return complex(np.exp(-1j * theta * float(phi) / N) - 1)


@dataclass(frozen=True, eq=False)
class GaugeConnection:
    theta: float
    phi: float
    sigma: complex
    rho: np.ndarray


def build_connection(triple: SpectralTriple, theta: float, phi: float) -> GaugeConnection:
    """Hermitian connection with hoppings ``conj(sigma M)`` above and ``sigma M`` below."""
    sigma = build_sigma(theta, phi, triple.N)
    sM = sigma * triple.M
    rho = _hopping(triple.N, sM.conjugate(), sM, triple.scale)
    rho.setflags(write=False)
    return GaugeConnection(float(theta), float(phi), sigma, rho)


def lowering_part(A: np.ndarray) -> np.ndarray:
    """Entries of A at the cyclic superdiagonal positions (i, i+1).

    Under the right action these carry component j-1 to site j.
    """
    N = A.shape[0]
    mask = np.roll(np.eye(N), 1, axis=1).astype(bool)
    return np.where(mask, A, 0)


def split_dirac(triple: SpectralTriple) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(D_plus, D_minus)``; ``D_minus`` is the lowering superdiagonal."""
    D_minus = lowering_part(triple.D)
    D_plus = triple.D - D_minus
    return D_plus, D_minus


@dataclass(frozen=True, eq=False)
class ModuleSection:
    """A section ``eta = (eta_1, ..., eta_N)`` of the trivial line bundle."""

    components: np.ndarray

    def __post_init__(self):
        comps = np.asarray(self.components, dtype=complex)
        if comps.ndim != 1:
            raise ValueError("section must be a flat sequence")
        check_sites(comps.size)
        comps.setflags(write=False)
        object.__setattr__(self, "components", comps)

    @property
    def N(self) -> int:
        return self.components.size

    def __len__(self):
        return self.components.size

    def lowered(self) -> np.ndarray:
        """Cyclic lowering map ``(eta_N, eta_1, ..., eta_{N-1})``."""
        return np.roll(self.components, 1)


def _same_length(a, b) -> None:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")


def apply_operator(A: np.ndarray, eta: ModuleSection) -> ModuleSection:
    """Right action of an N x N operator on a section."""
    A = np.asarray(A)
    if A.shape != (eta.N, eta.N):
        raise ValueError(f"operator shape {A.shape} does not act on N={eta.N}")
    return ModuleSection(eta.components @ A)


def hermitian_structure(a: ModuleSection, b: ModuleSection) -> AlgebraElement:
    """C^N-valued pairing ``(conj(a_1) b_1, ..., conj(a_N) b_N)``."""
    _same_length(a, b)
    return AlgebraElement(a.components.conj() * b.components)


def trace_product(a: ModuleSection, b: ModuleSection) -> complex:
    return complex(np.sum(hermitian_structure(a, b).values))


def module_action(eta: ModuleSection, c: AlgebraElement) -> ModuleSection:
    _same_length(eta, c)
    return ModuleSection(eta.components * c.values)


def build_section(theta: float, phi: float, N: int) -> ModuleSection:
    """``eta_j = exp(i (j + theta) phi / N)`` for ``j = 1..N``.

    Assembled from the diagonal family ``lambda_m = exp(i phi (m-1)/N) lam``
    with base ``lam = exp(i phi / N) exp(i theta phi / N)``, acting on the
    unit section.
    """
    theta = check_theta(theta)
    N = check_sites(N)
    phi = float(phi)
    lam = np.exp(1j * phi / N) * np.exp(1j * theta * phi / N)
    family = AlgebraElement(np.exp(1j * phi * np.arange(N) / N) * lam)
    return module_action(ModuleSection(np.ones(N, dtype=complex)), family)
