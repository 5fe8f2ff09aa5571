"""Orbital angular momentum spectra on the circle and on the circle poset.

Eigenvalues are reported in units of hbar throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .poset import check_sites
from .triple import (
    GaugeConnection,
    ModuleSection,
    SpectralTriple,
    apply_operator,
    check_theta,
    lowering_part,
    split_dirac,
)

__all__ = [
    "ThetaSector",
    "EigenPair",
    "SpectrumSet",
    "EuclideanGenerators",
    "continuum_eigenpair",
    "scaled_eigenpair",
    "fd_eigenvalue",
    "covariant_apply",
    "covariant_minus_apply",
    "covariant_minus_closed_form",
    "uniform_grid",
    "quadrature_inner",
    "gram_matrix",
    "dirac_spectrum_dense",
    "dirac_spectrum_circulant",
    "dirac_eigenvectors_circulant",
    "lattice_spectrum",
    "continuum_spectrum",
    "spectra_distance",
    "euclidean_generators",
    "e2_commutator_residual",
]

DEDUP_TOL = 1e-12


@dataclass(frozen=True)
class ThetaSector:
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "theta", check_theta(self.theta))


def _sector(theta) -> ThetaSector:
    return theta if isinstance(theta, ThetaSector) else ThetaSector(theta)


@dataclass(frozen=True, eq=False)
class EigenPair:
    index: int
    sector: ThetaSector
    scale_N: int
    eigenvalue_hbar: float
    samples: tuple[np.ndarray, np.ndarray] | None = None

    @property
    def frequency(self) -> float:
        return (self.index + self.sector.theta) / self.scale_N

    def __call__(self, phi):
        """Evaluate ``exp(i (index + theta) phi / scale_N)``."""
        return np.exp(1j * self.frequency * np.asarray(phi, dtype=float))

    def with_samples(self, phis) -> EigenPair:
        phis = np.asarray(phis, dtype=float)
        return EigenPair(
            self.index, self.sector, self.scale_N, self.eigenvalue_hbar, (phis, self(phis))
        )


def continuum_eigenpair(n: int, theta, phis=None) -> EigenPair:
    sector = _sector(theta)
    pair = EigenPair(int(n), sector, 1, n + sector.theta)
    return pair if phis is None else pair.with_samples(phis)


def scaled_eigenpair(j: int, theta, N: int, phis=None) -> EigenPair:
    N = check_sites(N)
    if not 1 <= j <= N:
        raise IndexError(f"lattice index j={j} outside 1..{N}")
    sector = _sector(theta)
    pair = EigenPair(int(j), sector, N, (j + sector.theta) / N)
    return pair if phis is None else pair.with_samples(phis)


def fd_eigenvalue(f, phi: float, h: float = 1e-4) -> complex:
    """Central-difference estimate of ``(-i d/dphi f)(phi) / f(phi)``."""
    df = (f(phi + h) - f(phi - h)) / (2 * h)
    return complex(-1j * df / f(phi))


def covariant_apply(
    triple: SpectralTriple, connection: GaugeConnection, eta: ModuleSection
) -> ModuleSection:
    """Full ``(D + rho)`` acting on a section."""
    return apply_operator(triple.D + connection.rho, eta)


def covariant_minus_apply(
    triple: SpectralTriple, connection: GaugeConnection, eta: ModuleSection
) -> ModuleSection:
    """Lowering part ``(D^- + rho^-)`` of the covariant derivative."""
    _, D_minus = split_dirac(triple)
    return apply_operator(D_minus + lowering_part(connection.rho), eta)


def covariant_minus_closed_form(
    triple: SpectralTriple, connection: GaugeConnection, eta: ModuleSection
) -> ModuleSection:
    """``conj(M) (1 + conj(sigma)) eta_{j-1} / (eps sqrt 2)``, cyclic in j.

    For ``M = 1`` the prefactor is ``exp(i theta phi / N)``.
    """
    if eta.N != triple.N:
        raise ValueError(f"section has N={eta.N}, triple has N={triple.N}")
    factor = triple.M.conjugate() * (1 + connection.sigma.conjugate()) * triple.scale
    return ModuleSection(factor * eta.lowered())


def uniform_grid(K: int, period: float = 2 * math.pi) -> np.ndarray:
    return period * np.arange(K) / K


def quadrature_inner(f_samples, g_samples, period: float = 2 * math.pi) -> complex:
    """Periodic trapezoidal estimate of ``(1/period) int conj(f) g dphi``.

    Samples are taken on :func:`uniform_grid` (left endpoints, the right
    endpoint excluded); the rule is then the mean of the integrand, so the
    period enters only through the grid the caller sampled on.
    """
    f = np.asarray(f_samples)
    g = np.asarray(g_samples)
    if f.shape != g.shape or f.ndim != 1:
        raise ValueError(f"sample grids differ: {f.shape} vs {g.shape}")
    if f.size < 2:
        raise ValueError("need at least two quadrature points")
    if not period > 0:
        raise ValueError("period must be positive")
    return complex(np.mean(f.conj() * g))


def gram_matrix(pairs: list[EigenPair], K: int, period: float) -> np.ndarray:
    phis = uniform_grid(K, period)
    S = np.array([p(phis) for p in pairs])
    return S.conj() @ S.T / K


@dataclass(frozen=True, eq=False)
class SpectrumSet:
    values: np.ndarray
    sector: ThetaSector | None = None
    scale_N: int = 1

    def __post_init__(self):
        vals = np.sort(np.asarray(self.values, dtype=float))
        object.__setattr__(self, "values", vals)

    def distinct(self, tol: float = DEDUP_TOL) -> np.ndarray:
        """Sorted values with neighbours closer than ``tol`` merged."""
        if self.values.size == 0:
            return self.values
        keep = np.concatenate([[True], np.diff(self.values) > tol])
        return self.values[keep]

    def __len__(self):
        return self.values.size


def dirac_spectrum_dense(triple: SpectralTriple) -> SpectrumSet:
    D = np.asarray(triple.D)
    if not np.all(np.isfinite(D)):
        raise np.linalg.LinAlgError("Dirac matrix has non-finite entries")
    return SpectrumSet(np.linalg.eigvalsh(D))


def dirac_spectrum_circulant(triple: SpectralTriple) -> SpectrumSet:
    """``(sqrt 2 / eps) cos(2 pi k / N - arg M)`` for ``k = 0..N-1``."""
    k = np.arange(triple.N)
    arg = 2 * np.pi * k / triple.N - np.angle(triple.M)
    return SpectrumSet(math.sqrt(2) / triple.epsilon * np.cos(arg))


def dirac_eigenvectors_circulant(triple: SpectralTriple) -> tuple[np.ndarray, np.ndarray]:
    """Unsorted eigenvalues and unit Fourier eigenvectors (columns) of D.

    ``v_k[m] = exp(2 pi i k m / N) / sqrt N`` diagonalizes every circulant
    matrix; column k pairs with the k-th closed-form eigenvalue.
    """
    N = triple.N
    V = np.fft.ifft(np.eye(N), axis=0) * math.sqrt(N)
    k = np.arange(N)
    vals = math.sqrt(2) / triple.epsilon * np.cos(2 * np.pi * k / N - np.angle(triple.M))
    return vals, V


def lattice_spectrum(theta, N: int) -> SpectrumSet:
    sector = _sector(theta)
    N = check_sites(N)
    j = np.arange(1, N + 1)
    return SpectrumSet((j + sector.theta) / N, sector, N)


def continuum_spectrum(theta, n_max: int) -> SpectrumSet:
    sector = _sector(theta)
    n = np.arange(-n_max, n_max + 1)
    return SpectrumSet(n + sector.theta, sector, 1)


def spectra_distance(theta1: float, theta2: float, N: int = 1) -> float:
    """Gap between the spectra ``{(j + theta1)/N}`` and ``{(k + theta2)/N}``.

    Equals ``dist(theta1 - theta2, Z) / N``.
    """
    theta1, theta2 = check_theta(theta1), check_theta(theta2)
    if int(N) != N or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    x = theta1 - theta2
    return abs(x - round(x)) / N


@dataclass(frozen=True, eq=False)
class EuclideanGenerators:
    r: float
    n_max: int
    theta: float
    L: np.ndarray
    X1: np.ndarray
    X2: np.ndarray

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.n_max, self.n_max + 1)


def euclidean_generators(n_max: int, theta: float = 0.0, r: float = 1.0) -> EuclideanGenerators:
    """``L = (1/i) d/dphi + theta``, ``X1 = r cos phi``, ``X2 = r sin phi``.

    Truncated to modes ``|n| <= n_max`` of the basis ``exp(i n phi)``.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    theta = check_theta(theta)
    if not r > 0:
        raise ValueError("radius must be positive")
    n = np.arange(-n_max, n_max + 1)
    L = np.diag(n + theta).astype(complex)
    # raise[m+1, m] = 1: exp(i phi) e_m = e_{m+1}
    raise_ = np.eye(n.size, k=-1, dtype=complex)
    lower = raise_.T
    X1 = (r / 2) * (raise_ + lower)
    X2 = (r / 2j) * (raise_ - lower)
    return EuclideanGenerators(float(r), int(n_max), theta, L, X1, X2)


def e2_commutator_residual(gens: EuclideanGenerators, theta: float | None = None) -> float:
    """Largest interior-row deviation from the E(2) commutation relations.

    Checks ``[L, X1] = i X2``, ``[L, X2] = -i X1`` and ``[X1, X2] = 0`` on
    rows ``|n| <= n_max - 2``; truncation spoils the outermost rows.
    A ``theta`` different from the one the generators were built with shifts
    L by a multiple of the identity before checking.
    """
    if gens.n_max < 4:
        raise ValueError("need n_max >= 4 to have interior rows")
    L = gens.L
    if theta is not None:
        L = L + (check_theta(theta) - gens.theta) * np.eye(L.shape[0])
    X1, X2 = gens.X1, gens.X2
    interior = np.abs(gens.modes) <= gens.n_max - 2
    residuals = [
        L @ X1 - X1 @ L - 1j * X2,
        L @ X2 - X2 @ L + 1j * X1,
        X1 @ X2 - X2 @ X1,
    ]
    return max(float(np.max(np.abs(R[interior]))) for R in residuals)
