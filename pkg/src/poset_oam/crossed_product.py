"""Clock and shift generators of C(X) x| Z_N and checks of their relations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CrossedProductAlgebra",
    "RelationReport",
    "roots_of_unity",
    "build_clock",
    "build_shift",
    "build_algebra",
    "verify_relations",
    "span_rank",
]


def _check_order(N: int) -> int:
    if int(N) != N or N < 2:
        raise ValueError(f"cyclic group order must be an integer >= 2, got {N!r}")
    return int(N)


def roots_of_unity(N: int) -> np.ndarray:
    """``exp(2 pi i k / N)`` for ``k = 0..N-1``.

    Quarter-turn multiples are snapped to their exact values so that small
    cases such as N = 2, 4 multiply out without rounding.
    """
    N = _check_order(N)
    k = np.arange(N)
    roots = np.exp(2j * np.pi * k / N)
    quarter = (4 * k) % N == 0
    exact = np.array([1, 1j, -1, -1j])[(4 * k[quarter]) // N % 4]
    roots[quarter] = exact
    return roots


def build_clock(N: int) -> np.ndarray:
    """``U = diag(1, lambda, ..., lambda^{N-1})`` with ``lambda = e^{2 pi i/N}``."""
    return np.diag(roots_of_unity(N))


def build_shift(N: int) -> np.ndarray:
    """Cyclic translation ``V e_k = e_{k+1 mod N}``."""
    N = _check_order(N)
    return np.roll(np.eye(N, dtype=complex), 1, axis=0)


@dataclass(frozen=True, eq=False)
class CrossedProductAlgebra:
    N: int
    lam: complex
    U: np.ndarray
    V: np.ndarray


def build_algebra(N: int) -> CrossedProductAlgebra:
    roots = roots_of_unity(N)
    return CrossedProductAlgebra(int(N), complex(roots[1]), np.diag(roots), build_shift(N))


@dataclass(frozen=True)
class RelationReport:
    """Max-entry deviations of the three defining relations."""

    clock_power: float
    shift_power: float
    commutation: float

    def max(self) -> float:
        return max(self.clock_power, self.shift_power, self.commutation)

    def passed(self, tol: float) -> bool:
        return self.max() < tol

    def to_json(self) -> dict:
        return {
            "clock_power": self.clock_power,
            "shift_power": self.shift_power,
            "commutation": self.commutation,
        }


def _dev(A: np.ndarray) -> float:
    return float(np.max(np.abs(A))) if A.size else 0.0


def verify_relations(alg: CrossedProductAlgebra, tol: float = 1e-10) -> RelationReport:
    """Residuals of ``U^N = 1``, ``V^N = 1`` and ``U V U^{-1} = lambda V``.

    The inverse of U is taken as its adjoint; for a non-unitary U this is
    still the quantity the relation test should flag.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    U, V = np.asarray(alg.U), np.asarray(alg.V)
    if U.shape != V.shape or U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError(f"generator shapes differ: {U.shape} vs {V.shape}")
    N = U.shape[0]
    eye = np.eye(N)
    return RelationReport(
        clock_power=_dev(np.linalg.matrix_power(U, N) - eye),
        shift_power=_dev(np.linalg.matrix_power(V, N) - eye),
        commutation=_dev(U @ V @ U.conj().T - alg.lam * V),
    )


def span_rank(alg: CrossedProductAlgebra) -> int:
    """Rank of the Gram matrix of ``{U^a V^b : 0 <= a, b < N}``.

    Equal to N^2 exactly when the words span all of M_N(C).
    """
    N = alg.N
    words = []
    Ua = np.eye(N, dtype=complex)
    for _ in range(N):
        UaVb = Ua.copy()
        for _ in range(N):
            words.append(UaVb.ravel())
            UaVb = UaVb @ alg.V
        Ua = Ua @ alg.U
    W = np.array(words)
    gram = W.conj() @ W.T
    return int(np.linalg.matrix_rank(gram))
