"""Gauge theory on the two-point K-cycle ``H_a + H_b``.

The universal forms are reduced with the two-point rules

    e de (1 - e) = e de,    e (de) e = 0,    (1 - e) de (1 - e) = 0,

which collapse the curvature of ``V = -Phi e de + Phi (1 - e) de`` to a
scalar multiple of ``de de``:

    Theta = dV + V^2 = -(Phi + conj(Phi) + |Phi|^2) de de.

The scalar ``Phi + conj(Phi) + |Phi|^2 = |Phi + 1|^2 - 1`` is what
:func:`curvature_coefficient` returns.  Flat potentials, and the zeros of
the Yang-Mills action, are exactly the circle ``|Phi + 1| = 1``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .triple import UNIT_TOL, build_sigma

__all__ = [
    "TwoPointCalculus",
    "GaugeCoefficient",
    "ConvergenceError",
    "DescentResult",
    "SigmaMinimumReport",
    "pi_de",
    "pi_de_de",
    "vector_potential",
    "curvature_coefficient",
    "curvature_matrix",
    "ym_action",
    "ym_gradient",
    "minimize_ym",
    "verify_sigma_minimum",
]

log = logging.getLogger(__name__)

#: Offset applied when descent starts at the symmetric point Phi = -1.
SYMMETRIC_KICK = 1e-8


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class TwoPointCalculus:
    M: complex = 1.0
    dim: int = 1

    def __post_init__(self):
        object.__setattr__(self, "M", complex(self.M))
        if abs(abs(self.M) - 1) > UNIT_TOL:
            raise ValueError(f"|M| must be one, got {abs(self.M)}")
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))

    def trace_mm_squared(self) -> float:
        """``Tr((M* M)^2)`` for M acting as ``M`` times the identity on C^dim."""
        return self.dim * abs(self.M) ** 4


@dataclass(frozen=True)
class GaugeCoefficient:
    """Complex coefficient Phi of a vector potential."""

    phi_c: complex

    def __post_init__(self):
        object.__setattr__(self, "phi_c", complex(self.phi_c))

    @property
    def curvature(self) -> float:
        return curvature_coefficient(self)

    def ym(self, calc: TwoPointCalculus | None = None) -> float:
        return ym_action(self, calc or TwoPointCalculus())


def _coefficient(Phi) -> complex:
    return Phi.phi_c if isinstance(Phi, GaugeCoefficient) else complex(Phi)


def pi_de(calc: TwoPointCalculus) -> np.ndarray:
    M = calc.M
    return np.array([[0, -M.conjugate()], [M, 0]], dtype=complex)


def pi_de_de(calc: TwoPointCalculus) -> np.ndarray:
    M = calc.M
    return np.diag([-M.conjugate() * M, -M * M.conjugate()])


def vector_potential(Phi, calc: TwoPointCalculus) -> np.ndarray:
    """Self-adjoint ``[[0, Phi conj(M)], [conj(Phi) M, 0]]``."""
    p, M = _coefficient(Phi), calc.M
    return np.array([[0, p * M.conjugate()], [p.conjugate() * M, 0]], dtype=complex)


def curvature_coefficient(Phi) -> float:
    p = _coefficient(Phi)
    # collected from -conj(Phi) de de - Phi de de - Phi conj(Phi) de de
    return float((p + p.conjugate() + p * p.conjugate()).real)


def curvature_matrix(Phi, calc: TwoPointCalculus) -> np.ndarray:
    """Represented curvature ``pi(Theta) = -c(Phi) pi(de de)``."""
    return -curvature_coefficient(Phi) * pi_de_de(calc)


def ym_action(Phi, calc: TwoPointCalculus) -> float:
    """``2 (|Phi + 1|^2 - 1)^2 Tr((M* M)^2)``."""
    s = abs(_coefficient(Phi) + 1) ** 2 - 1
    return 2.0 * s * s * calc.trace_mm_squared()


def ym_gradient(Phi, calc: TwoPointCalculus) -> np.ndarray:
    """Gradient with respect to ``(Re Phi, Im Phi)``."""
    p = _coefficient(Phi)
    s = abs(p + 1) ** 2 - 1
    k = 8.0 * s * calc.trace_mm_squared()
    return np.array([k * (p.real + 1), k * p.imag])


@dataclass
class DescentResult:
    coefficient: GaugeCoefficient
    ym: float
    iterations: int
    converged: bool
    trace: list[tuple[int, complex, float]] = field(default_factory=list)

    def to_json(self) -> dict:
        p = self.coefficient.phi_c
        return {
            "result": [p.real, p.imag],
            "ym": self.ym,
            "iterations": self.iterations,
            "converged": self.converged,
            "trace": [
                {"iter": k, "phi": [z.real, z.imag], "ym": v} for k, z, v in self.trace
            ],
        }


def minimize_ym(
    calc: TwoPointCalculus,
    init: complex = 0.0,
    tol: float = 1e-10,
    max_iters: int = 10_000,
    step: float = 1.0,
) -> DescentResult:
    """Backtracking gradient descent on YM over the complex plane.

    The minimizing set is the whole circle ``|Phi + 1| = 1``, so the point
    reached depends on ``init``.  Starting exactly at the stationary centre
    ``Phi = -1`` the start is moved by ``SYMMETRIC_KICK`` towards +1.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    z = complex(init)
    if z == -1:
        z += SYMMETRIC_KICK
    f = ym_action(z, calc)
    trace = [(0, z, f)]
    it = 0
    while f >= tol:
        if it >= max_iters:
            raise ConvergenceError(
                f"YM={f:.3e} still above tol={tol:g} after {max_iters} iterations"
            )
        it += 1
        g = ym_gradient(z, calc)
        gz = complex(g[0], g[1])
        gg = float(g @ g)
        t = step
        while True:
            cand = z - t * gz
            fc = ym_action(cand, calc)
            # Armijo sufficient decrease
            if fc <= f - 1e-4 * t * gg:
                break
            t *= 0.5
            if t < 1e-300:
                raise ConvergenceError(f"line search stalled at Phi={z}")
        z, f = cand, fc
        step = min(2 * t, 1.0)
        trace.append((it, z, f))
    log.debug("minimize_ym: %d iterations, YM=%.3e", it, f)
    return DescentResult(GaugeCoefficient(z), f, it, True, trace)


@dataclass(frozen=True)
class SigmaMinimumReport:
    sigma: complex
    ym_value: float
    curvature_value: float


def verify_sigma_minimum(
    theta: float, phi: float, N: int, calc: TwoPointCalculus | None = None
) -> SigmaMinimumReport:
    sigma = build_sigma(theta, phi, N)
    calc = calc or TwoPointCalculus()
    return SigmaMinimumReport(sigma, ym_action(sigma, calc), curvature_coefficient(sigma))
