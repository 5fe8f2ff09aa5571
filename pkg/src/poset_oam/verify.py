"""Property suite behind ``poset-oam verify``.

Every check returns a single non-negative residual that is compared with
its own tolerance.  Random inputs come from ``numpy.random.default_rng``
seeded with ``(seed, check index)``, so results do not depend on the order
in which checks are scheduled.
"""

from __future__ import annotations

import math
import os
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import crossed_product as cp
from . import gauge, poset, spectra, triple

THREADS_ENV = "POSET_OAM_THREADS"

FD_STEP = 1e-4
FD_SIZES = (3, 4, 8, 16, 64)
FD_THETAS = (0.0, 0.25, 0.5, 0.9)
FD_PHI = 1.0


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual < self.tolerance)

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = self.passed
        return d


def _random_theta(rng, size=None):
    return rng.uniform(0.0, 1.0, size)


def fd_relative_error(j: int, theta: float, N: int, h: float = FD_STEP, phi: float = FD_PHI) -> float:
    pair = spectra.scaled_eigenpair(j, theta, N)
    est = spectra.fd_eigenvalue(pair, phi, h)
    return abs(est - pair.eigenvalue_hbar) / abs(pair.eigenvalue_hbar)


def fd_observed_order(j: int, theta: float, N: int, phi: float = FD_PHI) -> float:
    """Observed convergence order of the central difference under two halvings.

    The starting step is ``0.2 / frequency`` so that truncation error, not
    rounding, dominates on every level.
    """
    pair = spectra.scaled_eigenpair(j, theta, N)
    h0 = 0.2 / pair.frequency
    errs = [
        abs(spectra.fd_eigenvalue(pair, phi, h0 / 2**k) - pair.eigenvalue_hbar)
        for k in range(3)
    ]
    return min(math.log2(errs[k] / errs[k + 1]) for k in range(2))


def check_fd_eigenvalues(rng) -> float:
    return max(
        fd_relative_error(j, theta, N)
        for N in FD_SIZES
        for theta in FD_THETAS
        for j in range(1, N + 1)
    )


def check_fd_order(rng) -> float:
    orders = [
        fd_observed_order(j, theta, N)
        for N in FD_SIZES
        for theta in FD_THETAS
        for j in range(1, N + 1)
    ]
    # only a deficit below second order counts against the check
    return max(0.0, 2.0 - min(orders))


def covariant_case(theta: float, phi: float, N: int) -> float:
    T = triple.build_dirac(N)
    conn = triple.build_connection(T, theta, phi)
    eta = triple.build_section(theta, phi, N)
    out = spectra.covariant_minus_apply(T, conn, eta)
    target = np.exp(1j * theta * phi / N) * eta.lowered()
    return float(np.max(np.abs(math.sqrt(2) * T.epsilon * out.components - target)))


def check_covariant(rng, cases: int = 1000) -> float:
    worst = 0.0
    for _ in range(cases):
        N = int(rng.integers(3, 33))
        theta = float(_random_theta(rng))
        phi = float(rng.uniform(0, 2 * math.pi))
        worst = max(worst, covariant_case(theta, phi, N))
    return worst


def check_sigma_minimum(rng, cases: int = 100) -> float:
    worst = 0.0
    for _ in range(cases):
        N = int(rng.integers(3, 1025))
        rep = gauge.verify_sigma_minimum(
            float(_random_theta(rng)), float(rng.uniform(0, 2 * math.pi)), N
        )
        worst = max(worst, abs(rep.ym_value), abs(rep.curvature_value))
    return worst


YM_INITS = (0.0, 1.0, 2 + 1j, -1.0)


def check_ym_descent(rng) -> float:
    calc = gauge.TwoPointCalculus()
    return max(
        gauge.minimize_ym(calc, init, tol=1e-10, max_iters=10_000).ym for init in YM_INITS
    )


RELATION_SIZES = (2, 3, 8, 64, 1024)


def check_relations(rng) -> float:
    return max(
        cp.verify_relations(cp.build_algebra(N), tol=1e-10).max() for N in RELATION_SIZES
    )


def check_span(rng) -> float:
    return float(max(abs(cp.span_rank(cp.build_algebra(N)) - N * N) for N in range(2, 9)))


DIRAC_SIZES = (3, 4, 5, 7, 8, 16, 31, 64, 100, 128, 255, 256, 512)


def check_dirac_agreement(rng) -> float:
    worst = 0.0
    for N in DIRAC_SIZES:
        M = np.exp(1j * rng.uniform(0, 2 * math.pi))
        eps = float(rng.uniform(0.1, 2.0))
        T = triple.build_dirac(N, eps, M)
        dense = spectra.dirac_spectrum_dense(T).values
        fast = spectra.dirac_spectrum_circulant(T).values
        worst = max(worst, float(np.max(np.abs(dense - fast))))
    return worst


def check_dirac_n4(rng) -> float:
    T = triple.build_dirac(4, 1.0, 1.0)
    expected = np.array([-math.sqrt(2), 0.0, 0.0, math.sqrt(2)])
    return float(np.max(np.abs(spectra.dirac_spectrum_dense(T).values - expected)))


def check_gram_continuum(rng) -> float:
    pairs = [spectra.continuum_eigenpair(n, 0.0) for n in range(-8, 9)]
    G = spectra.gram_matrix(pairs, 64, 2 * math.pi)
    return float(np.max(np.abs(G - np.eye(len(pairs)))))


def check_gram_scaled(rng) -> float:
    worst = 0.0
    for N in range(3, 9):
        theta = float(_random_theta(rng))
        pairs = [spectra.scaled_eigenpair(j, theta, N) for j in range(1, N + 1)]
        G = spectra.gram_matrix(pairs, 64, 2 * math.pi * N)
        worst = max(worst, float(np.max(np.abs(G - np.eye(N)))))
    return worst


def brute_spectra_distance(theta1: float, theta2: float, N: int, width: int = 50) -> float:
    r = np.arange(-width, width + 1)
    a = (r + theta1)[:, None]
    b = (r + theta2)[None, :]
    return float(np.min(np.abs(a - b))) / N


def check_spectra_distance(rng, cases: int = 200) -> float:
    worst = 0.0
    for _ in range(cases):
        t1, t2 = (float(x) for x in _random_theta(rng, 2))
        N = int(rng.integers(1, 65))
        d = spectra.spectra_distance(t1, t2, N)
        if t1 != t2 and not d > 0:
            return math.inf
        worst = max(worst, abs(d - brute_spectra_distance(t1, t2, N)))
    return worst


def check_e2(rng) -> float:
    return max(
        spectra.e2_commutator_residual(spectra.euclidean_generators(16, theta), theta)
        for theta in (0.0, 0.5)
    )


def poset_violations(N: int) -> int:
    """Number of failed structural properties of the N-site circle poset."""
    P = poset.build_poset(N)
    order = poset.partial_order(P)
    bad = 0
    bad += len(P.points) != 2 * N
    bad += len(P.covers) != 2 * N
    bad += any((p, p) not in order for p in P.points)
    bad += sum(1 for p, q in order if p != q and (q, p) in order)
    bad += sum(
        1
        for p, q in order
        for r in P.points
        if (q, r) in order and (p, r) not in order
    )
    # covers are exactly the strict relations with nothing in between
    strict = {(p, q) for p, q in order if p != q}
    covers = {
        (p, q)
        for p, q in strict
        if not any((p, r) in strict and (r, q) in strict for r in P.points)
    }
    bad += covers != set(P.covers)
    for i in range(1, N + 1):
        b = poset.Bottom(i)
        for t in (poset.Top(i), poset.Top(i % N + 1)):
            bad += not poset.kernel_indices(t, N) <= poset.kernel_indices(b, N)
    try:
        bad += len(P.hasse_cycle()) != 2 * N
    except ValueError:
        bad += 1
    return bad


def check_poset(rng) -> float:
    return float(sum(poset_violations(N) for N in range(3, 17)))


def check_hermiticity(rng, cases: int = 50) -> float:
    worst = 0.0
    for _ in range(cases):
        N = int(rng.integers(3, 65))
        T = triple.build_dirac(N, float(rng.uniform(0.1, 3)), np.exp(1j * rng.uniform(0, 6.3)))
        conn = triple.build_connection(T, float(_random_theta(rng)), float(rng.uniform(-10, 10)))
        worst = max(
            worst,
            float(np.max(np.abs(T.D - T.D.conj().T))),
            float(np.max(np.abs(conn.rho - conn.rho.conj().T))),
        )
    return worst


#: name -> (check, native tolerance)
CHECKS: dict[str, tuple[Callable, float]] = {
    "eigenvalue_fd_relative": (check_fd_eigenvalues, 1e-6),
    "eigenvalue_fd_order_deficit": (check_fd_order, 0.1),
    "covariant_minus_identity": (check_covariant, 1e-12),
    "ym_sigma_minimum": (check_sigma_minimum, 1e-12),
    "ym_descent": (check_ym_descent, 1e-10),
    "crossed_product_relations": (check_relations, 1e-10),
    "crossed_product_span_rank": (check_span, 0.5),
    "dirac_dense_vs_circulant": (check_dirac_agreement, 1e-9),
    "dirac_n4_spectrum": (check_dirac_n4, 1e-12),
    "gram_continuum": (check_gram_continuum, 1e-12),
    "gram_scaled": (check_gram_scaled, 1e-12),
    "spectra_distance_bruteforce": (check_spectra_distance, 1e-14),
    "e2_commutators": (check_e2, 1e-10),
    "poset_structure": (check_poset, 0.5),
    "operator_hermiticity": (check_hermiticity, 1e-12),
}


def thread_cap() -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def run_checks(
    names: list[str] | None = None,
    seed: int = 0,
    tolerance: float | None = None,
) -> list[CheckResult]:
    """Run the selected checks; ``tolerance`` overrides every native tolerance."""
    selected = list(CHECKS) if not names else names
    unknown = [n for n in selected if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}")
    index = {name: k for k, name in enumerate(CHECKS)}

    def one(name):
        fn, tol = CHECKS[name]
        rng = np.random.default_rng([seed, index[name]])
        return CheckResult(name, float(fn(rng)), tol if tolerance is None else tolerance)

    with ThreadPoolExecutor(max_workers=thread_cap()) as pool:
        return list(pool.map(one, selected))
