"""The 2N-point circle poset built from the commutative algebra C^N.

Top points carry the one-dimensional representations ``c -> lambda_i``;
bottom points carry the two-dimensional ones ``c -> diag(lambda_i,
lambda_{i+1})`` with the cyclic identification ``N + 1 = 1``.  Kernels are
tracked exactly as index sets: a representation whose kernel is
``{c : lambda_k = 0 for k in Z}`` is stored through its zero set ``Z``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AlgebraElement",
    "PointKind",
    "PosetPoint",
    "CirclePoset",
    "MIN_SITES",
    "Top",
    "Bottom",
    "check_sites",
    "build_poset",
    "eval_top",
    "eval_bottom",
    "kernel_indices",
    "kernel_contained",
    "partial_order",
]

#: Smallest lattice size for which the cyclic hopping terms stay distinct.
MIN_SITES = 3


def check_sites(N: int) -> int:
    if int(N) != N:
        raise ValueError(f"lattice size must be an integer, got {N!r}")
    N = int(N)
    if N < MIN_SITES:
        raise ValueError(f"lattice size N={N} is degenerate; need N >= {MIN_SITES}")
    return N


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """An element ``c = (lambda_1, ..., lambda_N)`` of C^N."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.ndim != 1:
            raise ValueError("algebra element must be a flat sequence")
        check_sites(values.size)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def N(self) -> int:
        return self.values.size

    def __len__(self):
        return self.values.size

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        if other.N != self.N:
            raise ValueError(f"length mismatch: {self.N} vs {other.N}")
        return AlgebraElement(self.values * other.values)

    def as_matrix(self) -> np.ndarray:
        """Diagonal representation on the K-cycle C^N."""
        return np.diag(self.values)

    @classmethod
    def unit(cls, N: int) -> AlgebraElement:
        return cls(np.ones(N, dtype=complex))


class PointKind(enum.Enum):
    TOP = "T"
    BOTTOM = "B"


@dataclass(frozen=True)
class PosetPoint:
    kind: PointKind
    index: int

    @property
    def sort_key(self) -> tuple[int, int]:
        return (0 if self.kind is PointKind.TOP else 1, self.index)

    @property
    def label(self) -> str:
        return f"{self.kind.value}{self.index}"

    def __str__(self):
        return self.label

    @classmethod
    def parse(cls, label: str) -> PosetPoint:
        return cls(PointKind(label[0]), int(label[1:]))


def Top(i: int) -> PosetPoint:
    return PosetPoint(PointKind.TOP, i)


def Bottom(i: int) -> PosetPoint:
    return PosetPoint(PointKind.BOTTOM, i)


@dataclass(frozen=True)
class CirclePoset:
    N: int
    points: tuple[PosetPoint, ...]
    covers: frozenset[tuple[PosetPoint, PosetPoint]]

    def upper_covers(self, p: PosetPoint) -> list[PosetPoint]:
        return sorted((hi for lo, hi in self.covers if lo == p), key=_key)

    def lower_covers(self, p: PosetPoint) -> list[PosetPoint]:
        return sorted((lo for lo, hi in self.covers if hi == p), key=_key)

    def neighbours(self, p: PosetPoint) -> list[PosetPoint]:
        return self.upper_covers(p) + self.lower_covers(p)

    def hasse_cycle(self) -> list[PosetPoint]:
        """Walk the Hasse diagram from T1, stepping towards B1 first.

        Raises ``ValueError`` if the diagram is not a single cycle through
        all 2N points.
        """
        start = Top(1)
        path = [start]
        prev, cur = None, start
        while True:
            nbrs = self.neighbours(cur)
            if len(nbrs) != 2:
                raise ValueError(f"{cur} has {len(nbrs)} Hasse neighbours")
            if prev is None:
                nxt = Bottom(1) if Bottom(1) in nbrs else nbrs[0]
            else:
                nxt = nbrs[0] if nbrs[1] == prev else nbrs[1]
            if nxt == start:
                break
            if nxt in path:
                raise ValueError("Hasse diagram closes early")
            path.append(nxt)
            prev, cur = cur, nxt
        if len(path) != len(self.points):
            raise ValueError("Hasse diagram is not a single cycle")
        return path

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "points": [p.label for p in self.points],
            "covers": [[lo.label, hi.label] for lo, hi in sorted(self.covers, key=_pair_key)],
        }


def _key(p: PosetPoint):
    return p.sort_key


def _pair_key(pair):
    lo, hi = pair
    return (_key(lo), _key(hi))


def _wrap(i: int, N: int) -> int:
    return (i - 1) % N + 1


def build_poset(N: int) -> CirclePoset:
    N = check_sites(N)
    points = tuple(Top(i) for i in range(1, N + 1)) + tuple(
        Bottom(i) for i in range(1, N + 1)
    )
    covers = set()
    for i in range(1, N + 1):
        covers.add((Bottom(i), Top(i)))
        covers.add((Bottom(i), Top(_wrap(i + 1, N))))
    return CirclePoset(N, points, frozenset(covers))


def _check_index(c: AlgebraElement, i: int) -> None:
    if not 1 <= i <= c.N:
        raise IndexError(f"point index {i} outside 1..{c.N}")


def eval_top(c: AlgebraElement, i: int) -> complex:
    _check_index(c, i)
    return complex(c.values[i - 1])


def eval_bottom(c: AlgebraElement, i: int) -> np.ndarray:
    _check_index(c, i)
    return np.diag([c.values[i - 1], c.values[_wrap(i + 1, c.N) - 1]])


def kernel_indices(p: PosetPoint, N: int) -> frozenset[int]:
    """Zero set Z with ``ker pi_p = {c : lambda_k = 0 for all k in Z}``."""
    if p.kind is PointKind.TOP:
        return frozenset({p.index})
    return frozenset({p.index, _wrap(p.index + 1, N)})


def kernel_contained(p: PosetPoint, q: PosetPoint, N: int) -> bool:
    """Exact test of ``ker pi_p`` being a subspace of ``ker pi_q``.

    More vanishing coordinates means a smaller subspace, so the inclusion
    reverses on zero sets.
    """
    return kernel_indices(q, N) <= kernel_indices(p, N)


def partial_order(poset: CirclePoset) -> frozenset[tuple[PosetPoint, PosetPoint]]:
    """All pairs ``(p, q)`` with ``p <= q``, i.e. ``ker pi_p`` inside ``ker pi_q``."""
    return frozenset(
        (p, q)
        for p, q in itertools.product(poset.points, repeat=2)
        if kernel_contained(p, q, poset.N)
    )
