"""Simulated storage systems: node contents as coefficient vectors over GF(2^8).

Node ``i`` holds ``alpha`` row vectors of length ``M``; a set of nodes can
rebuild the file iff their stacked rows have rank ``M``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from ..core import ParameterError, SystemParams
from .field import EXP, rank

RANDOM = "random"
PRODUCT_MATRIX = "product-matrix"
LAYOUTS = (RANDOM, PRODUCT_MATRIX)


class ConstructionError(RuntimeError):
    """No MDS layout was found within the retry budget."""


@dataclass
class StorageSystem:
    params: SystemParams
    alpha: int
    nodes: np.ndarray
    generation: int = 0
    alpha1: int = 0
    layout: str = RANDOM
    _tables: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.alpha1 == 0:
            self.alpha1 = self.alpha
        p = self.params
        if self.nodes.shape != (p.n, self.alpha, int(p.M)):
            raise ParameterError(f"node array has shape {self.nodes.shape}, "
                                 f"expected {(p.n, self.alpha, int(p.M))}")

    @property
    def M(self) -> int:
        return int(self.params.M)

    @property
    def failed_node(self) -> int:
        return self.generation % self.params.n

    def stacked(self, subset) -> np.ndarray:
        return self.nodes[list(subset)].reshape(-1, self.M)

    def with_node(self, index: int, content: np.ndarray) -> "StorageSystem":
        nodes = self.nodes.copy()
        nodes[index] = content
        return replace(self, nodes=nodes, generation=self.generation + 1, _tables={})


def is_mds(sys: StorageSystem) -> bool:
    """Every k-subset of nodes spans the whole file space."""
    p = sys.params
    return all(rank(sys.stacked(s)) == sys.M for s in itertools.combinations(range(p.n), p.k))


def subset_ranks(sys: StorageSystem, size: int) -> list[int]:
    return [rank(sys.stacked(s)) for s in itertools.combinations(range(sys.params.n), size)]


def integer_scale(*values: Fraction) -> int:
    """Least common multiple of the denominators."""
    return math.lcm(*(Fraction(v).denominator for v in values))


def _require_integer_params(p: SystemParams) -> int:
    if p.M.denominator != 1:
        raise ParameterError(f"simulation needs an integer file size, got M={p.M}")
    return int(p.M)


def vandermonde(n: int, d: int) -> np.ndarray:
    """Rows ``(1, x_i, x_i^2, ...)`` at distinct points ``x_i = 2^i``; any d rows independent."""
    if n > 255:
        raise ParameterError("GF(2^8) supports at most 255 distinct evaluation points")
    return np.array([[EXP[(i * j) % 255] for j in range(d)] for i in range(n)], dtype=np.uint8)


def product_matrix_mbr(n: int, k: int, d: int, copies: int = 1) -> np.ndarray:
    """Minimum-bandwidth product-matrix layout, ``copies`` independent stripes.

    The symmetric d x d message matrix is ``[[S, T], [T^t, 0]]`` with ``S``
    symmetric k x k; node i stores ``psi_i^t`` times it.  Returns an
    ``(n, copies*d, copies*B)`` array with ``B = k d - k(k-1)/2``.
    """
    idx = -np.ones((d, d), dtype=np.int64)
    s = 0
    for a in range(k):
        for b in range(a, k):
            idx[a, b] = idx[b, a] = s
            s += 1
    for a in range(k):
        for b in range(k, d):
            idx[a, b] = idx[b, a] = s
            s += 1
    symbols = s
    psi = vandermonde(n, d)
    stripe = np.zeros((n, d, symbols), dtype=np.uint8)
    for i in range(n):
        for col in range(d):
            for j in range(d):
                if idx[j, col] >= 0:
                    stripe[i, col, idx[j, col]] ^= psi[i, j]
    out = np.zeros((n, copies * d, copies * symbols), dtype=np.uint8)
    for c in range(copies):
        out[:, c * d:(c + 1) * d, c * symbols:(c + 1) * symbols] = stripe
    return out


def init_system(p: SystemParams, alpha: int, rng_seed: int, *, layout: str = RANDOM,
                beta: int | None = None, alpha1: int | None = None,
                max_tries: int = 100) -> StorageSystem:
    """Build an MDS storage system by rejection sampling.

    ``layout="random"`` draws every stored vector uniformly.  This is the
    right model when ``(k-1)*alpha1 < M`` (minimum storage): random nodes then
    meet the cut bound.  For minimum-bandwidth bases, random nodes would carry
    far more joint information than any real code, so ``layout="product-matrix"``
    places a product-matrix MBR code (``beta`` stripes) in the first ``alpha1``
    rows; any rows beyond ``alpha1`` are random extra storage.
    """
    M = _require_integer_params(p)
    if layout not in LAYOUTS:
        raise ParameterError(f"unknown layout {layout!r}")
    if alpha1 is None:
        alpha1 = alpha
    if not 0 < alpha1 <= alpha:
        raise ParameterError(f"need 0 < alpha1 <= alpha, got {alpha1}, {alpha}")
    if p.k * alpha < M:
        raise ParameterError(f"k*alpha={p.k * alpha} < M={M}: no MDS layout exists")
    rng = np.random.Generator(np.random.PCG64(rng_seed))

    base = None
    if layout == PRODUCT_MATRIX:
        if beta is None or beta < 1:
            raise ParameterError("product-matrix layout needs an integer beta >= 1")
        symbols = p.k * p.d - p.k * (p.k - 1) // 2
        if alpha1 != p.d * beta or M != beta * symbols:
            raise ParameterError(f"product-matrix MBR needs alpha1=d*beta={p.d * beta} and "
                                 f"M=beta*{symbols}={beta * symbols}, got alpha1={alpha1}, M={M}")
        base = product_matrix_mbr(p.n, p.k, p.d, beta)

    for _ in range(max_tries):
        nodes = rng.integers(0, 256, size=(p.n, alpha, M), dtype=np.uint8)
        if base is not None:
            nodes[:, :alpha1] = base
        sys = StorageSystem(p, alpha, nodes, 0, alpha1, layout)
        if is_mds(sys):
            return sys
    raise ConstructionError(f"no MDS layout after {max_tries} draws")
