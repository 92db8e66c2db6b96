"""Code parameters, the MSR/MBR operating points and the storage-bandwidth
tradeoff of regenerating codes repaired over packet-erasure links.

All code parameters are exact :class:`fractions.Fraction` values so that
equality between the closed form and the cut-based oracle is meaningful.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

RationalLike = Union[int, float, str, Fraction]


class ParameterError(ValueError):
    """Raised when an input lies outside the domain of an operation."""


class _Infeasible:
    """Singleton marking an operating point that no code can achieve."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFEASIBLE"

    def __bool__(self) -> bool:
        return False

    def __reduce__(self):
        return (_Infeasible, ())


INFEASIBLE = _Infeasible()


def as_fraction(x: RationalLike) -> Fraction:
    """Convert to an exact rational.

    Floats are read through their shortest decimal repr, so ``0.32`` becomes
    ``8/25`` rather than the nearest binary double.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ParameterError(f"expected a number, got {x!r}")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as exc:
            raise ParameterError(f"not a rational number: {x!r}") from exc
    # numpy scalars and friends
    try:
        return Fraction(repr(float(x)))
    except (TypeError, ValueError) as exc:
        raise ParameterError(f"not a rational number: {x!r}") from exc


class Family(str, enum.Enum):
    MSR = "MSR"
    MBR = "MBR"
    INTERIOR = "INTERIOR"


@dataclass(frozen=True)
class SystemParams:
    """File size ``M`` and code geometry ``(n, k, d)``."""

    M: Fraction
    n: int
    k: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "M", as_fraction(self.M))
        for name in ("n", "k", "d"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v:
                raise ParameterError(f"{name} must be an integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if self.M <= 0:
            raise ParameterError(f"M must be positive, got {self.M}")
        if not 1 <= self.k <= self.n - 1:
            raise ParameterError(f"need 1 <= k <= n-1, got k={self.k}, n={self.n}")
        if not self.k <= self.d <= self.n - 1:
            raise ParameterError(f"need k <= d <= n-1, got d={self.d}, k={self.k}, n={self.n}")

    def with_d(self, d: int) -> "SystemParams":
        return SystemParams(self.M, self.n, self.k, d)

    def scaled(self, factor: RationalLike) -> "SystemParams":
        return SystemParams(self.M * as_fraction(factor), self.n, self.k, self.d)


@dataclass(frozen=True)
class ChannelModel:
    """I.i.d. packet erasure with probability ``epsilon``.

    Erasures are independent across fragments, links and repetitions.
    ``epsilon`` is kept exact for the tradeoff arithmetic; :attr:`p` is the
    float used by the probability computations.
    """

    epsilon: Fraction = Fraction(0)

    def __post_init__(self):
        eps = as_fraction(self.epsilon)
        if not 0 <= eps < 1:
            raise ParameterError(f"erasure probability must lie in [0, 1), got {eps}")
        object.__setattr__(self, "epsilon", eps)

    @property
    def p(self) -> float:
        return float(self.epsilon)

    @property
    def delivery(self) -> Fraction:
        return 1 - self.epsilon


LOSSLESS = ChannelModel(0)


@dataclass(frozen=True)
class CodePoint:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    family: Family
    d: int

    def __post_init__(self):
        if self.alpha <= 0:
            raise ParameterError("alpha must be positive")
        if self.beta < 0:
            raise ParameterError("beta must be non-negative")
        if self.gamma != self.d * self.beta:
            raise ParameterError(f"gamma={self.gamma} != d*beta={self.d * self.beta}")


def msr_point(p: SystemParams) -> CodePoint:
    """Minimum-storage point: ``alpha = M/k``, ``beta = M/(k(d-k+1))``."""
    beta = p.M / (p.k * (p.d - p.k + 1))
    return CodePoint(p.M / p.k, beta, p.d * beta, Family.MSR, p.d)


def mbr_point(p: SystemParams) -> CodePoint:
    """Minimum-bandwidth point, where each node stores exactly what a repair downloads."""
    beta = 2 * p.M / (p.k * (2 * p.d - p.k + 1))
    return CodePoint(p.d * beta, beta, p.d * beta, Family.MBR, p.d)


def f_threshold(p: SystemParams, i: int) -> Fraction:
    """Lossless repair bandwidth at the i-th corner of the tradeoff (i=0 is MSR, i=k-1 is MBR)."""
    if not 0 <= i <= p.k - 1:
        raise ParameterError(f"breakpoint index must be in [0, {p.k - 1}], got {i}")
    return Fraction(2 * p.d) * p.M / ((2 * p.k - i - 1) * i + 2 * p.k * (p.d - p.k + 1))


def g_slope(p: SystemParams, i: int) -> Fraction:
    # (2d - 2k + i + 1) i / (2d); the '+2k' variant breaks continuity at the MBR end.
    return Fraction((2 * p.d - 2 * p.k + i + 1) * i, 2 * p.d)


def breakpoints(p: SystemParams, ch: ChannelModel = LOSSLESS) -> list[Fraction]:
    """Total repair bandwidths ``f(i)/(1-eps)`` for i = 0..k-1 (descending)."""
    return [f_threshold(p, i) / ch.delivery for i in range(p.k)]


def tradeoff_alpha_star(p: SystemParams, gamma: RationalLike, ch: ChannelModel = LOSSLESS):
    """Minimal per-node storage for total repair bandwidth ``gamma`` under erasure.

    Returns a Fraction, or :data:`INFEASIBLE` when ``gamma`` is below the
    minimum-bandwidth point.
    """
    gamma = as_fraction(gamma)
    if gamma <= 0:
        raise ParameterError(f"gamma must be positive, got {gamma}")
    effective = gamma * ch.delivery
    if effective >= f_threshold(p, 0):
        return p.M / p.k
    for i in range(1, p.k):
        if f_threshold(p, i) <= effective:
            return (p.M - g_slope(p, i) * effective) / (p.k - i)
    return INFEASIBLE


def cut_capacities(p: SystemParams, beta: Fraction, ch: ChannelModel) -> list[Fraction]:
    return [(p.d - i) * ch.delivery * beta for i in range(p.k)]


def cut_feasible(p: SystemParams, alpha: RationalLike, beta: RationalLike,
                 ch: ChannelModel = LOSSLESS) -> bool:
    """Min-cut test on the information-flow graph with per-link delivery ``(1-eps)beta``."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    if alpha < 0 or beta < 0:
        raise ParameterError("alpha and beta must be non-negative")
    return sum(min(c, alpha) for c in cut_capacities(p, beta, ch)) >= p.M


def min_cut_alpha(p: SystemParams, gamma: RationalLike, ch: ChannelModel = LOSSLESS):
    """Smallest alpha passing :func:`cut_feasible` at ``beta = gamma/d``.

    Works directly on the cut sum, which is piecewise linear in alpha with
    kinks at the k per-stage capacities; no use is made of the closed form.
    """
    gamma = as_fraction(gamma)
    if gamma <= 0:
        raise ParameterError(f"gamma must be positive, got {gamma}")
    caps = sorted(cut_capacities(p, gamma / p.d, ch))
    if sum(caps) < p.M:
        return INFEASIBLE

    def cut(a):
        return sum(min(c, a) for c in caps)

    lo = Fraction(0)
    for hi in caps:
        if cut(hi) >= p.M:
            slope = sum(1 for c in caps if c > lo)
            alpha = lo + (p.M - cut(lo)) / slope
            assert cut(alpha) == p.M
            return alpha
        lo = hi
    raise AssertionError("unreachable: total capacity covers M")


def tradeoff_points(p: SystemParams, ch: ChannelModel = LOSSLESS) -> list[CodePoint]:
    """The k corner points of the tradeoff curve, MSR first and MBR last."""
    points = []
    for i, gamma in enumerate(breakpoints(p, ch)):
        alpha = tradeoff_alpha_star(p, gamma, ch)
        if i == 0:
            family = Family.MSR
        elif i == p.k - 1:
            family = Family.MBR
        else:
            family = Family.INTERIOR
        points.append(CodePoint(alpha, gamma / p.d, gamma, family, p.d))
    return points
