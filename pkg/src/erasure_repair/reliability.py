"""Closed-form probability of successful regeneration for three repair schemes.

* extra helpers: ``d'`` helpers transmit, any ``d`` of them suffice;
* repetition: each required fragment is sent ``r_j`` times without feedback;
* two-layer storage: each helper sends a ``beta1`` batch from its base layer
  and a ``beta2`` batch backed by extra storage ``alpha2``.

A helper's batch is a single Bernoulli trial: it arrives whole or not at all.
The two batches of a helper in the two-layer scheme travel on independent links.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import ChannelModel, ParameterError, SystemParams, as_fraction


@dataclass(frozen=True)
class HelperScheme:
    d: int
    d_prime: int
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", as_fraction(self.beta))
        if self.d < 1:
            raise ParameterError(f"d must be positive, got {self.d}")
        if self.d_prime < self.d:
            raise ParameterError(f"need d' >= d, got d={self.d}, d'={self.d_prime}")
        if self.beta <= 0:
            raise ParameterError("beta must be positive")

    @property
    def gamma_prime(self) -> Fraction:
        """Bandwidth actually spent: ``d' * beta``."""
        return self.d_prime * self.beta

    def check(self, p: SystemParams) -> None:
        if self.d_prime > p.n - 1:
            raise ParameterError(f"d'={self.d_prime} exceeds the {p.n - 1} surviving nodes")


@dataclass(frozen=True)
class RepetitionScheme:
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if not counts:
            raise ParameterError("repetition scheme needs at least one fragment")
        if any(c < 1 for c in counts):
            raise ParameterError(f"every repetition count must be >= 1, got {counts}")
        object.__setattr__(self, "counts", counts)


@dataclass(frozen=True)
class TwoLayerAllocation:
    alpha1: Fraction
    alpha2: Fraction
    beta1: Fraction
    beta2: Fraction

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "beta1", "beta2"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.alpha1 <= 0 or self.beta1 <= 0:
            raise ParameterError("alpha1 and beta1 must be positive")
        if self.alpha2 < 0 or self.beta2 < 0:
            raise ParameterError("alpha2 and beta2 must be non-negative")
        if self.beta2 > self.alpha2:
            raise ParameterError(f"beta2={self.beta2} exceeds the extra storage alpha2={self.alpha2}")
        if self.beta1 > self.alpha1:
            raise ParameterError(f"beta1={self.beta1} exceeds alpha1={self.alpha1}")

    @property
    def alpha(self) -> Fraction:
        return self.alpha1 + self.alpha2

    def bandwidth(self, d: int) -> Fraction:
        return d * (self.beta1 + self.beta2)


def binomial_pmf(n: int, i: int, eps: float) -> float:
    """P(exactly i of n independent links deliver), each delivering w.p. 1-eps."""
    return math.comb(n, i) * (1.0 - eps) ** i * eps ** (n - i)


def _clamp(x: float) -> float:
    # rounding in the binomial weights can push a full sum a few ulps past 1
    return min(max(x, 0.0), 1.0)


def p_success_helpers(s: HelperScheme, ch: ChannelModel) -> float:
    """P(at least d of the d' helper batches arrive)."""
    eps = ch.p
    return _clamp(math.fsum(binomial_pmf(s.d_prime, i, eps) for i in range(s.d, s.d_prime + 1)))


def p_success_repetition(s: RepetitionScheme, ch: ChannelModel) -> float:
    """Every distinct fragment needs at least one surviving copy."""
    eps = ch.p
    return math.prod(1.0 - eps ** r for r in s.counts)


def base_layer_flow(p: SystemParams, a: TwoLayerAllocation) -> Fraction:
    """Information the k-1 older nodes of a data collector already supply."""
    return sum((min(a.alpha1, (p.d - i) * a.beta1) for i in range(1, p.k)), Fraction(0))


def regen_condition(p: SystemParams, a: TwoLayerAllocation, d1: int, d2: int) -> bool:
    """Whether receiving ``d1`` base batches and ``d2`` extra batches allows repair."""
    if not (0 <= d1 <= p.d and 0 <= d2 <= p.d):
        raise ParameterError(f"arrival counts must lie in [0, {p.d}], got d1={d1}, d2={d2}")
    return d1 * a.beta1 + d2 * a.beta2 + base_layer_flow(p, a) >= p.M


def indicator_table(p: SystemParams, a: TwoLayerAllocation) -> list[list[bool]]:
    """``table[d1][d2] = regen_condition(p, a, d1, d2)``."""
    need = p.M - base_layer_flow(p, a)
    return [[d1 * a.beta1 + d2 * a.beta2 >= need for d2 in range(p.d + 1)]
            for d1 in range(p.d + 1)]


def p_success_twolayer(p: SystemParams, a: TwoLayerAllocation, ch: ChannelModel) -> float:
    eps = ch.p
    d = p.d
    table = indicator_table(p, a)
    weights = [binomial_pmf(d, i, eps) for i in range(d + 1)]
    return _clamp(math.fsum(weights[d1] * weights[d2]
                            for d1 in range(d + 1) for d2 in range(d + 1) if table[d1][d2]))


def any_of(n: int, need: int, ch: ChannelModel) -> float:
    """P(at least ``need`` of ``n`` transmitted fragments arrive)."""
    return p_success_helpers(HelperScheme(need, n, 1), ch)

