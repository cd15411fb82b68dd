"""Row crossover, Gaussian mutation and the linear mutation-rate schedule."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError
from .model import ParamSet


@dataclass
class MutationConfig:
    rate_start: float = 0.9
    rate_end: float = 0.1
    max_iter: int = 20_000
    scale: float = 0.008

    def __post_init__(self):
        for name in ("rate_start", "rate_end"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {getattr(self, name)}")
        if self.max_iter < 1:
            raise ConfigError(f"max_iter must be positive, got {self.max_iter}")
        if not self.scale > 0:
            raise ConfigError(f"mutation scale must be positive, got {self.scale}")


def mutation_rate_at(iteration: int, config: MutationConfig) -> float:
    if iteration < 0:
        raise ValueError(f"iteration must be nonnegative, got {iteration}")
    if iteration >= config.max_iter:
        return config.rate_end
    t = iteration / config.max_iter
    return config.rate_start + (config.rate_end - config.rate_start) * t


def crossover_rows(leader: ParamSet, follower: ParamSet, rng: np.random.Generator):
    """Single-point crossover per weight row, per-element blend for biases.

    Each weight row r draws a cut k in [0, n_cols]; offspring 1 takes the
    leader's first k entries and the follower's tail, offspring 2 the mirror.
    Biases blend with a fresh alpha per element.
    """
    if not leader.same_shape(follower):
        raise DimensionError("leader and follower ParamSets differ in shape")
    W1s, W2s, b1s, b2s = [], [], [], []
    for (WL, bL), (WF, bF) in zip(zip(leader.weights, leader.biases), zip(follower.weights, follower.biases)):
        rows, cols = WL.shape
        cut = rng.integers(0, cols + 1, size=rows)
        head = np.arange(cols)[None, :] < cut[:, None]
        W1s.append(np.where(head, WL, WF))
        W2s.append(np.where(head, WF, WL))

        alpha = rng.random(bL.shape)
        # written as base + alpha * diff so identical parents reproduce exactly
        lo, hi = np.minimum(bL, bF), np.maximum(bL, bF)
        b1s.append(np.clip(bF + alpha * (bL - bF), lo, hi))
        b2s.append(np.clip(bL + alpha * (bF - bL), lo, hi))
    return ParamSet(W1s, b1s), ParamSet(W2s, b2s)


def mutate(params: ParamSet, rate: float, scale: float, rng: np.random.Generator) -> ParamSet:
    """Add N(0, scale) noise to each entry independently with probability ``rate``."""
    def one(a):
        hit = rng.random(a.shape) < rate
        noise = rng.normal(0.0, scale, size=a.shape)
        return np.where(hit, a + noise, a)

    return params.map(one)
