"""Plain full-batch gradient descent on the same ReLU/sigmoid network."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .engine import CurveRow, RunRecord, solution_rows
from .errors import ConfigError, DimensionError, NumericalError
from .model import Arch, ArchSolution, Dataset, ParamSet, as_arch, costs_for, forward, trim_params


@dataclass
class GDConfig:
    arch: Arch
    iterations: int
    learning_rate: float = 0.001
    seed: int = 42
    init_scale: str = "he"

    def __post_init__(self):
        self.arch = as_arch(self.arch)
        if self.learning_rate < 0 or not np.isfinite(self.learning_rate):
            raise ConfigError(f"learning rate must be a finite nonnegative number, got {self.learning_rate}")
        if self.iterations < 0:
            raise ConfigError(f"iterations must be nonnegative, got {self.iterations}")
        if self.init_scale != "he":
            raise ConfigError(f"unknown init rule {self.init_scale!r}; only 'he' is supported")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


def he_init(arch: Sequence[int], rng: np.random.Generator) -> ParamSet:
    """Gaussian weights scaled by sqrt(2 / n_in), zero biases."""
    arch = as_arch(arch)
    return ParamSet(
        [rng.standard_normal((arch[l + 1], arch[l])) * np.sqrt(2.0 / arch[l]) for l in range(len(arch) - 1)],
        [np.zeros((arch[l + 1], 1)) for l in range(len(arch) - 1)],
    )


def backprop_grads(params: ParamSet, arch: Sequence[int], X, Y) -> ParamSet:
    """Gradient of the mean cross-entropy w.r.t. every weight and bias of ``arch``.

    Returned arrays have the trimmed (``arch``) shapes. The output layer uses
    dJ/dZ_L = A_L - Y, the exact derivative of the unclamped cost.
    """
    arch = as_arch(arch)
    p = trim_params(params, arch)
    fr = forward(p, arch, X, keep_cache=True)
    Y = np.asarray(Y, dtype=float).reshape(1, -1)
    m = Y.shape[1]
    if fr.output.shape != Y.shape:
        raise DimensionError(f"output shape {fr.output.shape} does not match labels {Y.shape}")
    L = len(arch) - 1
    dW: list = [None] * L
    db: list = [None] * L
    dZ = fr.output - Y
    for l in range(L - 1, -1, -1):
        A_prev = fr.A[l]
        dW[l] = dZ @ A_prev.T / m
        db[l] = dZ.sum(axis=1, keepdims=True) / m
        if l:
            dZ = (p.weights[l].T @ dZ) * (fr.Z[l - 1] > 0)
    return ParamSet(dW, db)


def gd_train(config: GDConfig, train: Dataset, test: Dataset | None = None) -> RunRecord:
    """Full-batch gradient descent from a He-initialized network.

    Curve row k holds the cost after k updates. A non-finite cost raises
    :class:`NumericalError` carrying the last finite ParamSet.
    """
    arch = config.arch
    if train.n_features != arch[0]:
        raise ConfigError(f"training data has {train.n_features} features but arch[0] = {arch[0]}")
    if test is not None and test.n_features != arch[0]:
        raise ConfigError(f"test data has {test.n_features} features but arch[0] = {arch[0]}")
    start = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    params = he_init(arch, rng)
    record = RunRecord("gd")

    def log(k, c):
        record.log(CurveRow(k, c, c, None, None, False))

    c = costs_for(params, [arch], train)[0]
    log(0, c)
    lr = config.learning_rate
    for k in range(1, config.iterations + 1):
        g = backprop_grads(params, arch, train.X, train.Y)
        stepped = ParamSet(
            [W - lr * dW for W, dW in zip(params.weights, g.weights)],
            [b - lr * dbias for b, dbias in zip(params.biases, g.biases)],
        )
        c_new = costs_for(stepped, [arch], train)[0]
        if not all(np.isfinite(a).all() for a in stepped.arrays()) or not np.isfinite(c_new):
            raise NumericalError(f"cost became non-finite at iteration {k}; last finite cost {c:.6g}",
                                 last_state=(k - 1, params, c))
        params, c = stepped, c_new
        log(k, c)

    record.iterations = config.iterations
    record.leader = solution_rows(params, [ArchSolution(arch, c)], train, test)
    record.leader_params = params
    record.wall_time = time.perf_counter() - start
    record.finalized = True
    return record
