"""L-layer feedforward binary classifier: parameters, trimming, forward pass, cost."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
from scipy.special import expit

from .errors import ConfigError, DatasetError, DimensionError

EPS = 1e-12

Arch = tuple[int, ...]


def as_arch(dims: Sequence[int]) -> Arch:
    """Validate a layer-dimension vector and return it as a tuple of ints."""
    try:
        arch = tuple(int(d) for d in dims)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"layer dims must be integers, got {dims!r}") from exc
    if any(int(d) != d for d in dims):
        raise ConfigError(f"layer dims must be integers, got {dims!r}")
    if len(arch) < 2:
        raise ConfigError(f"need at least input and output layers, got {list(arch)}")
    if min(arch) < 1:
        raise ConfigError(f"every layer needs at least one unit, got {list(arch)}")
    return arch


def check_within(arch: Arch, max_dims: Arch) -> None:
    if len(arch) != len(max_dims):
        raise DimensionError(f"architecture {list(arch)} has a different layer count than {list(max_dims)}")
    if any(a > m for a, m in zip(arch, max_dims)):
        raise DimensionError(f"architecture {list(arch)} exceeds max dims {list(max_dims)}")


@dataclass
class ParamSet:
    """Weights ``W[l]`` of shape (n_out, n_in) and column biases ``b[l]`` of shape (n_out, 1)."""

    weights: list[np.ndarray]
    biases: list[np.ndarray]

    def __post_init__(self):
        if len(self.weights) != len(self.biases):
            raise DimensionError("weights and biases disagree on layer count")
        for l, (W, b) in enumerate(zip(self.weights, self.biases)):
            if W.ndim != 2 or b.shape != (W.shape[0], 1):
                raise DimensionError(f"layer {l}: weight {W.shape} and bias {b.shape} do not match")
            if l and W.shape[1] != self.weights[l - 1].shape[0]:
                raise DimensionError(f"layer {l}: input width {W.shape[1]} != previous output {self.weights[l - 1].shape[0]}")

    @property
    def dims(self) -> Arch:
        return (self.weights[0].shape[1],) + tuple(W.shape[0] for W in self.weights)

    @property
    def n_layers(self) -> int:
        return len(self.weights)

    def arrays(self) -> Iterator[np.ndarray]:
        """Yield W1, b1, W2, b2, ... in that order."""
        for W, b in zip(self.weights, self.biases):
            yield W
            yield b

    def map(self, fn) -> "ParamSet":
        return ParamSet([fn(W) for W in self.weights], [fn(b) for b in self.biases])

    def copy(self) -> "ParamSet":
        return self.map(np.copy)

    def zeros_like(self, dtype=float) -> "ParamSet":
        return self.map(lambda a: np.zeros(a.shape, dtype=dtype))

    def same_shape(self, other: "ParamSet") -> bool:
        return [a.shape for a in self.arrays()] == [a.shape for a in other.arrays()]

    def allclose(self, other: "ParamSet", **kw) -> bool:
        return self.same_shape(other) and all(np.allclose(a, b, **kw) for a, b in zip(self.arrays(), other.arrays()))

    def equal(self, other: "ParamSet") -> bool:
        return self.same_shape(other) and all(np.array_equal(a, b) for a, b in zip(self.arrays(), other.arrays()))


@dataclass(frozen=True)
class ArchSolution:
    arch: Arch
    cost: float

    def __post_init__(self):
        object.__setattr__(self, "arch", tuple(int(d) for d in self.arch))
        object.__setattr__(self, "cost", float(self.cost))

    def as_row(self) -> list:
        return [*self.arch, self.cost]


@dataclass
class Dataset:
    """Features ``X`` (features x examples) and labels ``Y`` (1 x examples)."""

    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=float)
        self.Y = np.asarray(self.Y).reshape(1, -1)
        if self.X.ndim != 2:
            raise DatasetError(f"X must be 2-D (features x examples), got shape {self.X.shape}")
        if self.X.shape[1] != self.Y.shape[1]:
            raise DatasetError(f"X has {self.X.shape[1]} examples but Y has {self.Y.shape[1]}")
        if not np.isin(self.Y, (0, 1)).all():
            raise DatasetError("labels must be 0 or 1")
        self.Y = self.Y.astype(np.uint8)

    @property
    def m(self) -> int:
        return self.X.shape[1]

    @property
    def n_features(self) -> int:
        return self.X.shape[0]


@dataclass
class ForwardResult:
    output: np.ndarray
    Z: list[np.ndarray] | None = None
    A: list[np.ndarray] | None = None


def init_zero_params(max_dims: Sequence[int]) -> ParamSet:
    dims = as_arch(max_dims)
    return ParamSet(
        [np.zeros((dims[l + 1], dims[l])) for l in range(len(dims) - 1)],
        [np.zeros((dims[l + 1], 1)) for l in range(len(dims) - 1)],
    )


def trim_params(full: ParamSet, arch: Sequence[int]) -> ParamSet:
    """Top-left submatrices of ``full`` sized for ``arch`` (copies, never views)."""
    arch = as_arch(arch)
    check_within(arch, full.dims)
    return ParamSet(
        [W[: arch[l + 1], : arch[l]].copy() for l, W in enumerate(full.weights)],
        [b[: arch[l + 1]].copy() for l, b in enumerate(full.biases)],
    )


def relu(z):
    return np.maximum(z, 0.0)


def sigmoid(z):
    return expit(z)


def _hidden_from(params: ParamSet, arch: Arch, A: np.ndarray, start: int, keep_cache: bool, Z_list, A_list):
    L = len(arch) - 1
    for l in range(start, L):
        W = params.weights[l][: arch[l + 1], : arch[l]]
        b = params.biases[l][: arch[l + 1]]
        Z = W @ A + b
        A = sigmoid(Z) if l == L - 1 else relu(Z)
        if keep_cache:
            Z_list.append(Z)
            A_list.append(A)
    return A


def forward(params: ParamSet, arch: Sequence[int], X: np.ndarray, keep_cache: bool = False) -> ForwardResult:
    """[LINEAR -> RELU] x (L-1) then LINEAR -> SIGMOID.

    ``params`` may be stored at max size; only the top-left region for
    ``arch`` is read.
    """
    arch = as_arch(arch)
    check_within(arch, params.dims)
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != arch[0]:
        raise DimensionError(f"X has shape {X.shape}, expected ({arch[0]}, m)")
    Z_list: list = []
    A_list: list = [X]
    out = _hidden_from(params, arch, X, 0, keep_cache, Z_list, A_list)
    if keep_cache:
        return ForwardResult(out, Z_list, A_list)
    return ForwardResult(out)


def _xent(a: np.ndarray, y: np.ndarray) -> float:
    a = np.clip(a, EPS, 1.0 - EPS)
    return -float(np.add.reduce(y * np.log(a) + (1.0 - y) * np.log(1.0 - a), axis=None)) / a.size


def cost(output, Y) -> float:
    """Mean binary cross-entropy with activations clamped to [EPS, 1-EPS]."""
    a = np.asarray(getattr(output, "output", output), dtype=float).ravel()
    y = np.asarray(Y, dtype=float).ravel()
    if a.size == 0:
        raise DatasetError("cannot compute cost on an empty dataset")
    if a.size != y.size:
        raise DimensionError(f"{a.size} outputs but {y.size} labels")
    return _xent(a, y)


def predict(params: ParamSet, arch: Sequence[int], X, Y=None):
    """Return ``(labels, accuracy)``; label is 1 iff the output is >= 0.5.

    ``accuracy`` is None when ``Y`` is not given.
    """
    out = forward(params, arch, X).output
    labels = (out >= 0.5).astype(np.uint8)
    if Y is None:
        return labels, None
    y = np.asarray(Y).reshape(labels.shape)
    return labels, float(np.mean(labels == y))


def accuracy_from_output(output, Y) -> float:
    out = np.asarray(output).ravel()
    return float(np.mean((out >= 0.5) == (np.asarray(Y).ravel() == 1)))


def arch_cost(params: ParamSet, arch: Sequence[int], data: Dataset) -> float:
    return cost(forward(params, arch, data.X), data.Y)


def costs_for(params: ParamSet, archs: Sequence[Arch], data: Dataset) -> list[float]:
    """Cost of every architecture under one shared max-size ParamSet.

    The first layer's product ``W1 @ X`` is computed once at full height and
    row-sliced per architecture, which is where nearly all the work is for
    wide inputs.
    """
    dims = params.dims
    archs = [tuple(a) for a in archs]
    for a in archs:
        check_within(a, dims)
    if data.X.shape[0] != dims[0]:
        raise DimensionError(f"dataset has {data.X.shape[0]} features, network expects {dims[0]}")
    if any(a[0] != dims[0] for a in archs):
        raise DimensionError("input width must equal the stored input width")
    y = data.Y.ravel().astype(float)
    Z1_full = params.weights[0] @ data.X
    out = []
    for arch in archs:
        n1 = arch[1]
        Z1 = Z1_full[:n1] + params.biases[0][:n1]
        A = sigmoid(Z1) if len(arch) == 2 else relu(Z1)
        A = _hidden_from(params, arch, A, 1, False, None, None)
        out.append(_xent(A.ravel(), y))
    return out
