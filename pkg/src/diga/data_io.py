"""Flat binary dataset files and synthetic data.

File layout (little-endian)::

    magic      5 bytes  b"DIGA1"
    features   uint32
    examples   uint32
    has_labels uint8    0 or 1
    X          float32  examples x features, row-major (one example per row)
    Y          uint8    examples entries, present iff has_labels == 1
"""

from __future__ import annotations

import os
import struct

import numpy as np

from .errors import DatasetError, DatasetFormatError
from .model import Dataset

MAGIC = b"DIGA1"
HEADER = struct.Struct("<5sIIB")
MARGIN = 0.1


def encode_dataset(X, Y=None) -> bytes:
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise DatasetError(f"X must be a nonempty features x examples matrix, got shape {X.shape}")
    n, m = X.shape
    parts = [HEADER.pack(MAGIC, n, m, int(Y is not None)), X.T.astype("<f4").tobytes()]
    if Y is not None:
        y = np.asarray(Y).ravel()
        if y.size != m or not np.isin(y, (0, 1)).all():
            raise DatasetError("labels must be a 0/1 vector with one entry per example")
        parts.append(y.astype(np.uint8).tobytes())
    return b"".join(parts)


def write_dataset(path, X, Y=None) -> None:
    data = encode_dataset(X, Y)
    with open(path, "wb") as fh:
        fh.write(data)


def decode_dataset(buf: bytes, normalize_divisor: float | None = None) -> Dataset:
    if len(buf) < HEADER.size:
        raise DatasetFormatError(f"file is {len(buf)} bytes, shorter than the {HEADER.size}-byte header", len(buf))
    magic, n, m, has_labels = HEADER.unpack_from(buf, 0)
    if magic != MAGIC:
        raise DatasetFormatError(f"bad magic {magic!r}, expected {MAGIC!r}", 0)
    if n == 0:
        raise DatasetFormatError("feature count is 0", 5)
    if m == 0:
        raise DatasetFormatError("example count is 0", 9)
    if has_labels not in (0, 1):
        raise DatasetFormatError(f"label flag must be 0 or 1, got {has_labels}", 13)
    if not has_labels:
        raise DatasetFormatError("file carries no labels", 13)
    x_bytes = 4 * n * m
    expected = HEADER.size + x_bytes + m
    if len(buf) != expected:
        off = min(len(buf), expected)
        raise DatasetFormatError(f"payload is {len(buf)} bytes, header declares {expected}", off)
    X = np.frombuffer(buf, dtype="<f4", count=n * m, offset=HEADER.size).reshape(m, n).T.astype(float)
    Y = np.frombuffer(buf, dtype=np.uint8, count=m, offset=HEADER.size + x_bytes)
    bad = np.flatnonzero(Y > 1)
    if bad.size:
        raise DatasetFormatError(f"label {Y[bad[0]]} is not 0 or 1", HEADER.size + x_bytes + int(bad[0]))
    if not np.isfinite(X).all():
        raise DatasetFormatError("non-finite feature value", HEADER.size + 4 * int(np.flatnonzero(~np.isfinite(X.T.ravel()))[0]))
    if normalize_divisor is not None:
        if not normalize_divisor > 0:
            raise DatasetError(f"normalize divisor must be positive, got {normalize_divisor}")
        X = X / normalize_divisor
    return Dataset(X, Y.reshape(1, m).copy())


def load_dataset(path, normalize_divisor: float | None = None) -> Dataset:
    """Read a dataset file, optionally dividing features (255 for 8-bit pixels)."""
    if not os.path.isfile(path):
        raise DatasetError(f"no such dataset file: {path}")
    with open(path, "rb") as fh:
        return decode_dataset(fh.read(), normalize_divisor)


def synth_dataset(features: int, examples: int, seed: int, separable: bool = False) -> Dataset:
    """Uniform [0, 1] features with random or hyperplane labels.

    With ``separable`` the labels come from a random hyperplane through the
    cube's centre, and points closer than ``MARGIN`` to it are redrawn.
    Features are rounded to float32 so a file round trip is exact.
    """
    if features < 1 or examples < 1:
        raise DatasetError(f"features and examples must be positive, got {features}, {examples}")
    rng = np.random.default_rng(seed)
    if not separable:
        X = rng.random((features, examples)).astype(np.float32).astype(float)
        Y = rng.integers(0, 2, size=(1, examples))
        return Dataset(X, Y)

    w = rng.standard_normal(features)
    w /= np.linalg.norm(w)
    offset = 0.5 * w.sum()
    cols: list[np.ndarray] = []
    have = 0
    while have < examples:
        cand = rng.random((features, 2 * examples)).astype(np.float32).astype(float)
        dist = w @ cand - offset
        keep = cand[:, np.abs(dist) >= MARGIN]
        cols.append(keep)
        have += keep.shape[1]
    X = np.concatenate(cols, axis=1)[:, :examples]
    Y = (w @ X - offset > 0).astype(np.uint8).reshape(1, -1)
    return Dataset(X, Y)
