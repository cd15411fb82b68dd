import math

import numpy as np
import pytest

from diga.model import ArchSolution, Dataset, ParamSet, cost, forward


def scalar_forward(weights, biases, x_col):
    """Loop-by-loop forward pass for one example; plain Python floats only."""
    a = [float(v) for v in x_col]
    L = len(weights)
    for l in range(L):
        W, b = weights[l], biases[l]
        z = [sum(float(W[i][j]) * a[j] for j in range(len(a))) + float(b[i][0]) for i in range(len(W))]
        if l == L - 1:
            a = [1.0 / (1.0 + math.exp(-zi)) for zi in z]
        else:
            a = [zi if zi > 0 else 0.0 for zi in z]
    return a[0]


def brute_dominator_count(objs):
    """O(n^2) count of dominators over plain tuples (all objectives minimized)."""
    n = len(objs)
    out = []
    for i in range(n):
        c = 0
        for j in range(n):
            if j == i:
                continue
            no_worse = all(objs[j][k] <= objs[i][k] for k in range(len(objs[i])))
            better = any(objs[j][k] < objs[i][k] for k in range(len(objs[i])))
            c += no_worse and better
        out.append(c)
    return out


def fd_grads(params, arch, X, Y, h=1e-6):
    """Central differences over every parameter, one at a time."""
    out = params.zeros_like()
    for src, dst in zip(params.arrays(), out.arrays()):
        for idx in np.ndindex(src.shape):
            keep = src[idx]
            src[idx] = keep + h
            up = cost(forward(params, arch, X).output, Y)
            src[idx] = keep - h
            dn = cost(forward(params, arch, X).output, Y)
            src[idx] = keep
            dst[idx] = (up - dn) / (2 * h)
    return out


def rel_err(a: ParamSet, b: ParamSet):
    ga = np.concatenate([x.ravel() for x in a.arrays()])
    gb = np.concatenate([x.ravel() for x in b.arrays()])
    return np.linalg.norm(ga - gb) / (np.linalg.norm(ga) + np.linalg.norm(gb) + 1e-300)


def random_params(rng, dims, scale=0.5):
    return ParamSet(
        [rng.normal(0, scale, (dims[l + 1], dims[l])) for l in range(len(dims) - 1)],
        [rng.normal(0, scale, (dims[l + 1], 1)) for l in range(len(dims) - 1)],
    )


def separator_params():
    """Max dims [2, 3, 1]. Hidden units 1 and 2 separate (1,0)->1 from (0,1)->0;
    hidden unit 0 and the output bias are zero, so arch [2, 1, 1] outputs 0.5."""
    W1 = np.array([[0.0, 0.0], [10.0, -10.0], [-10.0, 10.0]])
    b1 = np.zeros((3, 1))
    W2 = np.array([[0.0, 10.0, -10.0]])
    b2 = np.zeros((1, 1))
    return ParamSet([W1, W2], [b1, b2])


@pytest.fixture
def two_point():
    return Dataset(np.array([[1.0, 0.0], [0.0, 1.0]]), np.array([[1, 0]]))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def sol(*dims_and_cost):
    *dims, c = dims_and_cost
    return ArchSolution(tuple(dims), c)


# Merge walkthrough (max dims [50, 5, 5, 1]). After ranking, the three
# leading entries are [50,5,3,1] and [50,2,5,1] from offspring 2, then
# [50,2,2,1] from offspring 1; the other copies sit at rank 1.
MERGE_OFF1 = [((50, 5, 3, 1), 0.25), ((50, 2, 5, 1), 0.40), ((50, 2, 2, 1), 0.50123)]
MERGE_OFF2 = [((50, 5, 3, 1), 0.19507), ((50, 2, 5, 1), 0.31880), ((50, 2, 2, 1), 0.60)]

# Anabolism walkthrough: nine joined entries, three per source (size 3).
# Each agent's own list holds distinct architectures, and the (rank, cost)
# sort yields the order in WALK_SORTED.
WALK_LEAD = [((50, 5, 3, 1), 0.18973), ((50, 2, 5, 1), 0.33), ((50, 2, 2, 1), 0.55)]
WALK_FOLL = [((50, 5, 3, 1), 0.19264), ((50, 2, 2, 1), 0.52), ((50, 2, 5, 1), 0.35)]
WALK_OFF = [((50, 2, 5, 1), 0.31880), ((50, 2, 2, 1), 0.50123), ((50, 5, 3, 1), 0.40)]
# (rank, dims, cost, tag, expected decision)
WALK_SORTED = [
    (0, (50, 5, 3, 1), 0.18973, "lead", "lead"),
    (0, (50, 2, 5, 1), 0.31880, "off", "foll"),
    (0, (50, 2, 2, 1), 0.50123, "off", "lead"),
    (1, (50, 5, 3, 1), 0.19264, "foll", "foll"),
    (1, (50, 2, 5, 1), 0.33, "lead", "lead"),
    (1, (50, 2, 2, 1), 0.52, "foll", "foll"),
    (2, (50, 2, 5, 1), 0.35, "foll", None),
    (2, (50, 5, 3, 1), 0.40, "off", None),
    (2, (50, 2, 2, 1), 0.55, "lead", None),
]


def as_solutions(rows):
    return [ArchSolution(d, c) for d, c in rows]


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
