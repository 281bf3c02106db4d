"""Named matrices with known epr-sequences, used as fixtures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import UsageError
from .gf import field
from .symmat import SymMatrix

M_AANA = [
    [1, 0, 1, 1],
    [0, 1, 1, 1],
    [1, 1, 2, 0],
    [1, 1, 0, 2],
]
M_AANN = [
    [1, 0, 1, 1],
    [0, 1, 1, 2],
    [1, 1, 2, 0],
    [1, 2, 0, 2],
]
M_NAAANA = [
    [0, 1, 1, 1, 1, 1],
    [1, 0, 1, 2, 2, 1],
    [1, 1, 0, 1, 2, 2],
    [1, 2, 1, 0, 1, 2],
    [1, 2, 2, 1, 0, 1],
    [1, 1, 2, 2, 1, 0],
]

C5_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4))


def build_basic(q, n, which):
    F = field(q)
    if which == "identity":
        a = np.eye(n, dtype=np.int64)
    elif which == "zero":
        a = np.zeros((n, n), dtype=np.int64)
    elif which == "all_ones":
        a = np.ones((n, n), dtype=np.int64)
    else:
        raise UsageError(f"unknown basic matrix {which!r}")
    return SymMatrix(F, a)


def build_J_minus_kI(q, n, k):
    """J_n - k I_n, with the integer k read as k·1 in GF(q)."""
    F = field(q)
    kk = F.from_int(k)
    if kk == 0:
        raise UsageError(f"k = {k} is zero in GF({F.q})")
    a = np.ones((n, n), dtype=np.int64)
    np.fill_diagonal(a, F.sub(1, kk))
    return SymMatrix(F, a)


def det_J_minus_kI(q, i, k):
    """(-k)^(i-1) (i - k), evaluated in GF(q)."""
    F = field(q)
    kk = F.from_int(k)
    return F.mul(F.pow(F.neg(kk), i - 1), F.sub(F.from_int(i), kk))


def predict_J_minus_kI(q, n, k):
    """epr(J_n - kI_n) from the closed-form minors: every order-i minor is equal."""
    return "".join("A" if det_J_minus_kI(q, i, k) else "N" for i in range(1, n + 1))


def build_examples_F3():
    F = field(3)
    return {
        "AANA": SymMatrix(F, M_AANA),
        "AANN": SymMatrix(F, M_AANN),
        "NAAANA": SymMatrix(F, M_NAAANA),
    }


def build_adjacency(q, n, edges, weight=1):
    F = field(q)
    a = np.zeros((n, n), dtype=np.int64)
    for i, j in edges:
        if i == j:
            raise UsageError("graphs here are loopless")
        a[i, j] = a[j, i] = weight
    return SymMatrix(F, a)


def complement_edges(n, edges):
    present = {tuple(sorted(e)) for e in edges}
    return [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in present]


def build_C5_composite(q=3):
    """A(C5) + 2 A(complement of C5): hollow, off-diagonal entries 1 on the cycle, 2 elsewhere."""
    F = field(q)
    a = build_adjacency(F, 5, C5_EDGES).entries + 2 * build_adjacency(
        F, 5, complement_edges(5, C5_EDGES)
    ).entries
    return SymMatrix(F, a % F.p)


def border(B, corner=0, edge=1):
    """Prepend a row/column of ``edge`` values with ``corner`` on the diagonal."""
    n = B.n
    a = np.full((n + 1, n + 1), edge, dtype=np.int64)
    a[0, 0] = corner
    a[1:, 1:] = B.entries
    return SymMatrix(B.spec, a)


@dataclass(frozen=True)
class NamedConstruction:
    name: str
    build: Callable
    predict: Callable  # (q, n, k) -> expected epr string
    needs: tuple = ("q", "n")


def _predict_fixed(seq):
    return lambda q, n, k: seq


CONSTRUCTIONS = {
    "identity": NamedConstruction(
        "identity", lambda q, n, k: build_basic(q, n, "identity"), lambda q, n, k: "A" * n
    ),
    "zero": NamedConstruction(
        "zero", lambda q, n, k: build_basic(q, n, "zero"), lambda q, n, k: "N" * n
    ),
    # J_n is rank one; its diagonal is all ones
    "all_ones": NamedConstruction(
        "all_ones",
        lambda q, n, k: build_basic(q, n, "all_ones"),
        lambda q, n, k: "A" + "N" * (n - 1),
    ),
    "j_minus_ki": NamedConstruction(
        "j_minus_ki",
        lambda q, n, k: build_J_minus_kI(q, n, k),
        predict_J_minus_kI,
        needs=("q", "n", "k"),
    ),
    "c5_composite": NamedConstruction(
        "c5_composite", lambda q, n, k: build_C5_composite(3), _predict_fixed("NAAAN"), needs=()
    ),
    "m_aana": NamedConstruction(
        "m_aana", lambda q, n, k: build_examples_F3()["AANA"], _predict_fixed("AANA"), needs=()
    ),
    "m_aann": NamedConstruction(
        "m_aann", lambda q, n, k: build_examples_F3()["AANN"], _predict_fixed("AANN"), needs=()
    ),
    "m_naaana": NamedConstruction(
        "m_naaana",
        lambda q, n, k: build_examples_F3()["NAAANA"],
        _predict_fixed("NAAANA"),
        needs=(),
    ),
}


def construct(name, q=None, n=None, k=None):
    try:
        c = CONSTRUCTIONS[name]
    except KeyError:
        raise UsageError(f"unknown construction {name!r}; choose from {sorted(CONSTRUCTIONS)}") from None
    missing = [p for p, v in (("q", q), ("n", n), ("k", k)) if p in c.needs and v is None]
    if missing:
        raise UsageError(f"construction {name} needs {', '.join('--' + m for m in missing)}")
    return c.build(q, n, k)
