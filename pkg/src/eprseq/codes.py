"""Linear codes over GF(q), their duals, weights and spark.

The epr bound: with H a parity-check matrix of C and
epr(H^T H) = l_1 ... l_n, a codeword of weight j forces l_j != A, so the
minimum distance is at least the first j with l_j != A.  The value depends
on which H is used; here H is always the reduced basis of the dual.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import linalg
from .epr import epr
from .errors import CapacityError, UsageError
from .gf import field
from .symmat import SymMatrix, format_rows, parse_matrix_rows

MAX_CODEWORDS = 2**24
MAX_SPARK_N = 20
_CHUNK = 1 << 16


class LinearCode:
    """Row space of a generator matrix, kept in reduced row echelon form."""

    def __init__(self, spec, G):
        self.spec = field(spec)
        G = linalg.as_codes(G)
        if G.ndim != 2 or G.shape[1] == 0:
            raise UsageError("generator matrix needs at least one column")
        R, piv = linalg.rref(self.spec, G)
        if not piv:
            raise UsageError("the zero code has no generator matrix")
        self.G = R[: len(piv)]
        self.G.setflags(write=False)

    @property
    def n(self):
        return self.G.shape[1]

    @property
    def k(self):
        return self.G.shape[0]

    def __repr__(self):
        return f"LinearCode(GF({self.spec.name}), [{self.n}, {self.k}])"

    def size(self):
        return self.spec.q**self.k

    def encode(self, msg):
        return linalg.matmul(self.spec, np.atleast_2d(msg), self.G)

    def codeword_chunks(self):
        """All codewords, in blocks of rows (the zero word comes first)."""
        if self.size() > MAX_CODEWORDS:
            raise CapacityError(f"q^k = {self.size()} exceeds the cap {MAX_CODEWORDS}")
        msgs = itertools.product(range(self.spec.q), repeat=self.k)
        while True:
            block = np.array(list(itertools.islice(msgs, _CHUNK)), dtype=np.int64)
            if not len(block):
                return
            yield self.encode(block)

    def contains(self, v):
        v = linalg.as_codes(np.atleast_2d(v))
        return len(linalg.rref(self.spec, np.vstack([self.G, v]))[1]) == self.k


def parity_check(C):
    """Basis of the dual code as rows; shape (n - k, n), empty when k = n.

    An empty H has n zero-length columns, so its spark is 1, matching the
    minimum distance of the full space.
    """
    return linalg.nullspace(C.spec, C.G)


def dual(C):
    H = parity_check(C)
    return LinearCode(C.spec, H) if len(H) else None


def weight_enumerator(C):
    """[A_0, ..., A_n] with A_j the number of codewords of weight j."""
    counts = np.zeros(C.n + 1, dtype=np.int64)
    for block in C.codeword_chunks():
        counts += np.bincount(np.count_nonzero(block, axis=1), minlength=C.n + 1)
    return counts.tolist()


def min_distance(C, weights=None):
    weights = weight_enumerator(C) if weights is None else weights
    return next(j for j in range(1, len(weights)) if weights[j])


def _check_H(H):
    H = linalg.as_codes(H)
    if H.ndim != 2 or H.shape[1] == 0:
        raise UsageError("spark needs a matrix with at least one column")
    return H


def spark(F, H):
    """Least number of linearly dependent columns, by subset rank tests."""
    F = field(F)
    H = _check_H(H)
    m, n = H.shape
    if n > MAX_SPARK_N:
        raise CapacityError(f"subset spark is limited to n <= {MAX_SPARK_N}")
    for s in range(1, n + 1):
        for cols in itertools.combinations(range(n), s):
            if linalg.rank(F, H[:, cols]) < s:
                return s
    raise UsageError(f"the {m}x{n} matrix has independent columns, so no spark")


def spark_kernel(F, H):
    """Least weight of a nonzero kernel vector; agrees with spark()."""
    F = field(F)
    H = _check_H(H)
    K = linalg.nullspace(F, H)
    if not len(K):
        raise UsageError(f"the {H.shape[0]}x{H.shape[1]} matrix has trivial kernel, so no spark")
    return min_distance(LinearCode(F, K))


def gram(C, H=None):
    """H^T H as a symmetric matrix (zero when the dual is trivial)."""
    H = parity_check(C) if H is None else linalg.as_codes(H)
    return SymMatrix(C.spec, linalg.matmul(C.spec, H.T.reshape(C.n, -1), H.reshape(-1, C.n)))


@dataclass(frozen=True)
class DistanceBound:
    bound: int
    sequence: str
    min_distance: int

    @property
    def tight(self):
        return self.bound == self.min_distance

    @property
    def holds(self):
        return self.bound <= self.min_distance


def epr_bound(sequence):
    """First j (1-based) with l_j != A, or n + 1 when there is none."""
    return next((j for j, c in enumerate(sequence, 1) if c != "A"), len(sequence) + 1)


def epr_distance_bound(C, weights=None):
    s = epr(gram(C))
    return DistanceBound(epr_bound(s), s, min_distance(C, weights))


def per_weight_exceptions(weights, sequence):
    """Weights j with A_j > 0 but l_j = A (always empty if the theorem holds)."""
    return [j for j in range(1, len(weights)) if weights[j] and sequence[j - 1] == "A"]


def random_code(q, n, k, rng):
    """Uniform k×n generator, row-reduced; the dimension can drop below k."""
    F = field(q)
    while True:
        G = rng.integers(0, F.q, size=(k, n))
        if np.any(G):
            return LinearCode(F, G)


def analyze(C):
    F = C.spec
    H = parity_check(C)
    weights = weight_enumerator(C)
    d = min_distance(C, weights)
    b = epr_distance_bound(C, weights)
    out = {
        "q": F.name,
        "n": C.n,
        "k": C.k,
        "generator": [[F.format(x) for x in row] for row in C.G],
        "parity_check": [[F.format(x) for x in row] for row in H],
        "weights": weights,
        "min_distance": d,
        "spark": spark(F, H),
        "epr_gram": b.sequence,
        "bound": b.bound,
        "tight": b.tight,
        "bound_holds": b.holds,
        "per_weight_exceptions": per_weight_exceptions(weights, b.sequence),
    }
    return out


def q_ceiling_audit(q, samples=1000, seed=0, max_n=12, max_k=6):
    """Sample random codes and check the distance identities and bounds.

    Each sample draws n in [2, max_n] and k in [1, min(max_k, n - 1)].
    """
    F = field(q)
    if F.q not in (2, 3):
        raise UsageError("the q-ceiling remark is about q = 2 and q = 3")
    rng = np.random.default_rng(seed)
    failures = {"spark": [], "bound": [], "ceiling": [], "per_weight": []}
    gaps = Counter()
    bounds = Counter()
    for t in range(samples):
        n = int(rng.integers(2, max_n + 1))
        k = int(rng.integers(1, min(max_k, n - 1) + 1))
        C = random_code(F, n, k, rng)
        H = parity_check(C)
        weights = weight_enumerator(C)
        b = epr_distance_bound(C, weights)
        sp = spark(F, H)
        if sp != b.min_distance or spark_kernel(F, H) != sp:
            failures["spark"].append(t)
        if not b.holds:
            failures["bound"].append(t)
        if b.bound > F.q:
            failures["ceiling"].append(t)
        if per_weight_exceptions(weights, b.sequence):
            failures["per_weight"].append(t)
        gaps[b.min_distance - b.bound] += 1
        bounds[b.bound] += 1
    return {
        "q": F.q,
        "samples": samples,
        "seed": seed,
        "failures": failures,
        "ok": not any(failures.values()),
        "bound_counts": {str(k): v for k, v in sorted(bounds.items())},
        "gap_counts": {str(k): v for k, v in sorted(gaps.items())},
    }


def read_generator(text):
    """Parse ``q k n`` followed by k rows of n entries."""
    F, dims, rows = parse_matrix_rows(text, 3)
    return LinearCode(F, rows)


def load_generator(path):
    with open(path) as fh:
        return read_generator(fh.read())


def write_generator(C):
    return f"{C.spec.name} {C.k} {C.n}\n" + format_rows(C.spec, C.G) + "\n"
