"""Symmetric matrices over a finite field.

Indices are 0-based throughout the Python API.  The text file format counts
rows and columns from 1 when reporting errors, since that is what a person
editing the file sees.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .errors import PreconditionError, UsageError
from .gf import FieldElement, FieldSpec, field

MAX_ORDER = 64


def _scalar(F, c):
    if isinstance(c, FieldElement):
        if c.spec != F:
            raise UsageError(f"scalar from {c.spec!r} used with {F!r}")
        return c.value
    if isinstance(c, (int, np.integer)):
        c = int(c)
        if not 0 <= c < F.q:
            raise UsageError(f"{c} is not an element code of {F!r}")
        return c
    raise UsageError(f"not a field scalar: {c!r}")


class SymMatrix:
    """An immutable n×n symmetric matrix of element codes over ``spec``."""

    __slots__ = ("spec", "_a")

    def __init__(self, spec, entries, check=True):
        spec = field(spec)
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise UsageError(f"expected a square matrix, got shape {a.shape}")
        n = a.shape[0]
        if n > MAX_ORDER:
            raise UsageError(f"order {n} exceeds the maximum {MAX_ORDER}")
        if check:
            if a.size and (a.min() < 0 or a.max() >= spec.q):
                raise UsageError(f"entries must be codes in [0, {spec.q})")
            bad = np.argwhere(a != a.T)
            if len(bad):
                i, j = bad[0]
                raise UsageError(f"matrix is not symmetric at ({i}, {j})")
        a.setflags(write=False)
        self.spec = spec
        self._a = a

    @classmethod
    def from_rows(cls, q, rows):
        return cls(field(q), rows)

    @property
    def n(self):
        return self._a.shape[0]

    @property
    def entries(self):
        """Read-only view of the codes."""
        return self._a

    def __getitem__(self, ij):
        return self._a[ij]

    def tolist(self):
        return self._a.tolist()

    def __eq__(self, other):
        return (
            isinstance(other, SymMatrix)
            and self.spec == other.spec
            and np.array_equal(self._a, other._a)
        )

    def __hash__(self):
        return hash((self.spec, self._a.tobytes()))

    def __repr__(self):
        return f"SymMatrix({self.spec!r}, {self._a.tolist()})"

    # convenience wrappers
    def det(self):
        return det(self)

    def rank(self):
        return rank(self)

    def epr(self, census=False):
        from .epr import epr

        return epr(self, census=census)

    def pack_upper(self):
        """Upper triangle (row-major, diagonal included) as one integer.

        Each entry takes ceil(log2 q) bits, so GF(2) uses 1 bit and GF(3) 2
        bits per entry; the first entry sits in the most significant field.
        """
        width = max(1, (self.spec.q - 1).bit_length())
        word = 0
        for i in range(self.n):
            for j in range(i, self.n):
                word = (word << width) | int(self._a[i, j])
        return word

    @classmethod
    def unpack_upper(cls, spec, n, word):
        spec = field(spec)
        width = max(1, (spec.q - 1).bit_length())
        mask = (1 << width) - 1
        a = np.zeros((n, n), dtype=np.int64)
        cells = [(i, j) for i in range(n) for j in range(i, n)]
        for i, j in reversed(cells):
            a[i, j] = a[j, i] = word & mask
            word >>= width
        return cls(spec, a)


def index_set(alpha, n):
    """Validate an index set: sorted, duplicate free, within range(n)."""
    out = sorted(int(i) for i in alpha)
    if len(set(out)) != len(out):
        raise UsageError(f"index set {alpha!r} has duplicates")
    if out and (out[0] < 0 or out[-1] >= n):
        raise UsageError(f"index set {alpha!r} out of range for order {n}")
    return tuple(out)


def complement(alpha, n):
    alpha = set(index_set(alpha, n))
    return tuple(i for i in range(n) if i not in alpha)


def det(B):
    """Exact determinant; the empty matrix has determinant 1."""
    return linalg.det(B.spec, B.entries)


def rank(B):
    return linalg.rank(B.spec, B.entries)


def principal_rank(B):
    """Largest order of a nonsingular principal submatrix (0 if none)."""
    from itertools import combinations

    for k in range(B.n, 0, -1):
        for alpha in combinations(range(B.n), k):
            if det(principal_submatrix(B, alpha)) != 0:
                return k
    return 0


def principal_submatrix(B, alpha):
    alpha = list(index_set(alpha, B.n))
    return SymMatrix(B.spec, B.entries[np.ix_(alpha, alpha)], check=False)


def submatrix(B, rows, cols):
    rows = list(index_set(rows, B.n))
    cols = list(index_set(cols, B.n))
    return B.entries[np.ix_(rows, cols)]


def inverse(B):
    return SymMatrix(B.spec, linalg.inverse(B.spec, B.entries))


def schur_complement(B, alpha):
    """B/B[alpha].  Row t of the result corresponds to ``complement(alpha)[t]``."""
    F = B.spec
    alpha = index_set(alpha, B.n)
    rest = complement(alpha, B.n)
    if not alpha:
        return B
    head = B.entries[np.ix_(alpha, alpha)]
    if linalg.det(F, head) == 0:
        raise PreconditionError(f"B[{list(alpha)}] is singular")
    if not rest:
        return SymMatrix(F, np.zeros((0, 0), dtype=np.int64))
    cross = B.entries[np.ix_(rest, alpha)]
    corr = linalg.matmul(F, linalg.matmul(F, cross, linalg.inverse(F, head)), cross.T)
    s = F.vsub(B.entries[np.ix_(rest, rest)], corr)
    return SymMatrix(F, s)


def scale(B, c):
    c = _scalar(B.spec, c)
    if c == 0:
        raise UsageError("scaling by zero does not preserve the epr-sequence")
    return SymMatrix(B.spec, B.spec.vmul(B.entries, c), check=False)


def permute(B, perm):
    """P^T B P for the permutation sending position i to perm[i]."""
    perm = [int(i) for i in perm]
    if sorted(perm) != list(range(B.n)):
        raise UsageError(f"{perm!r} is not a permutation of range({B.n})")
    return SymMatrix(B.spec, B.entries[np.ix_(perm, perm)], check=False)


def diag_congruence(B, d):
    """DBD with D = diag(d), i.e. entry (i, j) becomes d_i d_j b_ij."""
    F = B.spec
    d = np.array([_scalar(F, x) for x in d], dtype=np.int64)
    if len(d) != B.n:
        raise UsageError(f"need {B.n} diagonal entries, got {len(d)}")
    if np.any(d == 0):
        raise UsageError("diagonal congruence needs every d_i nonzero")
    outer = F.vmul(d[:, None], d[None, :])
    return SymMatrix(F, F.vmul(outer, B.entries), check=False)


def first_row_to_ones(B):
    """Diagonal congruence making each off-diagonal first-row entry 1."""
    F = B.spec
    row = B.entries[0, 1:]
    if np.any(row == 0):
        raise PreconditionError("first row has a zero off-diagonal entry")
    return diag_congruence(B, [1] + [F.inv(int(x)) for x in row])


def normalize_AN(B):
    """Equivalent matrix with ±1 entries and ones on the diagonal and first row.

    Requires epr(B) to begin with AN.  Scales by b11^{-1}, then applies the
    congruence D = diag(c11^{-1}, c12^{-1}, ..., c1n^{-1}).
    """
    F = B.spec
    a = B.entries
    if B.n < 2:
        raise PreconditionError("an AN prefix needs order at least 2")
    if np.any(a == 0):
        raise PreconditionError("epr does not begin with AN: some entry is zero")
    diag = np.diag(a)
    off = F.vmul(a, a)
    prods = F.vmul(diag[:, None], diag[None, :])
    two_by_two = F.vsub(prods, off)
    np.fill_diagonal(two_by_two, 0)
    if np.any(two_by_two != 0):
        raise PreconditionError("epr does not begin with AN: a 2x2 principal minor is nonzero")
    C = scale(B, F.inv(int(a[0, 0])))
    d = [F.inv(int(x)) for x in C.entries[0]]
    return diag_congruence(C, d)


# --- text format -------------------------------------------------------------


def _tokens(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if line:
            yield lineno, line


def _parse_header_field(tok, extra):
    modulus = None
    for e in extra:
        if e.startswith("modulus="):
            modulus = [int(c) for c in e[len("modulus=") :].split(",")]
        else:
            raise UsageError(f"unexpected header token {e!r}")
    return field(tok, modulus)


def parse_matrix_rows(text, header_len):
    """Shared reader: returns (field, header ints, rows of codes)."""
    lines = list(_tokens(text))
    if not lines:
        raise UsageError("empty matrix file")
    lineno, head = lines[0]
    if len(head) < header_len:
        raise UsageError(f"line {lineno}: header needs {header_len} fields")
    F = _parse_header_field(head[0], head[header_len:])
    try:
        dims = [int(x) for x in head[1:header_len]]
    except ValueError:
        raise UsageError(f"line {lineno}: bad header {' '.join(head)!r}") from None
    nrows, ncols = (dims[0], dims[0]) if len(dims) == 1 else dims
    body = lines[1:]
    if len(body) != nrows:
        raise UsageError(f"expected {nrows} rows, found {len(body)}")
    rows = []
    for r, (lineno, toks) in enumerate(body):
        if len(toks) != ncols:
            raise UsageError(f"line {lineno}: expected {ncols} entries, found {len(toks)}")
        try:
            rows.append([F.parse(t) for t in toks])
        except UsageError as exc:
            raise UsageError(f"line {lineno}: {exc}") from None
    return F, dims, np.array(rows, dtype=np.int64).reshape(nrows, ncols)


def read_matrix(text):
    """Parse the ``q n`` matrix format; symmetry violations name (row, col), 1-based."""
    F, (n,), rows = parse_matrix_rows(text, 2)
    bad = np.argwhere(rows != rows.T)
    if len(bad):
        i, j = bad[0]
        raise UsageError(
            f"not symmetric: entry ({i + 1}, {j + 1}) = {F.format(rows[i, j])} "
            f"but ({j + 1}, {i + 1}) = {F.format(rows[j, i])}"
        )
    return SymMatrix(F, rows)


def load_matrix(path):
    with open(path) as fh:
        return read_matrix(fh.read())


def format_rows(F, rows):
    return "\n".join(" ".join(F.format(x) for x in row) for row in rows)


def write_matrix(B, comment=None):
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"{B.spec.name} {B.n}")
    if B.n:
        out.append(format_rows(B.spec, B.entries))
    return "\n".join(out) + "\n"


def random_symmetric(F, n, rng, zero_diagonal=False):
    F = field(F)
    a = rng.integers(0, F.q, size=(n, n))
    a = np.triu(a) + np.triu(a, 1).T
    if zero_diagonal:
        np.fill_diagonal(a, 0)
    return SymMatrix(F, a, check=False)


__all__ = [
    "FieldSpec",
    "SymMatrix",
    "complement",
    "det",
    "diag_congruence",
    "first_row_to_ones",
    "index_set",
    "inverse",
    "load_matrix",
    "normalize_AN",
    "permute",
    "principal_rank",
    "principal_submatrix",
    "random_symmetric",
    "rank",
    "read_matrix",
    "scale",
    "schur_complement",
    "write_matrix",
]
