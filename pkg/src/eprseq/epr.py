"""pr- and epr-sequences of symmetric matrices.

Sequences are plain strings: ``"NAAANA"`` for an epr-sequence and a string of
``0``/``1`` of length n+1 for a pr-sequence.

The pr-sequence follows the convention r0 = 1 exactly when B has a zero
diagonal entry.  Some authors define r0 differently; only this reading is
implemented.
"""

from itertools import combinations

import numpy as np

from . import _kernels, linalg
from .errors import UsageError
from .gf import TABLE_Q

LETTERS = "NAS"  # index = kernel letter code
_CODE = {ch: i for i, ch in enumerate(LETTERS)}
MAX_MINOR_TABLE_ORDER = 20


def check_sequence(s, alphabet="ASN"):
    if not isinstance(s, str) or not s:
        raise UsageError(f"not a sequence: {s!r}")
    bad = set(s) - set(alphabet)
    if bad:
        raise UsageError(f"sequence {s!r} has letters outside {{{','.join(alphabet)}}}")
    return s


def encode(s):
    """Base-3 code of a sequence, first letter least significant."""
    return sum(_CODE[ch] * 3**i for i, ch in enumerate(s))


def decode(code, n):
    out = []
    for _ in range(n):
        code, d = divmod(code, 3)
        out.append(LETTERS[d])
    return "".join(out)


def _letters(codes):
    return "".join(LETTERS[c] for c in codes)


def epr_prefix(B, m, census=False):
    """The first m letters of epr(B)."""
    n = B.n
    if not 1 <= m <= n:
        raise UsageError(f"prefix length {m} out of range 1..{n}")
    F = B.spec
    if F.q <= TABLE_Q:
        add, mul, neg, inv = F.tables()
        codes = _kernels.epr_letters(
            np.ascontiguousarray(B.entries), n, m, census, add, mul, neg, inv
        )
        return _letters(codes)
    return epr_python(B, census)[:m]


def epr(B, census=False):
    """epr(B) = l1 l2 ... ln.

    The i-th letter is A, S or N as all, some or none of the order-i
    principal minors are nonzero.  Orders above rank(B) are N without
    evaluating minors; ``census=True`` evaluates every minor instead.
    """
    if B.n < 1:
        raise UsageError("epr-sequence of an empty matrix")
    return epr_prefix(B, B.n, census)


def epr_python(B, census=False):
    """Reference implementation over itertools.combinations."""
    F = B.spec
    n = B.n
    rk = n if census else linalg.rank(F, B.entries)
    out = []
    for k in range(1, n + 1):
        if k > rk:
            out.append("N")
            continue
        zero = nonzero = False
        for alpha in combinations(range(n), k):
            sub = B.entries[np.ix_(alpha, alpha)]
            if linalg.det_python(F, sub) != 0:
                nonzero = True
            else:
                zero = True
            if zero and nonzero and not census:
                break
        out.append("S" if zero and nonzero else "A" if nonzero else "N")
    return "".join(out)


def pr(B):
    """pr(B) = r0 r1 ... rn as a bit string."""
    a = B.entries
    r0 = "1" if np.any(np.diag(a) == 0) else "0"
    return r0 + "".join("0" if ch == "N" else "1" for ch in epr(B))


def principal_minors(B):
    """det(B[mask]) for every bitmask of rows; index 0 is the empty minor (1)."""
    n = B.n
    if n > MAX_MINOR_TABLE_ORDER:
        raise UsageError(f"minor table needs order <= {MAX_MINOR_TABLE_ORDER}")
    F = B.spec
    if F.q <= TABLE_Q:
        add, mul, neg, inv = F.tables()
        return _kernels.all_principal_minors(
            np.ascontiguousarray(B.entries), n, add, mul, neg, inv
        )
    out = np.ones(1 << n, dtype=np.int64)
    for mask in range(1, 1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        out[mask] = linalg.det_python(F, B.entries[np.ix_(idx, idx)])
    return out


def subset_eprs(B):
    """Letter codes of epr(B[mask]) for every mask; see ``_kernels.subset_letters``."""
    nonzero = principal_minors(B) != 0
    return _kernels.subset_letters(nonzero, B.n)


def mask_to_indices(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def sequence_of(letter_codes, m):
    return _letters(letter_codes[:m])
