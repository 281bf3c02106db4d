"""Exhaustive attainability of epr-sequences at small order.

Work is split into shards, one per (diagonal, first row) pair; a jitted kernel
then runs an odometer over the remaining upper-triangle entries.

Symmetry pruning keeps only shards that can hold the lexicographic maximum of
some orbit under the group generated by nonzero scalars, permutations and
±1 diagonal congruences, all of which preserve the epr-sequence.  Matrices are
ranked by the string (diagonal, upper triangle row-major) where values are
ordered 1 > 2 > ... > q-1 > 0.  Each filter below is a necessary condition for
being that maximum, so every orbit keeps at least one member:

* the diagonal is non-increasing;
* no nonzero scalar multiple has a larger sorted diagonal;
* each first-row entry b_0j outranks its negative (flip d_j = -1);
* within a run of equal diagonal values the first row is non-increasing.

With ``alphabet="AN"`` the kernel also cuts any subtree whose leading block
already shows an S: an S in epr(B[[m]]) at position i forces an S or a
conflicting letter in epr(B) at i (inheritance), so no S-free sequence lives
below it.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _kernels
from .epr import decode, epr
from .errors import CapacityError, UsageError
from .gf import field
from .pattern import _as_pattern, builtin_catalog, enumerate_catalog, matches
from .symmat import SymMatrix

log = logging.getLogger(__name__)

# largest n per q: (default, with big=True)
LIMITS = {2: (7, 8), 3: (5, 6), 4: (4, 5), 5: (4, 5), 7: (3, 4), 8: (3, 4), 9: (3, 4)}
LIMITS_AN = {3: (8, 10)}
GENERIC_LIMIT = (3, 4)


def capacity(q, alphabet=None, big=False):
    table = LIMITS_AN if alphabet == "AN" and q in LIMITS_AN else LIMITS
    default, bigger = table.get(q, GENERIC_LIMIT)
    return bigger if big else default


def _rank(F, v):
    return 0 if v == 0 else F.q - v


def _diag_ok(F, diag):
    r = [_rank(F, v) for v in diag]
    if any(r[i] < r[i + 1] for i in range(len(r) - 1)):
        return False
    for c in range(2, F.q):
        scaled = sorted((_rank(F, F.mul(c, v)) for v in diag), reverse=True)
        if scaled > r:
            return False
    return True


def _row_ok(F, diag, row):
    for j, v in enumerate(row, start=1):
        if v and _rank(F, v) < _rank(F, F.neg(v)):
            return False
        if j >= 2 and diag[j] == diag[j - 1] and _rank(F, row[j - 2]) < _rank(F, v):
            return False
    return True


def shards(F, n, prune=True):
    """Deterministic list of (diagonal, first row) shard keys."""
    out = []
    for diag in itertools.product(range(F.q), repeat=n):
        if prune and not _diag_ok(F, diag):
            continue
        for row in itertools.product(range(F.q), repeat=n - 1):
            if prune and not _row_ok(F, diag, row):
                continue
            out.append((diag, row))
    return out


def free_entries(n):
    return [(i, j) for j in range(2, n) for i in range(1, j)]


def shard_matrix(F, n, diag, row, counter):
    """Rebuild the matrix at odometer value ``counter`` of a shard."""
    a = np.zeros((n, n), dtype=np.int64)
    np.fill_diagonal(a, diag)
    a[0, 1:] = row
    a[1:, 0] = row
    cells = free_entries(n)
    for i, j in reversed(cells):
        counter, v = divmod(counter, F.q)
        a[i, j] = a[j, i] = v
    return SymMatrix(F, a)


def _run_shard(F, n, key, restrict):
    add, mul, neg, inv = F.tables()
    found = np.full(3**n, -1, dtype=np.int64)
    diag, row = key
    visited, cut = _kernels.enumerate_shard(
        n,
        F.q,
        np.array(diag, dtype=np.int64),
        np.array(row if row else [0], dtype=np.int64),
        restrict,
        found,
        add,
        mul,
        neg,
        inv,
    )
    codes = np.nonzero(found >= 0)[0]
    return int(visited), int(cut), {int(c): int(found[c]) for c in codes}


@dataclass
class AttainabilityReport:
    """Outcome of an exhaustive run at (q, n).

    ``visited`` counts matrices whose sequence was computed; ``pruned`` is the
    rest of the q^(n(n+1)/2) search space, skipped by symmetry or by the
    alphabet cut.  ``missing`` lists catalog sequences never attained and
    ``extra`` attained sequences the catalog lacks.
    """

    q: int
    n: int
    alphabet: str | None
    attained: list
    witnesses: dict
    visited: int
    pruned: int
    catalog: str | None = None
    missing: list = dc_field(default_factory=list)
    extra: list = dc_field(default_factory=list)
    order: dict = dc_field(default_factory=dict, repr=False)

    @property
    def verified(self):
        return self.catalog is not None and not self.missing and not self.extra

    def to_dict(self, witnesses=False):
        d = {
            "q": self.q,
            "n": self.n,
            "alphabet": self.alphabet,
            "attained": self.attained,
            "diffs": {"missing": self.missing, "extra": self.extra},
            "visited": self.visited,
            "pruned": self.pruned,
        }
        if self.catalog is not None:
            d["catalog"] = self.catalog
            d["verified"] = self.verified
        if witnesses:
            d["witnesses"] = {s: self.witnesses[s].tolist() for s in self.attained}
        return d

    def to_json(self, witnesses=False):
        return json.dumps(self.to_dict(witnesses), indent=2, sort_keys=True) + "\n"


def _load_checkpoint(path, meta):
    if not path or not os.path.exists(path):
        return {}
    with open(path) as fh:
        state = json.load(fh)
    if state.get("meta") != meta:
        raise UsageError(f"checkpoint {path} belongs to a different run")
    return {int(k): (v[0], v[1], {int(c): x for c, x in v[2].items()}) for k, v in state["done"].items()}


def _save_checkpoint(path, meta, done):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump({"meta": meta, "done": {str(k): v for k, v in sorted(done.items())}}, fh)
    os.replace(tmp, path)


def attainable(
    q,
    n,
    alphabet=None,
    *,
    prune=True,
    shards_count=None,
    big=False,
    checkpoint=None,
    progress=False,
):
    """Every epr-sequence of a symmetric n×n matrix over GF(q).

    ``alphabet="AN"`` reports only S-free sequences (and searches far less).
    The result does not depend on ``shards_count``; witnesses are the first
    matrix reaching each sequence in shard order.
    """
    F = field(q)
    if F.q > 256:
        raise CapacityError(f"enumeration supports q <= 256, got {F.q}")
    if alphabet not in (None, "AN", "ASN"):
        raise UsageError(f"alphabet must be AN or ASN, got {alphabet!r}")
    if alphabet == "ASN":
        alphabet = None
    limit = capacity(F.q, alphabet, big)
    if not 1 <= n <= limit:
        hint = "" if big else " (raise with --big)"
        raise CapacityError(f"GF({F.q}) enumeration is limited to n <= {limit}{hint}")
    keys = shards(F, n, prune)
    restrict = alphabet == "AN"
    meta = {"q": F.q, "n": n, "alphabet": alphabet, "prune": prune}
    done = _load_checkpoint(checkpoint, meta)
    todo = [i for i in range(len(keys)) if i not in done]
    workers = shards_count or os.cpu_count() or 1

    def job(i):
        return i, _run_shard(F, n, keys[i], restrict)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        for count, (i, res) in enumerate(pool.map(job, todo), 1):
            done[i] = res
            if checkpoint:
                _save_checkpoint(checkpoint, meta, done)
            if progress:
                print(f"\rshard {len(done)}/{len(keys)}", end="", file=sys.stderr, flush=True)
    if progress:
        print(file=sys.stderr)

    visited = sum(done[i][0] for i in range(len(keys)))
    first = {}
    for i in range(len(keys)):
        for code, counter in done[i][2].items():
            if code not in first:
                first[code] = (i, counter)
    witnesses = {}
    order = {}
    for code, (i, counter) in first.items():
        s = decode(code, n)
        if restrict and "S" in s:
            continue
        w = shard_matrix(F, n, *keys[i], counter)
        if epr(w, census=True) != s:
            raise AssertionError(f"witness for {s} re-verified as {epr(w)}")
        witnesses[s] = w
        order[s] = (i, counter)
    total = F.q ** (n * (n + 1) // 2)
    return AttainabilityReport(
        q=F.q,
        n=n,
        alphabet=alphabet,
        attained=sorted(witnesses),
        witnesses=witnesses,
        visited=visited,
        pruned=total - visited,
        order=order,
    )


def verify_catalog(q, n, catalog, **kwargs):
    """Compare attained sequences with a catalog in both directions.

    For catalogs that only speak about S-free sequences the search uses the
    same restriction.  Sequences shorter than the catalog's scope are not
    compared.
    """
    F = field(q)
    cat = builtin_catalog(catalog) if isinstance(catalog, str) else catalog
    alphabet = "AN" if set(cat.alphabet) == {"A", "N"} else kwargs.pop("alphabet", None)
    kwargs.pop("alphabet", None)
    report = attainable(F.q, n, alphabet, **kwargs)
    report.catalog = cat.name
    got = {s for s in report.attained if cat.in_scope(s)}
    want = enumerate_catalog(cat, n) if n >= cat.min_n else set()
    report.missing = sorted(want - got)
    report.extra = sorted(got - want)
    if n < cat.min_n:
        log.info("n = %d is below the scope of catalog %s; nothing compared", n, cat.name)
    return report


def find_witness(q, n, pattern, **kwargs):
    """First matrix in enumeration order whose epr matches ``pattern``, or None."""
    pat = _as_pattern(pattern)
    alphabet = "AN" if "S" not in pat.letters else None
    report = attainable(q, n, alphabet, **kwargs)
    hits = [s for s in report.attained if matches(pat, s)]
    if not hits:
        return None
    best = min(hits, key=lambda s: report.order[s])
    return report.witnesses[best]


def brute_force_attained(q, n):
    """Unpruned reference: every symmetric matrix, epr via the Python path."""
    from .epr import epr_python

    F = field(q)
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    out = {}
    for vals in itertools.product(range(F.q), repeat=len(cells)):
        a = np.zeros((n, n), dtype=np.int64)
        for (i, j), v in zip(cells, vals):
            a[i, j] = a[j, i] = v
        B = SymMatrix(F, a, check=False)
        out.setdefault(epr_python(B, census=True), B)
    return out
