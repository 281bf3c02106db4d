"""Structural facts about epr-sequences as executable checks.

Sequence positions are 1-based here, as letters are usually named l_1..l_n.
Matrix indices stay 0-based like everywhere else.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .errors import PreconditionError, UsageError
from .gf import field
from .pattern import matches

# --- forbidden patterns and field-specific structure ------------------------


@dataclass(frozen=True)
class Violation:
    rule: str
    sequence: str
    detail: str

    def __str__(self):
        return f"{self.rule}: {self.sequence}: {self.detail}"


def _nn(s):
    k = s.find("NN")
    if k >= 0 and set(s[k:]) != {"N"}:
        return f"NN at position {k + 1} followed by {s[k:]}"


def _nan_nas(s):
    for bad in ("NAN", "NAS"):
        k = s.find(bad)
        if k >= 0:
            return f"{bad} at position {k + 1}"


def _char2_odd(s):
    if s[0] == "N":
        odd = [j for j in range(1, len(s) + 1, 2) if s[j - 1] != "N"]
        if odd:
            return f"starts with N but l_{odd[0]} = {s[odd[0] - 1]}"


def _na_third(p):
    want = "N" if p == 2 else "A"

    def check(s):
        if s.startswith("NA") and len(s) >= 3 and s[2] != want:
            return f"starts NA so l_3 should be {want}"

    return check


def _aa_f2(s):
    if "AA" in s[:-1] and set(s) != {"A"}:
        return "AA occurs before the last letter but the sequence is not all A"


def _aaa_f3(s):
    if s.startswith("AAA") and set(s) != {"A"}:
        return "starts AAA but is not all A"


def _aa_half(s):
    if s.startswith("AA"):
        for j in range(3, math.ceil(len(s) / 2) + 1):
            if s[j - 1] == "N":
                return f"starts AA but l_{j} = N with j <= ceil(n/2)"


def _aan(s):
    if s.startswith("AAN") and s not in ("AAN", "AANA", "AANN"):
        return "starts AAN but is not AAN, AANA or AANN"


def _naaa(s):
    if "NAAA" in s and s not in ("NAAA", "NAAAN", "NAAANA"):
        return "contains NAAA but is not NAAA, NAAAN or NAAANA"


def _naxa(s):
    if s.startswith("NA") and len(s) >= 4 and s[3] == "A" and s not in ("NAAA", "NAAAN", "NAAANA"):
        return "starts NA with l_4 = A but is not NAAA, NAAAN or NAAANA"


_NAAN_FORMS = ("NAAN(AAN)*", "NAAN(AAN)*A", "NAAN(AAN)*AA")


def _naan(s):
    if s.startswith("NAAN") and not any(matches(f, s) for f in _NAAN_FORMS):
        return "starts NAAN but matches none of " + ", ".join(_NAAN_FORMS)


def _ana(p):
    def check(s):
        if s.startswith("ANA"):
            for i in range(4, len(s) + 1):
                want = "N" if i % p == 2 % p else "A"
                if s[i - 1] != want:
                    return f"starts ANA so l_{i} should be {want}"

    return check


def rules_for(q):
    """(name, check) pairs that apply to sequences over GF(q)."""
    F = field(q)
    p = F.p
    rules = [("NN", _nn), ("NA-third", _na_third(p))]
    if p != 2:
        rules += [("NAN/NAS", _nan_nas), ("ANA", _ana(p))]
    else:
        rules.append(("char2-odd-N", _char2_odd))
    if F.q == 2:
        rules.append(("AA-F2", _aa_f2))
    if F.q == 3:
        rules += [
            ("AAA-F3", _aaa_f3),
            ("AA-first-half", _aa_half),
            ("AAN", _aan),
            ("NAAA", _naaa),
            ("NAXA", _naxa),
            ("NAAN", _naan),
        ]
    return rules


def forbidden_scan(s, char_p):
    """NN, NAN/NAS (characteristic not 2) and odd-N (characteristic 2) checks."""
    rules = [("NN", _nn)]
    if char_p == 2:
        rules.append(("char2-odd-N", _char2_odd))
    else:
        rules.append(("NAN/NAS", _nan_nas))
    out = []
    for name, check in rules:
        msg = check(s)
        if msg:
            out.append(Violation(name, s, msg))
    return out


def structural_audit(sequences, q):
    """Every applicable rule over every sequence; returns the violations."""
    rules = rules_for(q)
    out = []
    for s in sequences:
        for name, check in rules:
            msg = check(s)
            if msg:
                out.append(Violation(name, s, msg))
    return out


# --- Ramsey thresholds ------------------------------------------------------


@dataclass(frozen=True)
class RamseyEntry:
    colors: int
    clique: int
    value: int
    exact: bool
    source: str

    @property
    def tag(self):
        return "exact" if self.exact else "upper_bound"

    def __str__(self):
        rel = "=" if self.exact else "<="
        return f"R_{self.colors}({self.clique}) {rel} {self.value}"


RAMSEY_TABLE = {
    (2, 3): RamseyEntry(2, 3, 6, True, "R(3,3) = 6"),
    (2, 4): RamseyEntry(2, 4, 18, True, "R(4,4) = 18"),
    (2, 5): RamseyEntry(2, 5, 48, False, "R(5,5) <= 48"),
    (3, 4): RamseyEntry(3, 4, 230, False, "R(4,4,4) <= 230"),
    (4, 3): RamseyEntry(4, 3, 64, False, "R(3,3,3,3) <= 64"),
}


def ramsey(colors, clique):
    """Known value or bound for R_colors(clique), or None.

    Besides the table, one colour or cliques of order <= 2 are trivial.
    """
    if clique <= 2 or colors == 1:
        return RamseyEntry(colors, clique, max(clique, 1), True, "trivial")
    return RAMSEY_TABLE.get((colors, clique))


@dataclass(frozen=True)
class PositionConstraint:
    position: int  # 1-based
    allowed: frozenset
    provenance: tuple

    def holds(self, s):
        return s[self.position - 1] in self.allowed

    def __str__(self):
        letters = ",".join(sorted(self.allowed))
        return f"l_{self.position} in {{{letters}}}  [{'; '.join(self.provenance)}]"


def _largest_k(colors, size_of, n, offset):
    """Largest k >= 1 with a known R_colors(size_of(k)) + offset <= n, plus the first unreachable entry."""
    best = None
    blocked = None
    k = 1
    while k <= n + 1:
        entry = ramsey(colors, size_of(k))
        if entry is None:
            break
        if entry.value + offset <= n:
            best = (k, entry)
        elif blocked is None:
            blocked = (k, entry)
        k += 1
    return best, blocked


def _merge(constraints):
    by_pos = {}
    for pos, allowed, why in constraints:
        if pos in by_pos:
            a, w = by_pos[pos]
            by_pos[pos] = (a & allowed, w + (why,))
        else:
            by_pos[pos] = (frozenset(allowed), (why,))
    return [PositionConstraint(pos, a, w) for pos, (a, w) in sorted(by_pos.items())]


def ramsey_constraints(prefix, q, n, with_blocked=False):
    """Letters forced at order n for sequences starting with ``prefix``.

    ``prefix`` is N, NA or AN (the last only over GF(3)).  Table upper bounds
    are safe to use: n >= bound implies n >= R.  With ``with_blocked`` also
    returns (statement, threshold) for the next statements out of reach at n.
    """
    F = field(q)
    p = F.p
    raw = []
    blocked = []
    if prefix in ("N", "NA") and p == 2:
        for j in range(1, n + 1, 2):
            raw.append((j, {"N"}, "char 2: odd positions are N"))
    if prefix == "N":
        best, nxt = _largest_k(F.q, lambda k: k * p + 1, n, 0)
        if best:
            k, entry = best
            for i in range(1, k + 1):
                if i * p + 1 <= n:
                    raw.append((i * p + 1, {"N", "S"}, f"N prefix, n >= {entry.value} from {entry}"))
        if nxt:
            k, entry = nxt
            blocked.append((f"l_{k * p + 1} in {{N,S}} ({entry})", entry.value))
    elif prefix == "NA":
        if n >= 3:
            raw.append((3, {"N"} if p == 2 else {"A"}, "NA prefix: third letter"))
        best, nxt = _largest_k(F.q - 1, lambda k: k, n, 1)
        if best:
            k, entry = best
            for i in range(3, min(k + 1, n) + 1):
                allowed = {"N", "S"} if i % p == 1 % p else {"A", "S"}
                raw.append((i, allowed, f"NA prefix, n >= {entry.value + 1} from {entry}"))
        if nxt:
            k, entry = nxt
            blocked.append((f"constraints up to l_{k + 1} ({entry})", entry.value + 1))
    elif prefix == "AN":
        if F.q != 3:
            raise UsageError("the AN-prefix constraints are stated over GF(3) only")
        best, nxt = _largest_k(2, lambda k: 3 * k + 1, n, 1)
        if best:
            k, entry = best
            for i in range(1, k + 1):
                if 3 * i + 2 <= n:
                    raw.append((3 * i + 2, {"N", "S"}, f"AN prefix, n >= {entry.value + 1} from {entry}"))
        if nxt:
            k, entry = nxt
            blocked.append((f"l_{3 * k + 2} in {{N,S}} ({entry})", entry.value + 1))
    else:
        raise UsageError(f"prefix must be N, NA or AN, got {prefix!r}")
    out = _merge(raw)
    return (out, blocked) if with_blocked else out


# --- monochromatic principal submatrices --------------------------------------


def _find_clique(adj, k, n):
    def extend(clique, cand):
        if len(clique) == k:
            return clique
        if len(clique) + bin(cand).count("1") < k:
            return None
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            got = extend(clique + [v], cand & adj[v])
            if got:
                return got
        return None

    return extend([], (1 << n) - 1)


def monochromatic_principal_submatrix(B, T, k):
    """Indices of a k×k principal submatrix whose off-diagonal entries share one value from T.

    Every off-diagonal entry of B must lie in T.  Colours are tried in
    increasing code order; returns None when no such submatrix exists.
    """
    T = sorted({int(c) for c in T})
    n = B.n
    a = B.entries
    off = ~np.eye(n, dtype=bool)
    outside = np.argwhere(off & ~np.isin(a, T))
    if len(outside):
        i, j = outside[0]
        raise PreconditionError(f"entry ({i}, {j}) = {a[i, j]} is not in T = {T}")
    if k <= 0:
        return ()
    if k > n:
        return None
    for c in T:
        adj = [sum(1 << j for j in range(n) if j != i and a[i, j] == c) for i in range(n)]
        got = _find_clique(adj, k, n)
        if got:
            return tuple(sorted(got))
    return None


# --- graphs of order 5 -------------------------------------------------------


def _has_triangle(edges, n):
    adj = [set() for _ in range(n)]
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    return any(adj[i] & adj[j] for i, j in edges)


def triangle_free_order5_census():
    """All labelled graphs on 5 vertices with G and its complement triangle-free."""
    pairs = list(itertools.combinations(range(5), 2))
    survivors = []
    for mask in range(1 << len(pairs)):
        edges = [e for t, e in enumerate(pairs) if mask >> t & 1]
        comp = [e for t, e in enumerate(pairs) if not mask >> t & 1]
        if not _has_triangle(edges, 5) and not _has_triangle(comp, 5):
            survivors.append(tuple(edges))
    c5 = nx.cycle_graph(5)
    all_c5 = all(nx.is_isomorphic(nx.Graph(list(g)), c5) for g in survivors)
    return {
        "graphs": survivors,
        "count": len(survivors),
        "all_isomorphic_to_C5": all_c5,
    }


# --- audits against the enumerator -------------------------------------------


def empirical_constraint_audit(q, n, prefix, report=None, **kwargs):
    """Check ramsey_constraints on every attained sequence with ``prefix``."""
    from .enumerator import attainable, capacity

    if report is None:
        report = attainable(q, n, **kwargs)
    constraints, blocked = ramsey_constraints(prefix, q, n, with_blocked=True)
    cap = capacity(report.q, report.alphabet, big=True)
    seqs = [s for s in report.attained if s.startswith(prefix)]
    violations = [
        Violation(f"constraint l_{c.position}", s, str(c))
        for s in seqs
        for c in constraints
        if not c.holds(s)
    ]
    return {
        "q": report.q,
        "n": n,
        "prefix": prefix,
        "sequences": seqs,
        "constraints": [str(c) for c in constraints],
        "constraints_checked": len(constraints),
        "violations": [str(v) for v in violations],
        "next_thresholds": [f"{what} needs n >= {t}" for what, t in blocked],
        "not_testable_at_capacity": [f"{what} needs n >= {t}" for what, t in blocked if t > cap],
    }
