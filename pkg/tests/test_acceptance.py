"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py``; the summary at the end lists
every criterion.  ``-s`` also shows the lines as the tests run.
"""

import functools
import itertools
import json
import os
import subprocess
import sys
import time

import numpy as np

from eprseq import linalg
from eprseq.codes import q_ceiling_audit
from eprseq.constructions import build_C5_composite, build_J_minus_kI
from eprseq.enumerator import attainable, verify_catalog
from eprseq.epr import epr
from eprseq.gf import field
from eprseq.pattern import builtin_catalog, enumerate_catalog, matches
from eprseq.symmat import SymMatrix, load_matrix, random_symmetric
from eprseq.theorems import (
    monochromatic_principal_submatrix,
    ramsey_constraints,
    structural_audit,
    triangle_free_order5_census,
)

from oracles import all_symmetric
from properties import inheritance_failures, inverse_failures, schur_failures

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURES = os.path.join(ROOT, "fixtures")


def criterion(title):
    def wrap(f):
        @functools.wraps(f)
        def run():
            start = time.perf_counter()
            try:
                f()
            except BaseException:
                print(f"\nFAIL  {title}")
                raise
            print(f"\nPASS  {title}  ({time.perf_counter() - start:.1f} s)")

        run.criterion = title
        return run

    return wrap


@functools.lru_cache(maxsize=None)
def attained(q, n, alphabet=None, big=False):
    return tuple(attainable(q, n, alphabet, big=big).attained)


@criterion("1. F2 catalog, two-sided, n = 1..7")
def test_criterion_1_f2_classification():
    start = time.perf_counter()
    for n in range(1, 6):
        r = verify_catalog(2, n, "f2", prune=False)
        assert r.verified, (n, r.missing, r.extra)
        assert r.visited == 2 ** (n * (n + 1) // 2)
    assert time.perf_counter() - start < 10
    start = time.perf_counter()
    for n in (6, 7):
        r = verify_catalog(2, n, "f2")
        assert r.verified, (n, r.missing, r.extra)
    assert time.perf_counter() - start < 300


@criterion("2. F3 {A,N} catalog, two-sided, n = 3..5")
def test_criterion_2_f3_classification():
    cat = builtin_catalog("f3")
    start = time.perf_counter()
    for n in (3, 4):
        # no pruning and no alphabet cut: every matrix visited
        r = attainable(3, n, prune=False)
        assert r.visited == 3 ** (n * (n + 1) // 2)
        assert {s for s in r.attained if "S" not in s} == enumerate_catalog(cat, n)
    assert time.perf_counter() - start < 10
    start = time.perf_counter()
    r = attainable(3, 5, prune=False)
    assert r.visited == 3**15
    assert {s for s in r.attained if "S" not in s} == enumerate_catalog(cat, 5)
    assert verify_catalog(3, 5, "f3").verified
    assert time.perf_counter() - start < 120


@criterion("3. golden fixtures and J_n - kI_n forms, n <= 12")
def test_criterion_3_golden():
    start = time.perf_counter()
    for name, seq in (("m_aana", "AANA"), ("m_aann", "AANN"), ("m_naaana", "NAAANA")):
        B = load_matrix(os.path.join(FIXTURES, name + ".mat"))
        assert epr(B) == seq
    forms = {1: ("(NAA)*N", "(ANA)*A"), 2: ("(NAA)*NA", "(ANA)*AN"), 0: ("(NAA)*NAA", "(ANA)*ANA")}
    for n in range(1, 13):
        f1, f2 = forms[n % 3]
        assert matches(f1, epr(build_J_minus_kI(3, n, 1)))
        assert matches(f2, epr(build_J_minus_kI(3, n, 2)))
        assert epr(build_J_minus_kI(2, n, 1)) == "".join("N" if i % 2 == 1 else "A" for i in range(1, n + 1))
    assert time.perf_counter() - start < 1


AUDIT_RUNS = (
    [(2, n, None, False) for n in range(1, 8)]
    + [(3, n, None, n == 6) for n in range(1, 7)]
    + [(3, n, "AN", False) for n in range(6, 9)]
    + [(4, n, None, False) for n in range(1, 5)]
    + [(5, n, None, False) for n in range(1, 5)]
    + [(7, 3, None, False), (8, 3, None, False), (9, 3, None, False)]
)


@criterion("4. structural theorems hold on every attained set at capacity")
def test_criterion_4_structural_audit():
    violations = []
    for q, n, alphabet, big in AUDIT_RUNS:
        seqs = attained(q, n, alphabet, big)
        violations += structural_audit(seqs, q)
        if q == 3:
            assert not [s for s in seqs if len(s) >= 5 and s.startswith("AAN")]
    assert violations == [], violations[:5]


def _random_suite(F, count, rng):
    fails = []
    inv = inh = sch = 0
    while inv < count:
        B = random_symmetric(F, int(rng.integers(1, 7)), rng)
        if B.det() == 0:
            continue
        fails += inverse_failures(B)
        inv += 1
    while inh < count:
        B = random_symmetric(F, int(rng.integers(1, 7)), rng, zero_diagonal=bool(rng.integers(2)))
        fails += inheritance_failures(B)
        inh += 1
    while sch < count:
        n = int(rng.integers(2, 7))
        B = random_symmetric(F, n, rng)
        alpha = sorted(rng.choice(n, int(rng.integers(1, n)), replace=False).tolist())
        if not _nonsingular(B, alpha):
            continue
        fails += schur_failures(B, alpha)
        sch += 1
    return fails


def _nonsingular(B, alpha):
    return linalg.det(B.spec, B.entries[np.ix_(alpha, alpha)]) != 0


@criterion("5. Inverse, Inheritance and Schur suites (10^4 per field, exhaustive n <= 4)")
def test_criterion_5_property_suites():
    rng = np.random.default_rng(20241014)
    fails = []
    for q in (2, 3, 5, 9):
        fails += _random_suite(field(q), 10_000, rng)
    for q in (2, 3):
        F = field(q)
        for n in range(1, 5):
            alphas = [list(a) for r in range(1, n + 1) for a in itertools.combinations(range(n), r)]
            for a in all_symmetric(F, n):
                B = SymMatrix(F, a)
                fails += inverse_failures(B) + inheritance_failures(B) + schur_failures(B, alphas)
    assert fails == [], fails[:5]


@criterion("6. order-5 triangle-free census is the 12 labelled C5s")
def test_criterion_6_triangle_free():
    start = time.perf_counter()
    r = triangle_free_order5_census()
    assert r["count"] == 12 and r["all_isomorphic_to_C5"]
    assert time.perf_counter() - start < 1


@criterion("7. monochromatic order-3 submatrix at R(3,3) = 6; none in the C5 composite")
def test_criterion_7_ramsey_observation():
    rng = np.random.default_rng(7)
    F = field(3)
    for _ in range(1000):
        a = rng.integers(1, 3, size=(6, 6))
        a = np.triu(a, 1) + np.triu(a, 1).T
        B = SymMatrix(F, a)
        alpha = monochromatic_principal_submatrix(B, {1, 2}, 3)
        assert alpha is not None
        assert len({int(B[i, j]) for i, j in itertools.combinations(alpha, 2)}) == 1
    assert monochromatic_principal_submatrix(build_C5_composite(), {1, 2}, 3) is None


@criterion("8. n = 6 boundary via M_NAAANA and the NAXA lemma at capacity")
def test_criterion_8_boundary():
    M = load_matrix(os.path.join(FIXTURES, "m_naaana.mat"))
    s = epr(M)
    assert M.n == 6 and s.startswith("NA") and s[3] == "A"
    at6 = {c.position: c.allowed for c in ramsey_constraints("NA", 3, 6)}
    at7 = {c.position: c.allowed for c in ramsey_constraints("NA", 3, 7)}
    assert 4 not in at6 and at7[4] == {"N", "S"}
    for n in (4, 5):
        hits = {t for t in attained(3, n) if t.startswith("NA") and t[3] == "A"}
        assert hits and hits <= {"NAAA", "NAAAN"}
    hits6 = {t for t in attained(3, 6, None, True) if t.startswith("NA") and t[3] == "A"}
    assert hits6 == {"NAAANA"}


@criterion("9. codes: d = spark(H), epr bound <= d and <= q, per-weight claim (10^3 per q)")
def test_criterion_9_codes():
    for q in (2, 3):
        r = q_ceiling_audit(q, samples=1000, seed=q, max_n=12, max_k=6)
        assert r["ok"], r["failures"]
        assert sum(r["bound_counts"].values()) == 1000


COMMANDS = (
    ["enumerate", "--q", "3", "--n", "5", "--catalog", "f3"],
    ["enumerate", "--q", "2", "--n", "6", "--catalog", "f2"],
    ["check", "audit", "--q", "3", "--n", "5", "--prefix", "NA"],
    ["check", "structural", "--q", "5", "--n", "4"],
    ["code", "audit", "--q", "3", "--samples", "200"],
)


@criterion("10. byte-identical JSON for any --shards value")
def test_criterion_10_determinism():
    for argv in COMMANDS:
        outs = set()
        for shards in ("1", "4", "16"):
            p = subprocess.run(
                [sys.executable, "-m", "eprseq", "--json", "--seed", "99", "--shards", shards, *argv],
                capture_output=True,
            )
            assert p.returncode == 0, p.stderr
            json.loads(p.stdout)
            outs.add(p.stdout)
        assert len(outs) == 1, argv
