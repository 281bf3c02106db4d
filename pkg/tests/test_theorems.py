import itertools

import networkx as nx
import numpy as np
import pytest

from eprseq.constructions import build_C5_composite, build_examples_F3, build_J_minus_kI
from eprseq.enumerator import attainable
from eprseq.errors import PreconditionError, UsageError
from eprseq.gf import field
from eprseq.symmat import SymMatrix, random_symmetric
from eprseq.theorems import (
    RAMSEY_TABLE,
    empirical_constraint_audit,
    forbidden_scan,
    monochromatic_principal_submatrix,
    ramsey,
    ramsey_constraints,
    rules_for,
    structural_audit,
    triangle_free_order5_census,
)


def as_dict(cons):
    return {c.position: set(c.allowed) for c in cons}


def test_forbidden_examples():
    assert [v.rule for v in forbidden_scan("NNA", 3)] == ["NN"]
    assert "NN" in [v.rule for v in forbidden_scan("NNA", 2)]
    assert [v.rule for v in forbidden_scan("NAN", 3)] == ["NAN/NAS"]
    assert forbidden_scan("NAN", 2) == []
    assert [v.rule for v in forbidden_scan("ANAS", 5)] == ["NAN/NAS"]
    assert [v.rule for v in forbidden_scan("NSA", 2)] == ["char2-odd-N"]
    assert forbidden_scan("NSNAN", 2) == []
    assert forbidden_scan("ANNN", 3) == []


@pytest.mark.parametrize(
    "s, q, rule, bad",
    [
        ("SAA", 2, "AA-F2", False),
        ("AAS", 2, "AA-F2", True),
        ("AAAA", 2, "AA-F2", False),
        ("AAAN", 3, "AAA-F3", True),
        ("AASNN", 3, "AA-first-half", False),
        ("AANNNN", 3, "AA-first-half", True),
        ("AANN", 3, "AAN", False),
        ("AANAA", 3, "AAN", True),
        ("ANAAN", 3, "NAAA", False),
        ("SNAAAN", 3, "NAAA", True),
        ("NAAANA", 3, "NAXA", False),
        ("NASA", 3, "NAXA", True),
        ("NAANAAN", 3, "NAAN", False),
        ("NAANA", 3, "NAAN", False),
        ("NAANN", 3, "NAAN", True),
        ("ANAAN", 3, "ANA", False),
        ("ANAAS", 3, "ANA", True),
        ("ANAAAAN", 5, "ANA", False),
        ("ANAAANA", 5, "ANA", True),
        ("NAS", 5, "NA-third", True),
        ("NAN", 4, "NA-third", False),
    ],
)
def test_structural_rules(s, q, rule, bad):
    hits = [v for v in structural_audit([s], q) if v.rule == rule]
    assert bool(hits) == bad
    assert rule in [name for name, _ in rules_for(q)]


def test_rules_follow_field():
    names = lambda q: {name for name, _ in rules_for(q)}
    assert "NAN/NAS" not in names(2) and "char2-odd-N" in names(4)
    assert "AA-F2" in names(2) and "AA-F2" not in names(4)
    assert "NAAN" in names(3) and "NAAN" not in names(9)
    assert "ANA" in names(9)


def test_ramsey_table():
    assert str(RAMSEY_TABLE[(2, 3)]) == "R_2(3) = 6"
    assert RAMSEY_TABLE[(2, 4)].tag == "exact"
    for key in ((2, 5), (3, 4), (4, 3)):
        assert RAMSEY_TABLE[key].tag == "upper_bound"
    assert [RAMSEY_TABLE[k].value for k in ((2, 5), (3, 4), (4, 3))] == [48, 230, 64]
    assert ramsey(1, 7).value == 7
    assert ramsey(5, 2).value == 2
    assert ramsey(2, 6) is None


def test_na_constraints_examples():
    assert as_dict(ramsey_constraints("NA", 3, 19)) == {3: {"A"}, 4: {"N", "S"}, 5: {"A", "S"}}
    assert as_dict(ramsey_constraints("NA", 3, 6)) == {3: {"A"}}
    assert as_dict(ramsey_constraints("NA", 3, 7)) == {3: {"A"}, 4: {"N", "S"}}
    assert 6 not in as_dict(ramsey_constraints("NA", 3, 48))
    assert as_dict(ramsey_constraints("NA", 3, 49))[6] == {"A", "S"}
    assert as_dict(ramsey_constraints("NA", 5, 64)) == {3: {"A"}}
    assert as_dict(ramsey_constraints("NA", 5, 65)) == {3: {"A"}, 4: {"A", "S"}}


def test_an_and_n_constraints():
    assert as_dict(ramsey_constraints("AN", 3, 19)) == {5: {"N", "S"}}
    assert ramsey_constraints("AN", 3, 18) == []
    assert as_dict(ramsey_constraints("N", 3, 230)) == {4: {"N", "S"}}
    assert ramsey_constraints("N", 3, 229) == []
    assert as_dict(ramsey_constraints("N", 2, 5)) == {1: {"N"}, 3: {"N"}, 5: {"N"}}
    assert as_dict(ramsey_constraints("N", 4, 64))[3] == {"N"}
    with pytest.raises(UsageError):
        ramsey_constraints("AN", 5, 30)
    with pytest.raises(UsageError):
        ramsey_constraints("SA", 3, 30)


def test_constraints_record_provenance():
    cons = ramsey_constraints("NA", 3, 19)
    assert all(c.provenance for c in cons)
    assert any("R_2(4) = 18" in p for p in cons[1].provenance)
    assert any("<=" in p for p in ramsey_constraints("N", 3, 230)[0].provenance)


@pytest.mark.parametrize("prefix, q", [("N", 2), ("N", 3), ("N", 4), ("NA", 3), ("NA", 5), ("AN", 3)])
def test_constraints_only_tighten_with_n(prefix, q):
    prev = {}
    for n in range(1, 260):
        cur = as_dict(ramsey_constraints(prefix, q, n))
        for pos, allowed in prev.items():
            if pos <= n:
                assert pos in cur and cur[pos] <= allowed
        assert all(cur[p] for p in cur)
        prev = cur


def test_mono_examples():
    J = build_J_minus_kI(3, 6, 1)
    for k in range(7):
        assert monochromatic_principal_submatrix(J, {1}, k) == tuple(range(k))
    assert monochromatic_principal_submatrix(build_C5_composite(), {1, 2}, 3) is None
    with pytest.raises(PreconditionError):
        monochromatic_principal_submatrix(J, {2}, 3)


def _brute_mono(B, T, k):
    for a in itertools.combinations(range(B.n), k):
        vals = {int(B.entries[i, j]) for i, j in itertools.combinations(a, 2)}
        if len(vals) <= 1 and (not vals or vals <= T):
            return True
    return False


def test_mono_agrees_with_brute_force():
    rng = np.random.default_rng(8)
    F = field(5)
    for _ in range(200):
        n = int(rng.integers(1, 8))
        a = rng.integers(1, 5, size=(n, n))
        a = np.triu(a, 1) + np.triu(a, 1).T
        B = SymMatrix(F, a)
        k = int(rng.integers(1, 5))
        got = monochromatic_principal_submatrix(B, {1, 2, 3, 4}, k)
        assert (got is not None) == _brute_mono(B, {1, 2, 3, 4}, k)
        if got:
            vals = {int(B.entries[i, j]) for i, j in itertools.combinations(got, 2)}
            assert len(got) == k and len(vals) <= 1


def test_mono_at_ramsey_threshold():
    rng = np.random.default_rng(9)
    for _ in range(200):
        B = random_symmetric(field(3), 6, rng, zero_diagonal=True)
        a = B.entries.copy()
        a[a == 0] = 1
        np.fill_diagonal(a, 0)
        assert monochromatic_principal_submatrix(SymMatrix(3, a), {1, 2}, 3) is not None


def test_triangle_free_census():
    r = triangle_free_order5_census()
    assert r["count"] == 12 and r["all_isomorphic_to_C5"]
    for g in r["graphs"]:
        G = nx.Graph(g)
        assert len(g) == 5 and sorted(d for _, d in G.degree()) == [2] * 5 and nx.is_connected(G)
    # 5!/10 labellings: 10 automorphisms of C5
    assert len({frozenset(g) for g in r["graphs"]}) == 12


def test_audit_examples():
    r = empirical_constraint_audit(3, 4, "NA")
    assert r["sequences"] and r["constraints_checked"] >= 1 and not r["violations"]
    assert all(s[2] == "A" for s in r["sequences"])
    r = empirical_constraint_audit(2, 5, "N")
    assert r["constraints_checked"] == 3 and not r["violations"]
    assert all(s[0::2] == "NNN" for s in r["sequences"])
    r = empirical_constraint_audit(3, 3, "AN", alphabet="AN")
    assert r["constraints_checked"] == 0 and r["sequences"] == ["ANA", "ANN"]
    assert r["not_testable_at_capacity"] == ["l_5 in {N,S} (R_2(4) = 18) needs n >= 19"]


def test_naxa_at_capacity():
    for n in (4, 5):
        got = [s for s in attainable(3, n).attained if s.startswith("NA") and s[3] == "A"]
        assert set(got) <= {"NAAA", "NAAAN"}
    assert build_examples_F3()["NAAANA"].epr() == "NAAANA"
