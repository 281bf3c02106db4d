import numpy as np
import pytest

from eprseq.constructions import build_basic, build_examples_F3, build_J_minus_kI
from eprseq.epr import decode, encode, epr, epr_prefix, epr_python, pr, principal_minors, subset_eprs
from eprseq.errors import UsageError
from eprseq.gf import field
from eprseq.symmat import SymMatrix, random_symmetric

from oracles import all_symmetric, brute_epr, cofactor_det
from properties import inheritance_failures, inverse_failures


def test_epr_examples():
    assert epr(build_examples_F3()["NAAANA"]) == "NAAANA"
    assert epr(build_basic(5, 6, "identity")) == "AAAAAA"
    assert epr(build_J_minus_kI(3, 5, 1)) == "NAANA"


def test_pr_examples():
    assert pr(build_basic(3, 4, "zero")) == "10000"
    assert pr(build_basic(3, 4, "identity")) == "01111"
    # hollow, so r1 = 0; orders 2 and 3 are nonzero and det = 0
    J = build_J_minus_kI(3, 4, 1)
    assert epr(J) == brute_epr(J) == "NAAN"
    assert pr(J) == "10110"


def test_pr_consistent_with_epr():
    rng = np.random.default_rng(1)
    for _ in range(200):
        B = random_symmetric(field(3), int(rng.integers(1, 7)), rng)
        s, p = epr(B), pr(B)
        assert len(p) == B.n + 1
        assert p[0] == ("1" if (np.diag(B.entries) == 0).any() else "0")
        assert all((p[k] == "0") == (s[k - 1] == "N") for k in range(1, B.n + 1))


def test_epr_prefix():
    B = random_symmetric(field(5), 6, np.random.default_rng(2))
    assert epr_prefix(B, 6) == epr(B)
    assert all(epr_prefix(B, m) == epr(B)[:m] for m in range(1, 7))
    assert epr_prefix(build_basic(3, 4, "identity"), 1) == "A"
    assert epr_prefix(build_basic(3, 3, "all_ones"), 2) == "AN"
    for m in (0, 7):
        with pytest.raises(UsageError):
            epr_prefix(B, m)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_epr_matches_cofactor_oracle(q):
    F = field(q)
    rng = np.random.default_rng(q)
    for _ in range(40):
        B = random_symmetric(F, int(rng.integers(1, 7)), rng, zero_diagonal=bool(rng.integers(2)))
        want = brute_epr(B)
        assert epr(B) == want
        assert epr(B, census=True) == want
        assert epr_python(B) == want


def test_epr_exhaustive_gf2_order3():
    F = field(2)
    for a in all_symmetric(F, 3):
        B = SymMatrix(F, a)
        assert epr(B) == brute_epr(B)


def test_epr_beyond_table_fields():
    F = field(257)
    rng = np.random.default_rng(3)
    for _ in range(10):
        B = random_symmetric(F, 4, rng)
        assert epr(B) == brute_epr(B)


def test_principal_minors_table():
    F = field(3)
    B = random_symmetric(F, 5, np.random.default_rng(4))
    table = principal_minors(B)
    assert table[0] == 1
    for mask in range(1, 32):
        idx = [i for i in range(5) if mask >> i & 1]
        assert table[mask] == cofactor_det(F, B.entries[np.ix_(idx, idx)])
    letters = subset_eprs(B)
    assert "".join("NAS"[c] for c in letters[31]) == epr(B)
    assert (letters[1, 1:] == -1).all()


def test_encode_roundtrip():
    for s in ("N", "A", "S", "NAAANA", "SSA"):
        assert decode(encode(s), len(s)) == s
    assert encode("AN") == 1


@pytest.mark.parametrize("q", [2, 3])
def test_inverse_and_inheritance_exhaustive(q):
    F = field(q)
    for n in range(1, 4):
        for a in all_symmetric(F, n):
            B = SymMatrix(F, a)
            assert not inverse_failures(B)
            assert not inheritance_failures(B)


def test_nn_rule_on_random_matrices():
    rng = np.random.default_rng(5)
    for q in (2, 3, 5, 9):
        for _ in range(200):
            s = epr(random_symmetric(field(q), int(rng.integers(2, 8)), rng))
            k = s.find("NN")
            assert k < 0 or set(s[k:]) == {"N"}
