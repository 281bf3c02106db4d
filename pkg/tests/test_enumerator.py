import json

import pytest

from eprseq.constructions import build_J_minus_kI
from eprseq.enumerator import (
    attainable,
    brute_force_attained,
    capacity,
    find_witness,
    shards,
    verify_catalog,
)
from eprseq.epr import epr
from eprseq.errors import CapacityError, UsageError
from eprseq.gf import field
from eprseq.pattern import builtin_catalog

from oracles import brute_epr


def test_gf2_order2_against_brute_force():
    report = attainable(2, 2)
    assert set(report.attained) == {"AA", "AN", "NA", "NN", "SA", "SN"}
    assert set(report.attained) == set(brute_force_attained(2, 2))


def test_gf3_order3_an():
    report = attainable(3, 3, "AN")
    assert report.attained == ["AAA", "AAN", "ANA", "ANN", "NAA", "NNN"]


def test_gf3_order3_contains_naa():
    report = attainable(3, 3)
    assert "NAA" in report.attained
    assert epr(build_J_minus_kI(3, 3, 1)) == "NAA"


@pytest.mark.parametrize("q, n", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (4, 2), (5, 2)])
def test_pruned_equals_brute_force(q, n):
    want = set(brute_force_attained(q, n))
    assert set(attainable(q, n).attained) == want
    assert set(attainable(q, n, prune=False).attained) == want


@pytest.mark.parametrize("q, n", [(2, 5), (3, 4), (4, 3), (5, 3), (7, 3), (9, 3), (8, 3)])
def test_pruned_equals_unpruned(q, n):
    a = attainable(q, n)
    b = attainable(q, n, prune=False)
    assert a.attained == b.attained
    assert a.visited < b.visited
    assert b.pruned == 0


@pytest.mark.parametrize("q, n", [(3, 4), (3, 5), (5, 3)])
def test_an_restriction_is_a_filter(q, n):
    full = attainable(q, n)
    restricted = attainable(q, n, "AN")
    assert restricted.attained == [s for s in full.attained if "S" not in s]
    assert restricted.visited <= full.visited


def test_witnesses_reverify():
    for q, n in [(2, 5), (3, 4), (9, 3)]:
        report = attainable(q, n)
        assert set(report.witnesses) == set(report.attained)
        for s, W in report.witnesses.items():
            assert brute_epr(W) == s
            assert W.spec is field(q)


def test_counts_cover_search_space():
    report = attainable(3, 4)
    assert report.visited + report.pruned == 3**10


def test_verify_catalog_examples():
    assert verify_catalog(2, 5, "f2").verified
    r = verify_catalog(3, 4, "f3")
    assert r.verified and r.alphabet == "AN"
    wrong = verify_catalog(3, 4, builtin_catalog("f2"))
    assert not wrong.verified and (wrong.missing or wrong.extra)


def test_verify_catalog_below_scope():
    r = verify_catalog(3, 2, "f3")
    assert r.verified and r.missing == [] and r.extra == []


def test_find_witness_examples():
    W = find_witness(3, 4, "AANN")
    assert W is not None and epr(W) == "AANN"
    assert find_witness(3, 4, "ANAN") is None
    W = find_witness(2, 3, "NAN")
    assert W is not None and epr(W) == "NAN"


def test_find_witness_is_deterministic():
    a = find_witness(3, 5, "NAAAN", shards_count=1)
    b = find_witness(3, 5, "NAAAN", shards_count=6)
    assert a == b and epr(a) == "NAAAN"


def test_report_independent_of_shard_count():
    a = attainable(3, 4, shards_count=1)
    b = attainable(3, 4, shards_count=5)
    assert a.to_json(witnesses=True) == b.to_json(witnesses=True)


def test_capacity_limits():
    assert capacity(2) == 7 and capacity(2, big=True) == 8
    assert capacity(3, "AN") == 8
    with pytest.raises(CapacityError, match="n <= 7"):
        attainable(2, 8)
    with pytest.raises(CapacityError):
        attainable(3, 0)
    with pytest.raises(CapacityError):
        attainable(257, 2)
    with pytest.raises(UsageError):
        attainable(3, 3, "AS")


def test_checkpoint_resume(tmp_path):
    path = str(tmp_path / "state.json")
    first = attainable(3, 4, checkpoint=path)
    state = json.load(open(path))
    assert len(state["done"]) == len(shards(field(3), 4))
    # drop half the shards and resume
    keep = dict(list(state["done"].items())[::2])
    json.dump({"meta": state["meta"], "done": keep}, open(path, "w"))
    again = attainable(3, 4, checkpoint=path)
    assert again.to_json(witnesses=True) == first.to_json(witnesses=True)
    with pytest.raises(UsageError, match="different run"):
        attainable(3, 3, checkpoint=path)


def test_report_json_schema():
    d = json.loads(verify_catalog(2, 3, "f2").to_json())
    assert set(d) == {"q", "n", "alphabet", "attained", "diffs", "visited", "pruned", "catalog", "verified"}
    assert set(d["diffs"]) == {"missing", "extra"}
