from __future__ import annotations

import json

import pytest
from hypothesis import given
import hypothesis.strategies as st

from aisemiring.algebra import adjoin_zero, validate
from aisemiring.catalog import catalog
from aisemiring.census import (NotInCensus, additive_class, canonical_form,
                               enumerate_ai_semirings, enumerate_semilattices, load_or_enumerate,
                               locate, oracle_count, permute, read_census, verify_census,
                               write_census)

ORDER3 = enumerate_ai_semirings(3)


@pytest.mark.parametrize("order,count", [(1, 1), (2, 1), (3, 2), (4, 5), (5, 15)])
def test_semilattice_counts(order, count):
    assert len(enumerate_semilattices(order)) == count


def test_order_cap():
    with pytest.raises(ValueError):
        enumerate_semilattices(6)


@pytest.mark.parametrize("order", [1, 2, 3])
def test_backtracker_matches_flat_scan(order):
    assert len(enumerate_ai_semirings(order)) == oracle_count(order)


def test_records_are_canonical_and_distinct():
    keys = [r.key for r in ORDER3]
    assert len(set(keys)) == len(keys) == 61
    assert all(canonical_form(r.semiring) == r.key for r in ORDER3)
    assert verify_census(ORDER3, 3) == []


def test_worker_count_does_not_change_output():
    serial = [r.key for r in enumerate_ai_semirings(3)]
    parallel = [r.key for r in enumerate_ai_semirings(3, workers=2)]
    assert serial == parallel


def test_chain_filter():
    chains = enumerate_ai_semirings(3, additive="chain")
    assert {r.key for r in chains} == {r.key for r in ORDER3 if r.additive_class == "chain"}
    assert additive_class(catalog("S53").add) == "chain"
    assert additive_class(catalog("S7").add).startswith("sl-")
    assert additive_class(catalog("trivial").add) == "chain"


@pytest.mark.parametrize("name", ["S7", "S53", "S43"])
def test_catalog_algebras_located(name):
    loc = locate(catalog(name), ORDER3)
    S = catalog(name)
    R = loc.record.semiring
    f = loc.isomorphism
    assert all(R.mul[f[a]][f[b]] == f[S.mul[a][b]] for a in range(3) for b in range(3))


def test_trivial_algebra_located():
    (rec,) = enumerate_ai_semirings(1)
    assert locate(catalog("trivial"), [rec]).record is rec


def test_locate_rejects_missing():
    with pytest.raises(NotInCensus):
        locate(catalog("S7"), [r for r in ORDER3 if r.key != canonical_form(catalog("S7"))])


def test_order4_zero_extension_and_catalog_coincide():
    recs = enumerate_ai_semirings(4, additive="chain")
    a = locate(adjoin_zero(catalog("S53")), recs).record
    assert a is locate(catalog("S4_634"), recs).record
    assert locate(catalog("S4_545"), recs).record.additive_class == "chain"


@given(st.sampled_from(ORDER3), st.permutations(range(3)))
def test_relabelled_tables_locate_to_their_class(rec, perm):
    S = validate(permute(rec.semiring.add, perm), permute(rec.semiring.mul, perm))
    assert locate(S, ORDER3).record.key == rec.key


def test_persistence_round_trip_and_tamper_detection(tmp_path):
    path = tmp_path / "c3.jsonl"
    records, how = load_or_enumerate(3, path)
    assert how == "computed" and len(records) == 61
    again, how = load_or_enumerate(3, path)
    assert how == "verified" and [r.key for r in again] == [r.key for r in records]
    first = json.loads(path.read_text().splitlines()[0])
    assert first["additive_class"] in ("chain",) or first["additive_class"].startswith("sl-")
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines + [lines[0]]) + "\n")
    with pytest.raises(ValueError, match="duplicate"):
        load_or_enumerate(3, path)
    records, how = load_or_enumerate(3, path, force=True)
    assert how == "computed" and len(read_census(path)) == 61


def test_stored_census_is_reread_exactly(tmp_path):
    path = tmp_path / "c2.jsonl"
    write_census(enumerate_ai_semirings(2), path)
    assert [r.key for r in read_census(path)] == [r.key for r in enumerate_ai_semirings(2)]
