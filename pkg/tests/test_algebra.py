from __future__ import annotations

import json

import pytest
from hypothesis import given
import hypothesis.strategies as st

from aisemiring.algebra import (AxiomError, TableShapeError, adjoin_zero, congruence_violation,
                                direct_product, dump_semiring, homomorphisms, idempotent_extension,
                                is_closed, isomorphic, isomorphism, load_semiring, natural_order,
                                quotient, restrict, subalgebras, subdirect_decomposition_check,
                                validate)
from aisemiring.catalog import NAMES, catalog
from aisemiring.census import enumerate_ai_semirings, permute


@pytest.mark.parametrize("name", NAMES)
def test_catalog_tables_validate(name):
    S = catalog(name)
    assert validate(S.add, S.mul, S.elements).add == S.add


def test_unknown_catalog_name():
    with pytest.raises(KeyError):
        catalog("S99")


def test_all_violations_reported():
    # a non-commutative "addition" and a product that is not distributive
    add = [[0, 0], [0, 1]]
    add[0][1] = 1
    with pytest.raises(AxiomError) as exc:
        validate(add, [[1, 0], [0, 0]])
    laws = {v.law for v in exc.value.violations}
    assert "additive commutativity" in laws
    assert len(laws) >= 2
    assert all(v.witness for v in exc.value.violations)


def test_non_idempotent_addition_names_the_law():
    with pytest.raises(AxiomError) as exc:
        validate([[1, 1], [1, 1]], [[0, 0], [0, 0]])
    assert any("idempot" in v.law for v in exc.value.violations)


@pytest.mark.parametrize("add", [[[0, 1]], [[0, 2], [1, 1]], "xx", [[0, True], [1, 1]]])
def test_shape_errors(add):
    with pytest.raises(TableShapeError):
        validate(add, [[0, 0], [0, 0]])


def test_natural_order_of_chain():
    S = catalog("S7")  # inf is the top
    assert all((a, 0) in natural_order(S) for a in range(3))
    assert S.top() == 0


def test_adjoin_zero_of_s53_is_s4_634():
    assert isomorphic(adjoin_zero(catalog("S53")), catalog("S4_634"))


def test_adjoin_zero_restricts_back():
    for name in ("S7", "S53", "S43"):
        S = catalog(name)
        Z = adjoin_zero(S)
        assert restrict(Z, range(S.order)).add == S.add
        assert Z.is_multiplicative_zero(S.order)


def test_idempotent_extension_of_trivial_is_the_lattice():
    T = idempotent_extension(catalog("trivial"))
    assert isomorphic(T, catalog("D2"))
    assert not isomorphic(T, catalog("M2"))


def test_idempotent_extension_needs_absorbing_top():
    with pytest.raises(ValueError, match="witness"):
        idempotent_extension(catalog("D2"))
    with pytest.raises(ValueError):
        idempotent_extension(adjoin_zero(catalog("trivial")))
    assert adjoin_zero(idempotent_extension(catalog("trivial"))).order == 3


def test_subdirect_decomposition_of_s4_545():
    S = catalog("S4_545")
    rep = subdirect_decomposition_check(S, [catalog("S43"), catalog("S53")],
                                        [[[0, 1], [2], [3]], [[0], [1], [2, 3]]])
    assert rep.ok, rep.reason


def test_non_congruence_gets_witness():
    S = catalog("S4_545")
    assert congruence_violation(S, [[0, 2], [1], [3]]) is not None
    rep = subdirect_decomposition_check(S, [catalog("S43")], [[[0, 2], [1], [3]]])
    assert not rep.ok and rep.witness is not None
    with pytest.raises(ValueError):
        quotient(S, [[0, 2], [1], [3]])


def test_subalgebras_closed_and_include_whole():
    S = catalog("S4_545")
    subs = subalgebras(S)
    assert tuple(range(S.order)) in subs
    assert all(is_closed(S, s) for s in subs)


def test_homomorphisms_include_identity_and_constant_top():
    S = catalog("S53")
    homs = homomorphisms(S, S)
    assert tuple(range(3)) in homs
    assert (0, 0, 0) in homs


def test_direct_product_projections():
    P = direct_product(catalog("S43"), catalog("S53"))
    assert P.order == 9
    assert len(homomorphisms(P, catalog("S43"))) >= 1


def test_json_round_trip(tmp_path):
    S = catalog("S4_634")
    path = tmp_path / "s.json"
    dump_semiring(S, path)
    T = load_semiring(path)
    assert (T.add, T.mul, T.elements) == (S.add, S.mul, S.elements)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"elements": ["a"], "add": [[0]]}))
    with pytest.raises(TableShapeError):
        load_semiring(bad)


ORDER3 = enumerate_ai_semirings(3)


@given(st.sampled_from(ORDER3), st.permutations(range(3)))
def test_isomorphism_finds_relabelings(rec, perm):
    S = rec.semiring
    T = validate(permute(S.add, perm), permute(S.mul, perm))
    iso = isomorphism(S, T)
    assert iso is not None
    assert all(T.add[iso[a]][iso[b]] == iso[S.add[a][b]] for a in range(3) for b in range(3))


@given(st.sampled_from(ORDER3))
def test_adjoin_zero_always_valid(rec):
    Z = adjoin_zero(rec.semiring)
    assert Z.order == 4 and Z.add[3][0] == 0
