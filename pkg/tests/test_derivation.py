from __future__ import annotations

import dataclasses
import json

from hypothesis import given
import hypothesis.strategies as st

from aisemiring.catalog import catalog
from aisemiring.checker import holds
from aisemiring.derivation import (Caps, DerivationTrace, check_trace, derive, dump_traces,
                                   load_traces, orient, rewrite_neighbors)
from aisemiring.terms import Statement, Term, parse_statement, parse_term

from conftest import terms

CUBE = parse_statement("x^3 = x^2")
BELOW = parse_statement("x <= x^2")
MIXED = parse_statement("x*y <= x^2 + y")


def test_cube_rewrites_to_square():
    assert parse_term("x^2") in rewrite_neighbors(parse_term("x^3"), [CUBE]).terms


def test_no_rules_no_neighbours():
    nb = rewrite_neighbors(parse_term("x"), [])
    assert not nb.terms and not nb.truncated


def test_inequality_read_right_to_left():
    nb = rewrite_neighbors(parse_term("x^2 + y^2"), [BELOW])
    assert parse_term("x^2 + y + y^2") in nb.terms


def test_orientation_symmetry():
    t = parse_term("x^2 + x^3 + y")
    forward = rewrite_neighbors(t, [CUBE]).terms.keys()
    mirrored = rewrite_neighbors(t, [Statement.identity(CUBE.rhs, CUBE.lhs)]).terms.keys()
    assert set(forward) == set(mirrored)
    assert len(orient([CUBE, Statement.identity(CUBE.rhs, CUBE.lhs)])) == 2


def test_derive_cube_bound():
    d = derive(parse_statement("x <= x^3"), [CUBE, BELOW], depth=4)
    assert d.found
    (tr,) = d.traces
    assert len(tr) <= 3
    assert check_trace(tr, [CUBE, BELOW]) == (True, None)


def test_bounded_failure_is_reported_not_claimed():
    d = derive(parse_statement("x <= y"), [BELOW], depth=2)
    assert not d.found
    assert "within depth" in d.parts[0].bound_report()


def test_mutated_trace_is_rejected():
    (tr,) = derive(parse_statement("x <= x^3"), [CUBE, BELOW], depth=4).traces
    bad = DerivationTrace(tr.goal, list(tr.terms), tr.steps)
    bad.terms[1] = parse_term("x + y")
    ok, index = check_trace(bad)
    assert not ok and index == 0
    assert check_trace(tr, [MIXED]) == (False, 0)


def test_trivial_goal_has_empty_trace():
    tr = DerivationTrace(parse_statement("x = x"), [parse_term("x")], [])
    assert check_trace(tr) == (True, None)
    d = derive(parse_statement("x <= x + y"), [BELOW], depth=1)
    assert d.found and len(d.traces[0]) == 0


def test_json_round_trip(tmp_path):
    d = derive(parse_statement("x <= x^3"), [CUBE, BELOW], depth=4)
    path = tmp_path / "trace.json"
    dump_traces(d, str(path))
    assert json.loads(path.read_text())["goal"] == "x <= x^3"
    (tr,) = load_traces(str(path))
    assert check_trace(tr, [CUBE, BELOW]) == (True, None)


def test_term_multipliers_flag_keeps_results_sound():
    caps = dataclasses.replace(Caps(), term_multipliers=True)
    t = parse_term("x*y^2 + z*y^2")
    both = parse_term("x*y + y*z + x*y^2 + y^2*z")
    assert both not in rewrite_neighbors(t, [BELOW]).terms
    nb = rewrite_neighbors(t, [BELOW], caps)
    assert both in nb.terms
    for u, step in nb.terms.items():
        assert step.source() == t and step.target() == u


@given(terms(max_len=2, max_words=3))
def test_rewriting_preserves_values_in_a_model(t):
    S = catalog("S4_634")  # satisfies x <= x^2 and x*y <= x^2 + y
    for u, step in rewrite_neighbors(t, [BELOW, MIXED]).terms.items():
        assert step.source() == t and step.target() == u
        assert holds(S, Statement.identity(t, u))
