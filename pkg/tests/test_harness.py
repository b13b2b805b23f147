import json

import pytest

import hhlie.harness as harness
from conftest import algebra
from hhlie.corpus import COMMUTATIVE_SQUARE, SEMISIMPLE, corpus
from hhlie.errors import InvalidLieAlgebra
from hhlie.fields import GF
from hhlie.generators import gen_kronecker, gen_nakayama, gen_rad_square_zero, gen_trunc_poly
from hhlie.hh1 import QuiverModel
from hhlie.harness import (
    Context, algebra_hash, check_dimension_formula, check_filtration_props, check_loop_theorem,
    check_simple_digraph_theorem, check_two_parallel_theorem, derived_length_bound, nilpotency_class_bound, run_all,
)

TRIANGLE = gen_rad_square_zero([(0, 1), (1, 2), (2, 0)])
STAR = gen_rad_square_zero([(0, 1), (0, 2), (0, 3)])


def test_bounds():
    assert [derived_length_bound(ll) for ll in range(2, 10)] == [1, 2, 2, 3, 3, 3, 3, 4]
    assert nilpotency_class_bound(5) == 3


def test_simple_digraph_check():
    r = check_simple_digraph_theorem(algebra(gen_nakayama(3, 5)))
    assert r.applicable and r.verdict == "pass"
    assert r.expected == {"nilpotency_class_of_derived_max": 3, "derived_length_max": 3}
    r = check_simple_digraph_theorem(algebra(TRIANGLE))
    assert r.applicable and r.verdict == "pass" and r.measured["abelian"]
    r = check_simple_digraph_theorem(algebra(gen_kronecker()))
    assert not r.applicable and r.verdict == "pass"


def test_two_parallel_check():
    r = check_two_parallel_theorem(algebra(gen_kronecker()))
    assert r.applicable and r.verdict == "pass"
    assert r.measured["sl2"] == "yes"
    assert r.measured["simple_probe"] == "probably_yes"
    r = check_two_parallel_theorem(algebra(gen_kronecker(GF(2))))
    assert r.verdict == "pass" and r.measured["solvable"]
    assert not check_two_parallel_theorem(algebra(gen_trunc_poly(4))).applicable


def test_two_parallel_odd_characteristic_warns():
    r = check_two_parallel_theorem(algebra(gen_kronecker(GF(3))))
    assert r.applicable and r.verdict == "warn"


def test_loop_check():
    r = check_loop_theorem(algebra(gen_trunc_poly(5, GF(5))))
    assert r.applicable and r.verdict == "pass"
    assert r.measured["witt"] == "yes"
    r = check_loop_theorem(algebra(gen_trunc_poly(4)))
    assert r.applicable and r.verdict == "pass"
    assert r.measured["simple_probe"] == "no"
    assert not check_loop_theorem(algebra(gen_kronecker())).applicable


def test_loop_check_p3_sl2():
    r = check_loop_theorem(algebra(gen_trunc_poly(3, GF(3))))
    assert r.verdict == "pass" and "yes" in (r.measured["sl2"], r.measured["witt"])


def test_filtration_check():
    r = check_filtration_props(algebra(gen_nakayama(3, 5)))
    assert r.verdict == "pass" and not r.measured["bracket_violations"]
    r = check_filtration_props(algebra(TRIANGLE))
    assert r.verdict == "pass" and r.measured["ker_phi_dim"] == 0 and r.measured["d_dims"]["2"] == 0
    r = check_filtration_props(algebra(gen_trunc_poly(4)))
    assert r.verdict == "pass" and "ker_phi_dim" not in r.measured


@pytest.mark.parametrize("text,dim", [(TRIANGLE, 1), (gen_rad_square_zero([(0, 1)]), 0), (STAR, 0)])
def test_dimension_formula(text, dim):
    r = check_dimension_formula(algebra(text))
    assert r.applicable and r.verdict == "pass"
    assert r.measured["hh1_dim"] == dim


def test_dimension_formula_needs_connected():
    r = check_dimension_formula(algebra(gen_rad_square_zero([(0, 1), (2, 3)])))
    assert not r.applicable


def test_semisimple_all_vacuous_pass():
    rep = run_all(algebra(SEMISIMPLE))
    assert rep.algebra["hh1_dim"] == 0
    assert rep.status == "pass"
    assert all(c.verdict == "pass" for c in rep.checks)


def test_commutative_square():
    rep = run_all(algebra(COMMUTATIVE_SQUARE))
    assert rep.status == "pass" and rep.algebra["hh1_dim"] == 0


@pytest.mark.parametrize("name,text", corpus())
def test_corpus_has_no_failures(name, text):
    rep = run_all(algebra(text))
    assert rep.status != "fail", [c.to_json() for c in rep.checks if c.verdict == "fail"]
    # only the odd-characteristic Kronecker algebras are allowed to warn
    if rep.status == "warn":
        assert name.startswith("kronecker")


def test_report_json_is_deterministic():
    A = algebra(gen_nakayama(3, 5))
    a, b = run_all(A, seed=4).dumps(), run_all(algebra(gen_nakayama(3, 5)), seed=4).dumps()
    assert a == b
    data = json.loads(a)
    assert data["seed"] == 4 and data["algebra"]["field"] == "Q"
    assert data["algebra"]["hash"] == algebra_hash(A)
    assert {c["id"] for c in data["checks"]} >= {"simple_digraph", "two_parallel", "loop", "filtration",
                                                "dimension_formula"}


def test_hash_ignores_header():
    a = algebra(gen_kronecker())
    b = algebra("# a comment\n" + "\n".join(gen_kronecker().splitlines()[1:]) + "\n")
    assert algebra_hash(a) == algebra_hash(b)
    assert algebra_hash(a) != algebra_hash(algebra(gen_kronecker(GF(3))))


def test_context_memoizes_checks():
    ctx = Context(algebra(gen_nakayama(2, 3)))
    assert ctx.run(check_filtration_props) is ctx.run(check_filtration_props)


# ---------------------------------------------------------------- fault injection

def test_injected_bound_fails(monkeypatch):
    monkeypatch.setattr(harness, "nilpotency_class_bound", lambda ll: 0)
    rep = run_all(algebra(gen_nakayama(3, 5)))
    assert rep.status == "fail"
    (rec,) = [c for c in rep.checks if c.id == "simple_digraph"]
    assert rec.verdict == "fail"


def test_injected_derived_length_fails(monkeypatch):
    monkeypatch.setattr(harness, "derived_length_bound", lambda ll: 0)
    assert run_all(algebra(gen_nakayama(2, 7))).status == "fail"


def test_corrupted_structure_constants_rejected_before_checks(monkeypatch):
    original = QuiverModel.bracket_coords

    def symmetric_bracket(self, F, G):
        # [x, y] = [y, x]: breaks antisymmetry
        a, b = sorted((F, G), key=repr)
        return original(self, a, b)

    monkeypatch.setattr(QuiverModel, "bracket_coords", symmetric_bracket)
    with pytest.raises(InvalidLieAlgebra):
        run_all(algebra(gen_kronecker()))
