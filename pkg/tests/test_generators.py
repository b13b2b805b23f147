import pytest

from conftest import algebra
from hhlie.algebra import quiver_class
from hhlie.errors import BadField
from hhlie.fields import GF, QQ
from hhlie.generators import (
    GENERATORS, gen_kronecker, gen_nakayama, gen_rad_square_zero, gen_trunc_poly, gen_witt_lie, parse_edge_list,
)
from hhlie.hh1 import hh1, hh1_generic
from hhlie.lie import recognize_sl2, recognize_witt, series_report
from hhlie.quiver import emit_presentation, parse_presentation


def test_kronecker_text():
    text = gen_kronecker()
    assert text.splitlines() == ["# kronecker", "field Q", "vertices 2", "arrow a 0 1", "arrow b 0 1", "truncate 2"]


def test_kronecker_properties():
    A = algebra(gen_kronecker())
    assert A.dim == 4
    qc = quiver_class(A)
    assert qc.max_parallel == 2 and not qc.has_loops
    assert series_report(hh1(algebra(gen_kronecker(GF(2)))).lie).solvable


def test_trunc_poly_examples():
    for p in (3, 5, 7):
        assert hh1(algebra(gen_trunc_poly(p, GF(p)))).dim == p
    assert series_report(hh1(algebra(gen_trunc_poly(4))).lie).solvable
    assert hh1(algebra(gen_trunc_poly(2))).dim == 1
    with pytest.raises(ValueError):
        gen_trunc_poly(1)


def test_nakayama_examples():
    A = algebra(gen_nakayama(2, 3))
    assert A.dim == 6 and A.loewy_length == 3
    for e, L in [(2, 4), (3, 3), (3, 5), (4, 6)]:
        A = algebra(gen_nakayama(e, L))
        assert A.dim == e * L
        assert quiver_class(A).is_simple_digraph
        assert series_report(hh1(A).lie).solvable
    assert gen_nakayama(1, 5) == gen_trunc_poly(5)
    with pytest.raises(ValueError):
        gen_nakayama(0, 3)
    with pytest.raises(ValueError):
        gen_nakayama(2, 1)


def test_nakayama_arrow_orientation():
    p = parse_presentation(gen_nakayama(3, 4))
    assert [(a.name, a.source, a.target) for a in p.quiver.arrows] == [("a", 0, 1), ("b", 1, 2), ("c", 2, 0)]


@pytest.mark.parametrize("edges,expected", [
    ([(0, 1), (1, 2), (2, 0)], 1),
    ([(0, 1)], 0),
    ([(0, 1), (1, 2), (2, 3), (3, 0)], 1),
    ([(0, 1), (0, 2), (0, 3)], 0),
    ([(0, 1), (1, 0), (1, 2), (2, 1)], 2),
])
def test_rad_square_zero_formula(edges, expected):
    A = algebra(gen_rad_square_zero(edges))
    H = hh1(A)
    assert H.dim == expected == len(edges) - A.num_simples + 1
    assert series_report(H.lie).abelian
    assert hh1_generic(A)[0] == expected


def test_rad_square_zero_rejects():
    with pytest.raises(ValueError):
        gen_rad_square_zero([(0, 0)])
    with pytest.raises(ValueError):
        gen_rad_square_zero([(0, 1), (0, 1)])
    with pytest.raises(ValueError):
        gen_rad_square_zero([(0, 3)], num_vertices=2)


def test_rad_square_zero_isolated_vertices():
    A = algebra(gen_rad_square_zero([(0, 1)], num_vertices=3))
    assert A.num_simples == 3


def test_parse_edge_list():
    assert parse_edge_list("0-1,1-2 2-0") == [(0, 1), (1, 2), (2, 0)]
    with pytest.raises(ValueError):
        parse_edge_list("0->1")


@pytest.mark.parametrize("text", [gen_kronecker(), gen_kronecker(GF(3)), gen_trunc_poly(6), gen_nakayama(4, 9, GF(5)),
                                  gen_rad_square_zero([(0, 1), (0, 2), (0, 3)])])
def test_round_trip_byte_identical(text):
    assert emit_presentation(parse_presentation(text)) == text


def test_registry():
    assert set(GENERATORS) == {"kronecker", "trunc-poly", "nakayama", "rad-sq-zero"}


# ---------------------------------------------------------------- Witt algebra

@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_witt_validates(p):
    W = gen_witt_lie(p)
    assert W.dim == p and W.field is GF(p)


def test_witt_table_p5():
    W = gen_witt_lie(5)
    F = GF(5)

    def f(i):
        return W.basis_vector(i + 1)

    assert W.bracket(f(-1), f(1)) == tuple(F(2) * a for a in f(0))
    for i in range(-1, 4):
        assert W.bracket(f(0), f(i)) == tuple(F(i) * a for a in f(i))
    for t in range(0, 4):
        assert W.bracket(f(-1), f(t)) == tuple(F(t + 1) * a for a in f(t - 1))


def test_witt_p3_is_sl2():
    assert recognize_sl2(gen_witt_lie(3)).verdict == "yes"


def test_witt_rejects_bad_p():
    with pytest.raises(BadField):
        gen_witt_lie(2)
    with pytest.raises(BadField):
        gen_witt_lie(9)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_trunc_poly_hh1_is_witt(p):
    H = hh1(algebra(gen_trunc_poly(p, GF(p))))
    assert recognize_witt(H.lie).verdict == "yes"


def test_default_field_is_rationals():
    assert parse_presentation(gen_kronecker()).field is QQ
