from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hhlie.errors import BadField, InvalidRelation, ParseError
from hhlie.fields import GF, QQ
from hhlie.generators import gen_kronecker, gen_nakayama, gen_rad_square_zero, gen_trunc_poly
from hhlie.quiver import Path, emit_presentation, parse_presentation

KRONECKER = """\
field Q
vertices 2
arrow a 0 1
arrow b 0 1
truncate 2
"""


def test_kronecker_parses_without_relations():
    p = parse_presentation(KRONECKER)
    assert p.field is QQ
    assert p.quiver.num_vertices == 2
    assert [a.name for a in p.quiver.arrows] == ["a", "b"]
    assert p.truncate == 2
    assert p.relations == ()


def test_length_one_relation_rejected():
    text = "field Q\nvertices 1\narrow a 0 0\ntruncate 3\nrel 1 a\n"
    with pytest.raises(InvalidRelation) as info:
        parse_presentation(text)
    assert info.value.line == 5


def test_relation_too_long_rejected():
    text = "field Q\nvertices 1\narrow x 0 0\ntruncate 3\nrel 1 x*x*x\n"
    with pytest.raises(InvalidRelation):
        parse_presentation(text)


def test_non_composable_relation_rejected():
    text = "field Q\nvertices 3\narrow a 0 1\narrow b 2 0\ntruncate 3\nrel 1 a*b\n"
    with pytest.raises(InvalidRelation):
        parse_presentation(text)


def test_composite_modulus_rejected():
    with pytest.raises(BadField):
        parse_presentation("field F 6\nvertices 1\ntruncate 2\n")


@pytest.mark.parametrize("text,line", [
    ("field Q\nvertices 1\nbogus 3\ntruncate 2\n", 3),
    ("field Q\nvertices 2\narrow a 0 5\ntruncate 2\n", 3),
    ("field Q\nvertices 2\narrow a 0 1\narrow a 1 0\ntruncate 2\n", 4),
    ("field Q\nvertices 1\narrow x 0 0\ntruncate 3\nrel 1 y*y\n", 5),
    ("field Q\nvertices 1\narrow x 0 0\ntruncate 3\nrel x*x\n", 5),
    ("field Q\nvertices 1\narrow x 0 0\ntruncate 3\nrel 1/0 x*x\n", 5),
    ("field Q\nvertices one\n", 2),
    ("field R\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_presentation(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


@pytest.mark.parametrize("text", ["vertices 1\ntruncate 2\n", "field Q\ntruncate 2\n", "field Q\nvertices 1\n"])
def test_missing_directive(text):
    with pytest.raises(ParseError):
        parse_presentation(text)


def test_comments_and_header():
    p = parse_presentation("# my algebra\n# second\nfield Q  # trailing\nvertices 1\n\narrow x 0 0\ntruncate 3\n")
    assert p.header == ("my algebra", "second")
    assert p.quiver.arrows[0].is_loop


def test_relation_coefficients_combine():
    p = parse_presentation("field F 3\nvertices 1\narrow x 0 0\narrow y 0 0\ntruncate 3\n"
                           "rel 1 x*y 2 x*y -1/2 y*x\n")
    (rel,) = p.relation_vectors()
    F = GF(3)
    xy, yx = p.quiver.path(["x", "y"]), p.quiver.path(["y", "x"])
    assert rel == {yx: F(Fraction(-1, 2))}
    assert xy not in rel


def test_undefined_coefficient_mod_p():
    with pytest.raises(InvalidRelation):
        parse_presentation("field F 2\nvertices 1\narrow x 0 0\ntruncate 3\nrel 1/2 x*x\n")


def test_path_composition_left_to_right():
    p = parse_presentation(gen_nakayama(3, 3))
    a, b = p.quiver.arrow("a"), p.quiver.arrow("b")
    ab = a.path().then(b.path())
    assert ab == Path(0, 2, ("a", "b"))
    assert b.path().then(a.path()) is None
    assert str(ab) == "a*b"


def test_paths_of_length():
    q = parse_presentation(KRONECKER).quiver
    assert len(q.paths_of_length(0)) == 2
    assert len(q.paths_of_length(1)) == 2
    assert q.paths_of_length(2) == []
    assert q.arrow_counts() == [[0, 2], [0, 0]]


ROUND_TRIP = [
    gen_kronecker(),
    gen_kronecker(GF(5)),
    gen_trunc_poly(5, GF(5)),
    gen_nakayama(3, 5),
    gen_rad_square_zero([(0, 1), (1, 2), (2, 0)]),
    "field Q\nvertices 4\narrow a 0 1\narrow b 0 2\narrow c 1 3\narrow d 2 3\ntruncate 3\nrel 1 a*c -1 b*d\n",
    "field Q\nvertices 1\narrow x 0 0\narrow y 0 0\ntruncate 4\nrel 1 x*y -1 y*x\nrel 3/2 x*x 1 y*y\n",
]


@pytest.mark.parametrize("text", ROUND_TRIP)
def test_round_trip(text):
    p = parse_presentation(text)
    again = parse_presentation(emit_presentation(p))
    assert again == p
    assert emit_presentation(again) == emit_presentation(p)


@given(st.integers(1, 4), st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=6),
       st.integers(2, 5), st.sampled_from([QQ, GF(2), GF(7)]))
def test_round_trip_random_quivers(n, edges, N, F):
    lines = [f"field {F.descriptor()}", f"vertices {n}"]
    for k, (s, t) in enumerate(edges):
        lines.append(f"arrow a{k} {s % n} {t % n}")
    lines.append(f"truncate {N}")
    p = parse_presentation("\n".join(lines) + "\n")
    assert parse_presentation(emit_presentation(p)) == p


def test_with_field_and_truncation():
    p = parse_presentation(gen_trunc_poly(4))
    assert p.with_field(GF(3)).field is GF(3)
    assert p.with_truncation(2).truncate == 2
    q = parse_presentation("field Q\nvertices 1\narrow x 0 0\ntruncate 4\nrel 1 x*x 1 x*x*x\n")
    assert q.with_truncation(3).relations == ((q.relations[0][0],),)
