import pytest
from hypothesis import given, settings, strategies as st

from glg.corpus import NAMES, builtin, example_files
from glg.enumeration import enum_gradings, enum_lie_algebras
from glg.exactmath import GF, QQ
from glg.formats import (
    ParseError, format_expr, parse_algebra, parse_grading, serialize_algebra, serialize_grading,
)
from glg.grading import BracketNotHomogeneous, EmptyPart, NotDirectSum, NotSpanning

from conftest import FIELDS

SOLVABLE = "field Q\nbasis a u v w\nbracket a u = u\nbracket a v = w\nbracket a w = v\n"


def err(text):
    with pytest.raises(ParseError) as info:
        parse_algebra(text)
    return info.value


@pytest.mark.parametrize("name", NAMES)
def test_file_roundtrip(name):
    alg_text, grad_text = example_files(name)
    alg = parse_algebra(alg_text)
    grading = parse_grading(grad_text, alg)
    alg2 = parse_algebra(serialize_algebra(alg))
    assert alg2 == alg
    assert parse_grading(serialize_grading(grading), alg2) == grading


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("fname", list(FIELDS))
def test_builtin_roundtrip_all_fields(name, fname):
    ex = builtin(name, FIELDS[fname])
    alg = parse_algebra(serialize_algebra(ex.algebra))
    assert alg == ex.algebra
    assert parse_grading(serialize_grading(ex.grading), alg) == ex.grading


GF3_ALGEBRAS = list(enum_lie_algebras(GF(3), 3))
GF2_ALGEBRAS = list(enum_lie_algebras(GF(2), 3))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(GF3_ALGEBRAS))
def test_roundtrip_gf3_algebras(alg):
    assert parse_algebra(serialize_algebra(alg)) == alg


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GF2_ALGEBRAS))
def test_grading_roundtrip_gf2(alg):
    alg2 = parse_algebra(serialize_algebra(alg))
    for g in enum_gradings(alg):
        assert parse_grading(serialize_grading(g), alg2) == g


def test_expressions():
    alg = parse_algebra("field Q\nbasis a b c\nbracket a b = -2*a + 1/2*b - c\nbracket a c = 0\n")
    assert alg.structure[0][1] == (-2, QQ("1/2"), -1)
    assert format_expr(alg, alg.structure[0][1]) == "-2*a + 1/2*b - c"
    alg3 = parse_algebra("field GF 3\nbasis a b\nbracket a b = -a + 1/2*b\n")
    assert alg3.structure[0][1] == (2, 2)
    assert "bracket a b = 2*a + 2*b" in serialize_algebra(alg3)


def test_comments_and_blank_lines():
    text = "# header\n\nfield Q  # rationals\nbasis a u v w\n" + SOLVABLE.split("\n", 2)[2]
    assert parse_algebra(text) == parse_algebra(SOLVABLE)


def test_default_field_is_q():
    assert parse_algebra("basis a b\nbracket a b = b").field == QQ


def test_diagonal_bracket():
    e = err("field Q\nbasis a u\nbracket a a = u\n")
    assert e.line == 3 and "diagonal" in e.message


def test_anticommutativity_conflict():
    e = err("field Q\nbasis a u\nbracket a u = u\nbracket u a = u\n")
    assert e.line == 4 and "anticommutativity" in e.message


def test_both_orientations_rejected():
    e = err("field Q\nbasis a u\nbracket a u = u\nbracket u a = -u\n")
    assert "duplicate" in e.message
    e = err("field Q\nbasis a u\nbracket a u = u\nbracket a u = u\n")
    assert "duplicate" in e.message


def test_unknown_names_and_syntax():
    e = err("field Q\nbasis a b\nbracket a b = c\n")
    assert (e.line, e.column) == (3, 15)
    assert "unknown basis name" in err("field Q\nbasis a b\nbracket a z = a\n").message
    assert "'*'" in err("field Q\nbasis a b\nbracket a b = 2 a\n").message
    assert err("field Q\nbasis a b\nbracket a b = a +\n").line == 3
    assert "unexpected character" in err("field Q\nbasis a b\nbracket a b = a; b\n").message
    assert "keyword" in err("field Q\nbasis a b\nbrackets a b = a\n").message
    assert "bracket before basis" in err("field Q\nbracket a b = a\n").message
    assert "no basis" in err("field Q\n").message
    assert err("field R\n").line == 1
    assert "prime" in err("field GF 4\n").message
    assert "GF(2)" in err("field GF 2\nbasis a b\nbracket a b = 1/2*a\n").message


def test_jacobi_failure_reported_with_line():
    e = err("field Q\nbasis a b c\nbracket a b = c\nbracket b c = a\nbracket a c = a\n")
    assert e.line == 5 and "Jacobi" in e.message


def test_grading_parse():
    alg = parse_algebra(SOLVABLE)
    g = parse_grading("part alpha = a, a+u\npart beta = v\npart gamma = w\n", alg)
    assert g == builtin("solvable4").grading


def test_grading_errors():
    alg = parse_algebra(SOLVABLE)
    with pytest.raises(NotSpanning):
        parse_grading("part alpha = a, u\npart beta = v\n", alg)
    with pytest.raises(EmptyPart):
        parse_grading("part alpha = a, u, v, w\npart beta = 0\n", alg)
    with pytest.raises(NotDirectSum):
        parse_grading("part alpha = a, u\npart beta = v, u\npart gamma = w\n", alg)
    with pytest.raises(BracketNotHomogeneous):
        parse_grading("part alpha = a\npart beta = u, v\npart gamma = w\n", alg)
    with pytest.raises(ParseError) as info:
        parse_grading("part alpha = a, u\npart alpha = v, w\n", alg)
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_grading("part alpha = a, q\n", alg)
    with pytest.raises(ParseError):
        parse_grading("piece alpha = a\n", alg)
    with pytest.raises(ParseError):
        parse_grading("part 1x = a\n", alg)
    with pytest.raises(ParseError):
        parse_grading("# nothing\n", alg)
