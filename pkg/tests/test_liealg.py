import itertools

import pytest
from hypothesis import given, settings, strategies as st

from glg.corpus import NAMES, builtin
from glg.exactmath import GF, QQ, rref
from glg.liealg import LieAlgebra, bracket, center, check_lie_axioms, derived_ideal, is_graded_subspace

from conftest import FIELDS


def _random_vectors(alg):
    if alg.field.characteristic == 0:
        coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    else:
        coeff = st.integers(0, alg.field.characteristic - 1)
    return st.lists(coeff, min_size=alg.dim, max_size=alg.dim).map(tuple)


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("fname", list(FIELDS))
def test_corpus_axioms(name, fname):
    alg = builtin(name, FIELDS[fname]).algebra
    assert check_lie_axioms(alg).ok


@pytest.mark.parametrize("name", NAMES)
def test_random_pairs_alternating_and_jacobi(name):
    alg = builtin(name).algebra
    f = alg.field
    vec = _random_vectors(alg)

    @settings(max_examples=100, deadline=None)
    @given(vec, vec, vec)
    def check(u, v, w):
        assert not any(bracket(alg, u, u))
        assert bracket(alg, u, v) == tuple(f.neg(c) for c in bracket(alg, v, u))
        total = [f.zero] * alg.dim
        for a, b, c in ((u, v, w), (v, w, u), (w, u, v)):
            total = [f.add(x, y) for x, y in zip(total, bracket(alg, bracket(alg, a, b), c))]
        assert not any(total)

    check()


def test_from_brackets_fills_negation():
    alg = builtin("solvable4").algebra
    assert bracket(alg, alg.basis_vector("u"), alg.basis_vector("a")) == alg.vector({"u": -1})


def test_from_brackets_rejects_bad_input():
    with pytest.raises(ValueError):
        LieAlgebra.from_brackets(QQ, ["a", "b"], {("a", "a"): {"b": 1}})
    with pytest.raises(ValueError):
        LieAlgebra.from_brackets(QQ, ["a", "b"], {("a", "b"): {"b": 1}, ("b", "a"): {"b": -1}})
    with pytest.raises(ValueError):
        LieAlgebra(QQ, ("a", "a"), ())


def test_jacobi_failure_detected():
    alg = LieAlgebra.from_brackets(QQ, "a b c".split(), {
        ("a", "b"): {"c": 1}, ("b", "c"): {"a": 1}, ("a", "c"): {"a": 1}})
    report = check_lie_axioms(alg)
    assert not report.ok and report.jacobi == [(0, 1, 2)]
    assert "Jacobi" in report.messages()[0]


def test_remark3_center_and_derived():
    alg = builtin("remark3").algebra
    assert center(alg) == rref([alg.vector({"x": 1, "y": -1})], QQ)
    assert derived_ideal(alg) == alg.span("z")


def test_solvable4_derived():
    alg = builtin("solvable4").algebra
    assert derived_ideal(alg) == alg.span("u", "v", "w")
    assert center(alg).rank == 0


def test_semisimple_is_perfect():
    for f in (QQ, GF(3)):
        alg = builtin("semisimple6", f).algebra
        assert derived_ideal(alg) == alg.full()


def test_semisimple_gf2_still_lie():
    alg = builtin("semisimple6", GF(2)).algebra
    # -y = y in characteristic 2
    assert alg.structure[0][2] == alg.basis_vector("y")
    assert check_lie_axioms(alg).ok


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("fname", list(FIELDS))
def test_derived_ideal_is_graded(name, fname):
    ex = builtin(name, FIELDS[fname])
    assert is_graded_subspace(derived_ideal(ex.algebra), ex.grading)


def test_non_graded_subspace():
    ex = builtin("remark3")
    alg = ex.algebra
    s = rref([alg.vector({"x": 1, "y": 1})], QQ)
    assert not is_graded_subspace(s, ex.grading)
