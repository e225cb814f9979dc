import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from glg.exactmath import (
    GF, QQ, Field, Subspace, hermite_decomposition, int_det, int_matmul, kernel,
    lattice_contains, lattice_solve, rref, smith_decomposition, subspace_contains,
    subspace_intersection, subspace_sum,
)

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4, entries=small):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_field_basics():
    assert QQ("3/6") == Fraction(1, 2)
    assert GF(5)("1/2") == 3
    assert GF(2).neg(1) == 1
    assert GF(7).inv(3) * 3 % 7 == 1
    with pytest.raises(ZeroDivisionError):
        GF(3)("1/3")
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(QQ.zero)


def test_rref_canonical():
    a = rref([[1, 2, 3], [2, 4, 7]], QQ)
    b = rref([[0, 0, 1], [3, 6, 0]], QQ)
    assert a == b
    assert a.basis == ((1, 2, 0), (0, 0, 1))
    assert a.pivots == (0, 2)


def test_gf2_span():
    s = rref([[1, 1, 0], [0, 1, 1], [1, 0, 1]], GF(2))
    assert s.rank == 2
    assert (1, 0, 1) in s and (1, 0, 0) not in s


@settings(max_examples=60)
@given(matrices(entries=st.integers(-3, 3)))
def test_kernel_oracle_sympy(m):
    ncols = len(m[0])
    k = kernel(m, QQ, ncols)
    ref = sympy.Matrix(m).nullspace()
    assert k.rank == len(ref)
    for v in k.basis:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


@settings(max_examples=60)
@given(matrices(max_rows=3, max_cols=3, entries=st.integers(0, 2)),
       matrices(max_rows=3, max_cols=3, entries=st.integers(0, 2)))
def test_intersection_brute_force_gf3(a, b):
    f = GF(3)
    n = 3
    a = [r + [0] * (n - len(r)) for r in a]
    b = [r + [0] * (n - len(r)) for r in b]
    sa, sb = rref(a, f, n), rref(b, f, n)
    inter = subspace_intersection(sa, sb)
    brute = [v for v in itertools.product(range(3), repeat=n) if v in sa and v in sb]
    assert len(brute) == 3 ** inter.rank
    assert all(v in inter for v in brute)
    assert subspace_sum(sa, sb).rank == sa.rank + sb.rank - inter.rank


def test_contains_rejects_wrong_length():
    s = rref([[1, 0]], QQ)
    with pytest.raises(ValueError):
        subspace_contains(s, (1, 0, 0))


@settings(max_examples=80)
@given(matrices())
def test_hermite_transform(m):
    h, t = hermite_decomposition(m)
    assert int_matmul(t, m)[:len(h)] == h
    assert abs(int_det(t)) == 1
    for k, row in enumerate(h):
        piv = next(j for j, x in enumerate(row) if x)
        assert row[piv] > 0
        for above in h[:k]:
            assert 0 <= above[piv] < row[piv]


@settings(max_examples=80)
@given(matrices(max_rows=3, max_cols=3, entries=st.integers(-4, 4)),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_lattice_membership_brute_force(m, v):
    ncols = len(m[0])
    v = v[:ncols]
    got = lattice_solve(m, v)
    if got is not None:
        assert [sum(c * row[j] for c, row in zip(got, m)) for j in range(ncols)] == v
    # a bounded search can only confirm membership, never refute it
    rng = range(-6, 7)
    found = any(
        [sum(c * row[j] for c, row in zip(cs, m)) for j in range(ncols)] == v
        for cs in itertools.product(rng, repeat=len(m))
    )
    if found:
        assert got is not None
    assert lattice_contains(m, v) == (got is not None)


def _sympy_invariants(m):
    from sympy.matrices.normalforms import smith_normal_form
    d = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    return sorted(abs(int(d[i, i])) for i in range(min(d.shape)) if d[i, i] != 0)


@settings(max_examples=80)
@given(matrices(max_rows=4, max_cols=4))
def test_smith_against_sympy(m):
    ncols = len(m[0])
    s = smith_decomposition(m, ncols)
    assert sorted(s.invariant_factors) == _sympy_invariants(m)
    assert int_matmul(int_matmul(s.U, m), s.V) == [list(r) for r in s.diagonal]
    for a, b in zip(s.invariant_factors, s.invariant_factors[1:]):
        assert b % a == 0
    assert abs(int_det(s.U)) == 1 and abs(int_det(s.V)) == 1


def test_smith_examples():
    s = smith_decomposition([[2, 0], [0, 3]])
    assert s.invariant_factors == (1, 6)
    s = smith_decomposition([[1, 1, -1]], 3)
    assert s.free_rank == 2 and s.torsion == ()
    s = smith_decomposition([], 2)
    assert s.free_rank == 2


def test_subspace_constructors():
    assert Subspace.zero(QQ, 3).rank == 0
    assert Subspace.full(GF(2), 3).rank == 3
    assert Subspace.span(QQ, 2, [[1, 1], [2, 2]]).rank == 1
