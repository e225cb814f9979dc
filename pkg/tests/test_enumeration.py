import itertools

import pytest

from glg.corpus import builtin
from glg.enumeration import (
    CensusReport, all_subspaces, candidate, candidate_count, census, decompositions,
    enum_gradings, enum_lie_algebras,
)
from glg.exactmath import GF, QQ
from glg.grading import fusion_table
from glg.liealg import LieAlgebra, derived_ideal
from glg.realize import ABELIAN_SEMIGROUP, ModelWitness, Status, realize, verify_certificate
from glg.realize.certificates import RealizeOutcome


def naive_jacobi_count(p, n):
    """Count bracket choices satisfying Jacobi, straight from structure constants."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    vectors = list(itertools.product(range(p), repeat=n))
    count = 0
    for choice in itertools.product(vectors, repeat=len(pairs)):
        c = [[[0] * n for _ in range(n)] for _ in range(n)]
        for (i, j), v in zip(pairs, choice):
            for k in range(n):
                c[i][j][k] = v[k] % p
                c[j][i][k] = -v[k] % p
        ok = True
        for i, j, k in itertools.combinations(range(n), 3):
            for m in range(n):
                # [[e_i,e_j],e_k] + cyclic, coordinate m
                s = sum(c[i][j][l] * c[l][k][m] + c[j][k][l] * c[l][i][m] + c[k][i][l] * c[l][j][m]
                        for l in range(n))
                if s % p:
                    ok = False
        count += ok
    return count


def test_candidate_counts():
    assert candidate_count(GF(2), 3) == 512
    assert candidate_count(GF(2), 2) == 4
    assert candidate_count(GF(2), 1) == 1
    assert candidate_count(GF(3), 3) == 19683


def test_small_dimensions():
    assert len(list(enum_lie_algebras(GF(2), 1))) == 1
    # Jacobi is vacuous in dimension 2: every candidate is a Lie algebra
    assert len(list(enum_lie_algebras(GF(2), 2))) == candidate_count(GF(2), 2)
    assert len(list(enum_lie_algebras(GF(3), 2))) == candidate_count(GF(3), 2)


@pytest.mark.parametrize("p", [2, 3])
def test_jacobi_filter_matches_naive(p):
    assert len(list(enum_lie_algebras(GF(p), 3))) == naive_jacobi_count(p, 3)


def test_candidate_order_deterministic():
    first = candidate(GF(2), 3, 0)
    assert not any(v for row in first.structure for vec in row for v in vec)
    last = candidate(GF(2), 3, 511)
    assert last.structure[0][1] == (1, 1, 1)


def test_subspace_counts():
    subs = all_subspaces(GF(2), 3)
    assert [sum(1 for s in subs if s.rank == r) for r in (1, 2, 3)] == [7, 7, 1]
    subs = all_subspaces(GF(3), 3)
    assert [sum(1 for s in subs if s.rank == r) for r in (1, 2, 3)] == [13, 13, 1]


def test_decomposition_counts():
    dec = decompositions(GF(2), 3)
    shapes = sorted(tuple(sorted(s.rank for s in d)) for d in dec)
    assert len(dec) == 56
    assert shapes.count((1, 1, 1)) == 7 * 6 * 4 // 6 == 28
    assert shapes.count((1, 2)) == 7 * 4 == 28
    dec3 = decompositions(GF(3), 3)
    shapes = [tuple(sorted(s.rank for s in d)) for d in dec3]
    assert shapes.count((1, 1, 1)) == 13 * 12 * 9 // 6
    assert shapes.count((1, 2)) == 13 * 9
    assert len(decompositions(GF(2), 2)) == 3
    assert decompositions(GF(2), 1) == ()


def test_abelian_all_decompositions_valid():
    abelian = candidate(GF(2), 3, 0)
    gradings = list(enum_gradings(abelian))
    assert len(gradings) == 56
    assert gradings[0].labels[:2] == ("p1", "p2")


def test_remark3_basis_grading_found_mod_2():
    alg = builtin("remark3", GF(2)).algebra
    renamed = LieAlgebra(alg.field, ("e1", "e2", "e3"), alg.structure)
    basis = {renamed.span(n) for n in renamed.basis_names}
    assert any(g.subspaces() == basis for g in enum_gradings(renamed))


def test_limits():
    with pytest.raises(ValueError):
        list(enum_lie_algebras(GF(5), 3))
    with pytest.raises(ValueError):
        list(enum_lie_algebras(GF(2), 4))
    with pytest.raises(ValueError):
        census(QQ, 3)


def test_census_gf2_dim3():
    report = census(GF(2), 3)
    assert isinstance(report, CensusReport)
    assert report.algebras_total == 512
    assert report.decompositions_scanned == 56 * report.algebras_valid
    assert report.failures == []
    assert report.realizable_abelian_semigroup == report.gradings_checked
    assert report.certificates_verified == 2 * report.gradings_checked
    assert report.confirmed


def test_census_parallel_matches_serial():
    assert census(GF(2), 3, jobs=2) == census(GF(2), 3, jobs=1)


def test_census_small_dims():
    for dim in (1, 2):
        assert census(GF(2), dim).failures == []
    assert census(GF(2), 1).gradings_checked == 0


def test_constant_semigroup_case_present():
    """Some grading with dim L' = 1 is realized by the constant semigroup onto
    the label of the part holding L'."""
    found = False
    for alg in enum_lie_algebras(GF(2), 3):
        d = derived_ideal(alg)
        if d.rank != 1:
            continue
        for g in enum_gradings(alg):
            table = fusion_table(g)
            if not table.products:
                continue
            target = next(label for label, s in g.items if d.basis[0] in s)
            assert set(table.products.values()) == {target}
            k = table.labels.index(target)
            n = len(table.labels)
            model = ModelWitness(table.labels, ((k,) * n,) * n)
            outcome = RealizeOutcome(Status.REALIZABLE, ABELIAN_SEMIGROUP, witness=model)
            assert verify_certificate(table, outcome)
            found = True
    assert found


def test_pipeline_flags_solvable4():
    table = fusion_table(builtin("solvable4", GF(2)).grading)
    outcome = realize(table, ABELIAN_SEMIGROUP)
    assert outcome.status is Status.NOT_REALIZABLE
    assert verify_certificate(table, outcome)
