"""Realizability over an abelian group.

The universal group is Z^G modulo the lattice spanned by e_g + e_g' - e_g''
over the fusion relations.  Two labels collapse iff e_g - e_h lies in that
lattice.
"""

from __future__ import annotations

from ..exactmath import lattice_solve, smith_decomposition
from ..grading import FusionTable
from .certificates import (
    GROUP,
    CombinationCertificate,
    GroupWitness,
    RealizeOutcome,
    Status,
)


def relation_matrix(table: FusionTable):
    index = {g: i for i, g in enumerate(table.labels)}
    relations = table.relations(commutative=True)
    rows = []
    for rel in relations:
        row = [0] * len(table.labels)
        row[index[rel.left[0]]] += 1
        row[index[rel.left[1]]] += 1
        row[index[rel.right]] -= 1
        rows.append(row)
    return relations, rows


def realize_abelian_group(table: FusionTable) -> RealizeOutcome:
    labels = table.labels
    n = len(labels)
    relations, m = relation_matrix(table)
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[i], v[j] = 1, -1
            coeffs = lattice_solve(m, v) if m else None
            if coeffs is not None:
                terms = tuple((r, c) for r, c in zip(relations, coeffs) if c)
                cert = CombinationCertificate((labels[i], labels[j]), terms)
                return RealizeOutcome(Status.NOT_REALIZABLE, GROUP, certificate=cert)

    snf = smith_decomposition(m, n)
    rank = snf.rank
    assignment = {}
    for g, row in zip(labels, snf.V):
        torsion = [row[k] % d for k, d in enumerate(snf.invariant_factors) if d != 1]
        assignment[g] = tuple(row[rank:]) + tuple(torsion)
    witness = GroupWitness(snf.free_rank, snf.torsion, assignment)
    return RealizeOutcome(Status.REALIZABLE, GROUP, witness=witness)
