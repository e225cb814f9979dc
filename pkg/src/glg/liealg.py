"""Lie algebras given by structure constants on a named basis."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .exactmath import (
    DimensionMismatch,
    Field,
    Subspace,
    kernel,
    rref,
    subspace_intersection,
    unit_vector,
    zero_vector,
)


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants for every ordered basis pair.

    ``structure[i][j]`` is the coordinate vector of ``[e_i, e_j]``.  The
    constructor does not check the axioms; use :func:`check_lie_axioms` or
    build through :meth:`from_brackets`, which fills ``[e_j, e_i]`` by negation.
    """

    field: Field
    basis_names: tuple
    structure: tuple = dc_field(repr=False)

    def __post_init__(self):
        n = len(self.basis_names)
        if n == 0:
            raise ValueError("a Lie algebra needs at least one basis element")
        if len(set(self.basis_names)) != n:
            raise ValueError(f"basis names are not distinct: {self.basis_names}")
        if len(self.structure) != n or any(len(row) != n for row in self.structure):
            raise DimensionMismatch("structure table must be dim x dim")
        for row in self.structure:
            for vec in row:
                if len(vec) != n:
                    raise DimensionMismatch("bracket vectors must have length dim")

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise KeyError(f"unknown basis element {name!r}") from None

    def vector(self, coeffs: Mapping[str, object]) -> tuple:
        """Coordinate vector of a linear combination given as name -> coefficient."""
        v = list(zero_vector(self.field, self.dim))
        for name, c in coeffs.items():
            i = self.index(name)
            v[i] = self.field.add(v[i], self.field(c))
        return tuple(v)

    def basis_vector(self, name: str) -> tuple:
        return unit_vector(self.field, self.dim, self.index(name))

    def span(self, *names: str) -> Subspace:
        return rref([self.basis_vector(n) for n in names], self.field, self.dim)

    def span_vectors(self, vectors: Sequence[Sequence]) -> Subspace:
        return rref([tuple(self.field(x) for x in v) for v in vectors], self.field, self.dim)

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def format_vector(self, v) -> str:
        terms = []
        for c, name in zip(v, self.basis_names):
            if not c:
                continue
            if self.field.characteristic == 0 and c < 0:
                sign, c = "-", -c
            else:
                sign = "+"
            coeff = "" if c == 1 else f"{c}*"
            terms.append((sign, coeff + name))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out

    @classmethod
    def from_brackets(cls, field: Field, names: Sequence[str], brackets: Mapping) -> "LieAlgebra":
        """Build from ``{(x, y): {name: coeff}}`` declared for one orientation.

        ``[y, x]`` is filled in as ``-[x, y]``; undeclared brackets are zero.
        """
        names = tuple(names)
        n = len(names)
        idx = {name: i for i, name in enumerate(names)}
        table = [[zero_vector(field, n) for _ in range(n)] for _ in range(n)]
        seen = set()
        for (x, y), value in brackets.items():
            i, j = idx[x], idx[y]
            if i == j:
                raise ValueError(f"[{x},{x}] must be zero")
            if frozenset((i, j)) in seen:
                raise ValueError(f"bracket of {x} and {y} declared twice")
            seen.add(frozenset((i, j)))
            v = [field.zero] * n
            for name, c in value.items():
                v[idx[name]] = field.add(v[idx[name]], field(c))
            table[i][j] = tuple(v)
            table[j][i] = tuple(field.neg(c) for c in v)
        return cls(field, names, tuple(tuple(row) for row in table))

    def brackets(self):
        """Nonzero ``[e_i, e_j]`` for i < j as ``(i, j, vector)``."""
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if any(self.structure[i][j]):
                    yield i, j, self.structure[i][j]


@dataclass
class AxiomReport:
    alternating: list = dc_field(default_factory=list)  # i with [e_i, e_i] != 0
    skew: list = dc_field(default_factory=list)  # (i, j) with [e_i,e_j] != -[e_j,e_i]
    jacobi: list = dc_field(default_factory=list)  # (i, j, k)
    names: tuple = ()

    @property
    def ok(self) -> bool:
        return not (self.alternating or self.skew or self.jacobi)

    def __bool__(self):
        return self.ok

    def messages(self) -> list[str]:
        nm = self.names
        out = [f"[{nm[i]},{nm[i]}] is not zero" for i in self.alternating]
        out += [f"[{nm[i]},{nm[j]}] is not -[{nm[j]},{nm[i]}]" for i, j in self.skew]
        out += [f"Jacobi identity fails on ({nm[i]},{nm[j]},{nm[k]})" for i, j, k in self.jacobi]
        return out


def bracket(alg: LieAlgebra, v: Sequence, w: Sequence) -> tuple:
    n = alg.dim
    if len(v) != n or len(w) != n:
        raise DimensionMismatch(f"vectors must have length {n}")
    f = alg.field
    out = [f.zero] * n
    for i, a in enumerate(v):
        if not a:
            continue
        row = alg.structure[i]
        for j, b in enumerate(w):
            if not b:
                continue
            c = f.mul(a, b)
            for k, s in enumerate(row[j]):
                if s:
                    out[k] = f.add(out[k], f.mul(c, s))
    return tuple(out)


def check_lie_axioms(alg: LieAlgebra) -> AxiomReport:
    """Alternating, anticommutative and Jacobi on basis elements.

    ``[e_i, e_i] = 0`` is checked on its own since it does not follow from
    anticommutativity in characteristic 2.
    """
    f, n, s = alg.field, alg.dim, alg.structure
    report = AxiomReport(names=alg.basis_names)
    for i in range(n):
        if any(s[i][i]):
            report.alternating.append(i)
        for j in range(i + 1, n):
            if any(f.add(a, b) for a, b in zip(s[i][j], s[j][i])):
                report.skew.append((i, j))
    e = [unit_vector(f, n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = zero_vector(f, n)
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    t = bracket(alg, s[a][b], e[c])
                    total = tuple(f.add(x, y) for x, y in zip(total, t))
                if any(total):
                    report.jacobi.append((i, j, k))
    return report


def bracket_subspaces(alg: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != alg.dim or b.ambient_dim != alg.dim:
        raise DimensionMismatch("subspaces must live in the algebra")
    vectors = [bracket(alg, x, y) for x in a.basis for y in b.basis]
    return rref(vectors, alg.field, alg.dim)


def derived_ideal(alg: LieAlgebra) -> Subspace:
    vectors = [alg.structure[i][j] for i in range(alg.dim) for j in range(i + 1, alg.dim)]
    return rref(vectors, alg.field, alg.dim)


def center(alg: LieAlgebra) -> Subspace:
    """Kernel of v -> ([v, e_1], ..., [v, e_n])."""
    n, s = alg.dim, alg.structure
    # coordinate k of [v, e_j] is sum_i v_i s[i][j][k]
    rows = [[s[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    return kernel(rows, alg.field, n)


def is_graded_subspace(s: Subspace, grading) -> bool:
    """Whether ``s`` is the direct sum of its intersections with the parts."""
    if s.ambient_dim != grading.algebra.dim:
        raise DimensionMismatch("subspace and grading live in different dimensions")
    return s.rank == sum(subspace_intersection(s, part).rank for part in grading.parts.values())
