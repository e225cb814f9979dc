"""Gradings L = ⊕ L_g, their fusion tables, coarsenings and refinements."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .exactmath import Subspace, rref, subspace_contains
from .liealg import LieAlgebra, bracket

LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*(\+[A-Za-z][A-Za-z0-9_]*)*\Z")


class GradingError(ValueError):
    pass


class EmptyPart(GradingError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"part {label!r} is the zero subspace")


class NotDirectSum(GradingError):
    def __init__(self, total, rank):
        super().__init__(f"parts are not independent: dimensions add up to {total} but span rank {rank}")


class NotSpanning(GradingError):
    def __init__(self, rank, dim):
        super().__init__(f"parts span a subspace of dimension {rank}, not the whole algebra ({dim})")


class BracketNotHomogeneous(GradingError):
    def __init__(self, left, right, witness, text=None):
        self.left, self.right, self.witness = left, right, witness
        msg = f"[L_{left}, L_{right}] is not inside a single part"
        if text:
            msg += f" (offending bracket {text})"
        super().__init__(msg)


class InvalidPartition(GradingError):
    pass


class AlgebraMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Grading:
    """A validated decomposition; ``items`` keeps the declaration order."""

    algebra: LieAlgebra
    items: tuple  # ((label, Subspace), ...)

    @property
    def parts(self) -> dict:
        return dict(self.items)

    @property
    def labels(self) -> tuple:
        return tuple(label for label, _ in self.items)

    def __getitem__(self, label) -> Subspace:
        return self.parts[label]

    def __len__(self):
        return len(self.items)

    def subspaces(self) -> frozenset:
        return frozenset(s for _, s in self.items)

    def label_of(self, subspace: Subspace):
        for label, s in self.items:
            if s == subspace:
                return label
        raise KeyError(subspace)


@dataclass(frozen=True)
class Relation:
    """``left[0] * left[1] = right``."""

    left: tuple
    right: str

    def __str__(self):
        return f"{self.left[0]}*{self.left[1]}={self.right}"


class FusionTable:
    """Partial product (g, g') -> g'' induced by the nonzero brackets."""

    def __init__(self, labels: Sequence[str], products: Mapping):
        self.labels = tuple(labels)
        known = set(self.labels)
        table = {}
        for (a, b), c in products.items():
            if not {a, b, c} <= known:
                raise ValueError(f"product {a}*{b}={c} uses an unknown label")
            for key in ((a, b), (b, a)):
                if table.get(key, c) != c:
                    raise ValueError(f"conflicting products for {a}*{b}")
                table[key] = c
        order = {g: i for i, g in enumerate(self.labels)}
        self.products = dict(sorted(table.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])))

    def __eq__(self, other):
        return (isinstance(other, FusionTable) and self.labels == other.labels
                and self.products == other.products)

    def __hash__(self):
        return hash((self.labels, tuple(self.products.items())))

    def __repr__(self):
        return f"FusionTable({self.labels!r}, {self.products!r})"

    def __len__(self):
        return len(self.relations())

    def relations(self, commutative: bool = True) -> list[Relation]:
        order = {g: i for i, g in enumerate(self.labels)}
        out = []
        for (a, b), c in self.products.items():
            if commutative and order[a] > order[b]:
                continue
            out.append(Relation((a, b), c))
        return out

    def unordered(self) -> dict:
        """``{(g, g'): g''}`` with g not after g' in label order."""
        return {r.left: r.right for r in self.relations(commutative=True)}

    def format(self) -> str:
        rels = self.relations(commutative=True)
        if not rels:
            return "(empty)"
        return ", ".join(str(r) for r in rels)


def _bracket_vectors(alg: LieAlgebra, a: Subspace, b: Subspace):
    for x in a.basis:
        for y in b.basis:
            v = bracket(alg, x, y)
            if any(v):
                yield v


def _target(alg, items, i, j):
    """Label of the single part holding [L_i, L_j]; None when the bracket is zero."""
    gi, a = items[i]
    gj, b = items[j]
    target = None
    for v in _bracket_vectors(alg, a, b):
        if target is None:
            target = next((k for k, (_, s) in enumerate(items) if subspace_contains(s, v)), None)
            if target is None:
                raise BracketNotHomogeneous(gi, gj, v, alg.format_vector(v))
        elif not subspace_contains(items[target][1], v):
            raise BracketNotHomogeneous(gi, gj, v, alg.format_vector(v))
    return target


def validate_grading(alg: LieAlgebra, parts) -> Grading:
    """Check a labelled family of subspaces is a grading and return it.

    ``parts`` is a mapping or a sequence of ``(label, Subspace)`` pairs.
    A bracket ``[L_g, L_g']`` must vanish or lie in one part; since the parts
    are independent that part is unique.
    """
    items = list(parts.items()) if isinstance(parts, Mapping) else list(parts)
    labels = [label for label, _ in items]
    if len(set(labels)) != len(labels):
        raise GradingError(f"duplicate labels in {labels}")
    for label, s in items:
        if not isinstance(label, str) or not LABEL_RE.match(label):
            raise GradingError(f"bad label {label!r}")
        if s.ambient_dim != alg.dim or s.field != alg.field:
            raise GradingError(f"part {label!r} does not live in the algebra")
        if s.rank == 0:
            raise EmptyPart(label)
    total = sum(s.rank for _, s in items)
    rank = rref([row for _, s in items for row in s.basis], alg.field, alg.dim).rank
    if total != rank:
        raise NotDirectSum(total, rank)
    if rank != alg.dim:
        raise NotSpanning(rank, alg.dim)
    for i in range(len(items)):
        for j in range(i, len(items)):
            _target(alg, items, i, j)
    return Grading(alg, tuple(items))


def fusion_table(grading: Grading) -> FusionTable:
    items = grading.items
    alg = grading.algebra
    products = {}
    for i in range(len(items)):
        for j in range(i, len(items)):
            k = _target(alg, items, i, j)
            if k is not None:
                products[(items[i][0], items[j][0])] = items[k][0]
    return FusionTable(grading.labels, products)


def coarsen(grading: Grading, partition: Iterable[Sequence[str]], labels: Sequence[str] | None = None) -> Grading:
    """Merge blocks of parts; labels not mentioned in any block stay as they are.

    Merged labels default to the block's labels joined with ``+``.  The
    merged part sits where its first member sat.  The result is re-validated.
    """
    blocks = [list(b) for b in partition]
    if labels is not None and len(labels) != len(blocks):
        raise InvalidPartition("one label per block is required")
    known = set(grading.labels)
    used = set()
    for block in blocks:
        if not block:
            raise InvalidPartition("empty block")
        for g in block:
            if g not in known:
                raise InvalidPartition(f"unknown label {g!r}")
            if g in used:
                raise InvalidPartition(f"label {g!r} occurs in two blocks")
            used.add(g)
    owner = {}
    for b, block in enumerate(blocks):
        for g in block:
            owner[g] = b
    parts = grading.parts
    alg = grading.algebra
    items = []
    emitted = set()
    for g in grading.labels:
        if g not in owner:
            items.append((g, parts[g]))
            continue
        b = owner[g]
        if b in emitted:
            continue
        emitted.add(b)
        block = blocks[b]
        name = labels[b] if labels is not None else "+".join(block)
        space = rref([row for h in block for row in parts[h].basis], alg.field, alg.dim)
        items.append((name, space))
    return validate_grading(alg, items)


def is_refinement(fine: Grading, coarse: Grading) -> bool:
    if fine.algebra != coarse.algebra:
        raise AlgebraMismatch("gradings live on different algebras")
    coarse_parts = [s for _, s in coarse.items]
    return all(
        any(all(subspace_contains(c, row) for row in s.basis) for c in coarse_parts)
        for _, s in fine.items
    )
