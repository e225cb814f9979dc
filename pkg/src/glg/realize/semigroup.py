"""Realizability over an arbitrary (not necessarily commutative) semigroup.

The word problem here is undecidable in general, so the pipeline is:
abelian completion first (an abelian witness is a semigroup witness), then
a bounded breadth-first congruence closure on words looking for two labels
that meet, then a finite model search.  If all three are inconclusive the
answer is Unknown together with the bounds that were exhausted.
"""

from __future__ import annotations

from collections import Counter, deque

from ..grading import FusionTable, Relation
from .certificates import (
    SEMIGROUP,
    DerivationCertificate,
    ModelWitness,
    RealizeOutcome,
    Status,
    Step,
)
from .completion import realize_abelian_semigroup

DEFAULT_MAX_WORD_LEN = 8
DEFAULT_MAX_PAIRS = 100_000
DEFAULT_MAX_NODES = 200_000


def _neighbours(word, by_left, by_right, max_len):
    """All single rewrites of ``word`` as (new word, relation, reverse, position)."""
    for p in range(len(word) - 1):
        rel = by_left.get(word[p:p + 2])
        if rel is not None:
            yield word[:p] + (rel.right,) + word[p + 2:], rel, False, p
    if len(word) < max_len:
        for p, g in enumerate(word):
            for rel in by_right.get(g, ()):
                yield word[:p] + rel.left + word[p + 1:], rel, True, p


def _step(src, dst, rel, reverse, p) -> Step:
    width = 1 if reverse else 2
    return Step(dst, rel, reverse, src[:p], src[p + width:])


def _flip(start, steps):
    """The same chain walked backwards; returns (new start, steps)."""
    words = [start] + [s.word for s in steps]
    out = []
    for k in range(len(steps) - 1, -1, -1):
        s = steps[k]
        out.append(Step(words[k], s.rule, not s.reverse, s.left, s.right))
    return words[-1], out


def word_closure(table: FusionTable, max_word_len=DEFAULT_MAX_WORD_LEN, max_pairs=DEFAULT_MAX_PAIRS):
    """Multi-source breadth-first search from every label.

    Returns ``(certificate, exhausted)``: a certificate when two labels meet
    through words of length <= ``max_word_len``; ``exhausted`` tells whether
    the search stopped on ``max_pairs`` rather than running out of words.
    """
    relations = table.relations(commutative=False)
    by_left = {r.left: r for r in relations}
    by_right = {}
    for r in relations:
        by_right.setdefault(r.right, []).append(r)
    order = {g: i for i, g in enumerate(table.labels)}

    owner = {}
    parent = {}  # word -> (previous word, step) along the search tree
    queue = deque()
    for g in table.labels:
        owner[(g,)] = g
        parent[(g,)] = None
        queue.append((g,))

    def path(word):
        steps = []
        while parent[word] is not None:
            prev, step = parent[word]
            steps.append(step)
            word = prev
        return list(reversed(steps))

    while queue:
        w = queue.popleft()
        for nxt, rel, reverse, p in _neighbours(w, by_left, by_right, max_word_len):
            if nxt not in owner:
                if len(owner) >= max_pairs:
                    return None, True
                owner[nxt] = owner[w]
                parent[nxt] = (w, _step(w, nxt, rel, reverse, p))
                queue.append(nxt)
            elif owner[nxt] != owner[w]:
                g, h = owner[w], owner[nxt]
                steps = path(w) + [_step(w, nxt, rel, reverse, p)]
                _, back = _flip((h,), path(nxt))
                steps += back
                if order[g] > order[h]:
                    _, steps = _flip((g,), steps)
                    g, h = h, g
                return DerivationCertificate((g, h), tuple(steps), (), commutative=False), False
    return None, False


def find_model(table: FusionTable, size: int, commutative=False, max_nodes=DEFAULT_MAX_NODES):
    """Backtracking search for an associative table on ``size`` elements.

    Labels are elements ``0..len(labels)-1``; the products of the fusion
    table are pinned.  Returns ``(ModelWitness or None, exhausted)``.
    """
    labels = table.labels
    n = len(labels)
    if size < n:
        return None, False
    index = {g: i for i, g in enumerate(labels)}
    M = [[None] * size for _ in range(size)]
    for (a, b), c in table.products.items():
        M[index[a]][index[b]] = index[c]

    # values that occur as products are tried first
    freq = Counter(index[c] for c in table.products.values())
    values = sorted(range(size), key=lambda v: (-freq[v], v))

    def ok(i, j):
        v = M[i][j]
        for c in range(size):
            x, y = M[v][c], M[j][c]
            if x is not None and y is not None:
                z = M[i][y]
                if z is not None and z != x:
                    return False
        for a in range(size):
            x, y = M[a][i], M[a][v]
            if x is not None and y is not None:
                z = M[x][j]
                if z is not None and z != y:
                    return False
        for a in range(size):
            for b in range(size):
                if M[a][b] == i:
                    w = M[b][j]
                    if w is not None and M[a][w] is not None and M[a][w] != v:
                        return False
                if M[a][b] == j:
                    w = M[i][a]
                    if w is not None and M[w][b] is not None and M[w][b] != v:
                        return False
        return True

    for i in range(size):
        for j in range(size):
            if M[i][j] is not None and not ok(i, j):
                return None, False

    cells = [(i, j) for i in range(size) for j in range(size)
             if M[i][j] is None and (not commutative or i <= j)]
    nodes = 0
    exhausted = False

    def search(k):
        nonlocal nodes, exhausted
        if k == len(cells):
            return True
        i, j = cells[k]
        for v in values:
            nodes += 1
            if nodes > max_nodes:
                exhausted = True
                return False
            M[i][j] = v
            if commutative:
                M[j][i] = v
            if ok(i, j) and (not commutative or ok(j, i)) and search(k + 1):
                return True
            M[i][j] = None
            if commutative:
                M[j][i] = None
            if exhausted:
                return False
        return False

    if not search(0):
        return None, exhausted
    extras = []
    k = 1
    while len(extras) < size - n:
        name = f"_x{k}"
        if name not in index:
            extras.append(name)
        k += 1
    return ModelWitness(tuple(labels) + tuple(extras), tuple(tuple(row) for row in M)), False


def search_models(table, max_model_size, commutative=False, max_nodes=DEFAULT_MAX_NODES):
    n = len(table.labels)
    exhausted = False
    for size in range(n, max_model_size + 1):
        model, ex = find_model(table, size, commutative, max_nodes)
        if model is not None:
            return model, False
        exhausted = exhausted or ex
    return None, exhausted


def realize_semigroup(table: FusionTable, max_word_len=DEFAULT_MAX_WORD_LEN,
                      max_pairs=DEFAULT_MAX_PAIRS, max_model_size=None,
                      max_nodes=DEFAULT_MAX_NODES) -> RealizeOutcome:
    if max_model_size is None:
        max_model_size = len(table.labels) + 2
    abelian = realize_abelian_semigroup(table)
    if abelian.realizable:
        # prefer a finite table over the (usually infinite) quotient as witness
        model, _ = search_models(table, max_model_size, max_nodes=min(max_nodes, 20_000))
        return RealizeOutcome(Status.REALIZABLE, SEMIGROUP, witness=model or abelian.witness)

    cert, pairs_exhausted = word_closure(table, max_word_len, max_pairs)
    if cert is not None:
        return RealizeOutcome(Status.NOT_REALIZABLE, SEMIGROUP, certificate=cert)

    model, nodes_exhausted = search_models(table, max_model_size, max_nodes=max_nodes)
    if model is not None:
        return RealizeOutcome(Status.REALIZABLE, SEMIGROUP, witness=model)

    bounds = {
        "max_word_len": max_word_len,
        "max_pairs": max_pairs,
        "pairs_exhausted": pairs_exhausted,
        "max_model_size": max_model_size,
        "max_nodes": max_nodes,
        "nodes_exhausted": nodes_exhausted,
    }
    return RealizeOutcome(Status.UNKNOWN, SEMIGROUP, bounds=bounds)
