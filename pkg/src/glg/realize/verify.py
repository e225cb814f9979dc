"""Independent replay of realizability certificates and witnesses.

Nothing here calls into the deciders.  Derivations are replayed against the
fusion table's products and the congruence rules of a semigroup; witnesses
are checked exhaustively.  Only data types are shared.
"""

from __future__ import annotations

from collections import Counter
from itertools import product

from ..grading import FusionTable, Relation
from .certificates import (
    ABELIAN_SEMIGROUP,
    GROUP,
    MODES,
    SEMIGROUP,
    CombinationCertificate,
    DerivationCertificate,
    GroupWitness,
    MalformedCertificate,
    ModelWitness,
    QuotientWitness,
    RealizeOutcome,
    Status,
)


def _is_relation(table: FusionTable, rel: Relation) -> bool:
    return (len(rel.left) == 2 and table.products.get(tuple(rel.left)) == rel.right)


def _replay_chain(table, start, steps, lemmas, commutative) -> tuple | None:
    """Replay ``steps`` from ``start``; returns the final word or None."""
    cur = tuple(start)
    for step in steps:
        if isinstance(step.rule, Relation):
            if not _is_relation(table, step.rule):
                return None
            lhs, rhs = tuple(step.rule.left), (step.rule.right,)
        elif isinstance(step.rule, int) and not isinstance(step.rule, bool):
            if not 0 <= step.rule < len(lemmas):
                return None
            lhs, rhs = lemmas[step.rule]
        else:
            return None
        src, dst = (rhs, lhs) if step.reverse else (lhs, rhs)
        if commutative:
            if step.right:
                return None
            ctx = Counter(step.left)
            if Counter(cur) != ctx + Counter(src) or Counter(step.word) != ctx + Counter(dst):
                return None
        else:
            if cur != tuple(step.left) + src + tuple(step.right):
                return None
            if tuple(step.word) != tuple(step.left) + dst + tuple(step.right):
                return None
        cur = tuple(step.word)
    return cur


def _same(a, b, commutative) -> bool:
    return Counter(a) == Counter(b) if commutative else tuple(a) == tuple(b)


def verify_derivation(table: FusionTable, cert: DerivationCertificate) -> bool:
    g, h = cert.pair
    if g == h or g not in table.labels or h not in table.labels:
        return False
    comm = cert.commutative
    proven = []
    for lem in cert.lemmas:
        if not lem.lhs or not lem.rhs:
            return False
        end = _replay_chain(table, lem.lhs, lem.steps, proven, comm)
        if end is None or not _same(end, lem.rhs, comm):
            return False
        proven.append((tuple(lem.lhs), tuple(lem.rhs)))
    end = _replay_chain(table, (g,), cert.steps, proven, comm)
    return end is not None and _same(end, (h,), comm)


def verify_combination(table: FusionTable, cert: CombinationCertificate) -> bool:
    g, h = cert.pair
    if g == h or g not in table.labels or h not in table.labels:
        return False
    total = Counter()
    for rel, c in cert.terms:
        if not _is_relation(table, rel) or not isinstance(c, int):
            return False
        total[rel.left[0]] += c
        total[rel.left[1]] += c
        total[rel.right] -= c
    target = Counter({g: 1})
    target[h] -= 1
    return all(total[k] == target[k] for k in set(total) | set(target))


def verify_group_witness(table: FusionTable, w: GroupWitness) -> bool:
    r, tors = w.free_rank, tuple(w.torsion)
    if r < 0 or any(d < 2 for d in tors):
        return False
    size = r + len(tors)
    if set(w.assignment) != set(table.labels):
        return False
    for v in w.assignment.values():
        if len(v) != size or any(not 0 <= x < d for x, d in zip(v[r:], tors)):
            return False

    def add(u, v):
        return tuple(u[:r][k] + v[:r][k] for k in range(r)) + tuple(
            (a + b) % d for a, b, d in zip(u[r:], v[r:], tors))

    a = w.assignment
    for (x, y), z in table.products.items():
        if add(a[x], a[y]) != tuple(a[z]):
            return False
    return len({tuple(v) for v in a.values()}) == len(a)


def verify_model(table: FusionTable, w: ModelWitness, commutative: bool) -> bool:
    carrier = list(w.carrier)
    s = len(carrier)
    if len(set(carrier)) != s or not set(table.labels) <= set(carrier):
        return False
    t = w.table
    if len(t) != s or any(len(row) != s for row in t):
        return False
    if any(not (isinstance(x, int) and 0 <= x < s) for row in t for x in row):
        return False
    for a, b, c in product(range(s), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            return False
    if commutative and any(t[a][b] != t[b][a] for a in range(s) for b in range(s)):
        return False
    idx = {c: i for i, c in enumerate(carrier)}
    return all(t[idx[x]][idx[y]] == idx[z] for (x, y), z in table.products.items())


# -- quotient witnesses ------------------------------------------------------

def _exps(word, labels):
    c = Counter(word)
    if not set(c) <= set(labels):
        raise KeyError
    return tuple(c[g] for g in labels)


def _heavier(a, b) -> bool:
    """Graded-lex comparison; earlier labels weigh more."""
    return (sum(a), a) > (sum(b), b)


def _normal_form(w, rules, limit=100_000):
    for _ in range(limit):
        for lhs, rhs in rules:
            if all(x <= y for x, y in zip(lhs, w)):
                w = tuple(y - x + z for x, y, z in zip(lhs, w, rhs))
                break
        else:
            return w
    raise RecursionError("reduction did not terminate")


def verify_quotient(table: FusionTable, w: QuotientWitness) -> bool:
    labels = table.labels
    try:
        rules = [(_exps(l, labels), _exps(r, labels)) for l, r in w.rules]
    except KeyError:
        return False
    for lhs, rhs in rules:
        if not any(lhs) or not any(rhs) or not _heavier(lhs, rhs):
            return False
    # local confluence on every overlap (coprime left sides join trivially)
    for (l1, r1), (l2, r2) in product(rules, repeat=2):
        m = tuple(max(x, y) for x, y in zip(l1, l2))
        a = tuple(x - y + z for x, y, z in zip(m, l1, r1))
        b = tuple(x - y + z for x, y, z in zip(m, l2, r2))
        if _normal_form(a, rules) != _normal_form(b, rules):
            return False
    nfs = {}
    for i, g in enumerate(labels):
        unit = tuple(int(k == i) for k in range(len(labels)))
        nfs[g] = _normal_form(unit, rules)
    try:
        if set(w.normal_forms) != set(labels) or any(
                _exps(w.normal_forms[g], labels) != nfs[g] for g in labels):
            return False
    except KeyError:
        return False
    if len(set(nfs.values())) != len(labels):
        return False
    for (x, y), z in table.products.items():
        if _normal_form(_exps((x, y), labels), rules) != nfs[z]:
            return False
    return True


def verify_certificate(table: FusionTable, outcome: RealizeOutcome) -> bool:
    """Whether the outcome's certificate or witness independently holds up.

    Structural problems (wrong types, unknown status or mode) raise
    :class:`MalformedCertificate`; a well-formed but wrong certificate
    gives False.
    """
    if not isinstance(outcome, RealizeOutcome) or outcome.mode not in MODES:
        raise MalformedCertificate("not a realizability outcome")
    mode = outcome.mode
    if outcome.status is Status.NOT_REALIZABLE:
        cert = outcome.certificate
        if isinstance(cert, CombinationCertificate):
            return mode == GROUP and verify_combination(table, cert)
        if isinstance(cert, DerivationCertificate):
            # a commutative derivation does not refute a noncommutative realization
            if mode == SEMIGROUP and cert.commutative:
                return False
            return verify_derivation(table, cert)
        raise MalformedCertificate("NotRealizable outcome without a derivation")
    if outcome.status is Status.REALIZABLE:
        w = outcome.witness
        if isinstance(w, GroupWitness):
            return verify_group_witness(table, w)
        if isinstance(w, ModelWitness):
            return mode != GROUP and verify_model(table, w, commutative=mode == ABELIAN_SEMIGROUP)
        if isinstance(w, QuotientWitness):
            return mode != GROUP and verify_quotient(table, w)
        raise MalformedCertificate("Realizable outcome without a witness")
    if outcome.status is Status.UNKNOWN:
        return False
    raise MalformedCertificate(f"unknown status {outcome.status!r}")
