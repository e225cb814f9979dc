"""Completion of commutative semigroup presentations.

Elements of the free commutative semigroup on the labels are nonzero
exponent vectors.  Equations are oriented by graded-lex order (degree
first, then exponents compared in label order, so earlier labels are
heavier).  Overlaps of two left-hand sides are taken at their componentwise
maximum and processed lowest degree first.  Dickson's lemma bounds the
number of interreduced rules, so the loop always stops.

Every rule keeps a proof: a chain of rewrites from its left-hand side to its
right-hand side, each step citing a fusion relation or an earlier rule.
Derivation certificates are unfolded from these proofs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import count

from ..grading import FusionTable, Relation
from .certificates import (
    ABELIAN_SEMIGROUP,
    DerivationCertificate,
    Lemma,
    QuotientWitness,
    RealizeOutcome,
    Status,
    Step,
)


def grlex_key(w):
    return (sum(w), w)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class _Move:
    """One rewrite ``src -> dst`` using ``ref`` in context ``ctx``."""

    src: tuple
    dst: tuple
    ref: object  # Relation or rule id
    forward: bool
    ctx: tuple

    def reversed(self):
        return _Move(self.dst, self.src, self.ref, not self.forward, self.ctx)

    def shifted(self, t):
        return _Move(_add(self.src, t), _add(self.dst, t), self.ref, self.forward, _add(self.ctx, t))


def _reverse(chain):
    return [m.reversed() for m in reversed(chain)]


def _shift(chain, t):
    return [m.shifted(t) for m in chain]


@dataclass
class Rule:
    id: int
    lhs: tuple
    rhs: tuple
    proof: list  # _Move chain from lhs to rhs


class Completion:
    """Confluent rewriting system for the congruence generated by a fusion table."""

    def __init__(self, table: FusionTable, max_rules: int = 100_000):
        self.table = table
        self.labels = table.labels
        self.n = len(self.labels)
        self.relations = table.relations(commutative=True)
        self.rules: list[Rule] = []
        self.active: list[int] = []
        self.max_rules = max_rules
        self._run()

    def word(self, labels) -> tuple:
        w = [0] * self.n
        for g in labels:
            w[self.labels.index(g)] += 1
        return tuple(w)

    def unit(self, i) -> tuple:
        return tuple(int(k == i) for k in range(self.n))

    def to_labels(self, w) -> tuple:
        return tuple(g for g, e in zip(self.labels, w) for _ in range(e))

    def reduce(self, w):
        """Normal form of ``w`` and the chain of rewrites reaching it."""
        chain = []
        while True:
            for rid in self.active:
                rule = self.rules[rid]
                if _divides(rule.lhs, w):
                    ctx = _sub(w, rule.lhs)
                    nxt = _add(ctx, rule.rhs)
                    chain.append(_Move(w, nxt, rid, True, ctx))
                    w = nxt
                    break
            else:
                return w, chain

    def _add_rule(self, lhs, rhs, proof) -> Rule:
        assert grlex_key(lhs) > grlex_key(rhs), "rules must decrease graded-lex order"
        if len(self.rules) >= self.max_rules:
            raise RuntimeError(f"completion exceeded {self.max_rules} rules")
        rule = Rule(len(self.rules), lhs, rhs, proof)
        self.rules.append(rule)
        return rule

    def _run(self):
        # smallest peak degree first, then smallest sides, then FIFO
        pending = []
        tick = count()

        def push(u, v, chain, peak):
            heapq.heappush(pending, (sum(peak), sum(u) + sum(v), next(tick), u, v, chain))

        for rel in self.relations:
            u, v = self.word(rel.left), self.word((rel.right,))
            push(u, v, [_Move(u, v, rel, True, (0,) * self.n)], u)
        while pending:
            *_, u, v, chain = heapq.heappop(pending)
            nu, cu = self.reduce(u)
            nv, cv = self.reduce(v)
            if nu == nv:
                continue
            chain = _reverse(cu) + chain + cv
            if grlex_key(nu) < grlex_key(nv):
                nu, nv, chain = nv, nu, _reverse(chain)
            rule = self._add_rule(nu, nv, chain)
            for rid in list(self.active):
                old = self.rules[rid]
                if _divides(rule.lhs, old.lhs) or _divides(rule.lhs, old.rhs):
                    self.active.remove(rid)
                    push(old.lhs, old.rhs, [_Move(old.lhs, old.rhs, rid, True, (0,) * self.n)], old.lhs)
            for rid in self.active:
                other = self.rules[rid]
                if not any(min(x, y) for x, y in zip(rule.lhs, other.lhs)):
                    continue  # coprime left sides always join
                m = tuple(max(x, y) for x, y in zip(rule.lhs, other.lhs))
                c1, c2 = _sub(m, rule.lhs), _sub(m, other.lhs)
                a, b = _add(c1, rule.rhs), _add(c2, other.rhs)
                push(a, b, [_Move(m, a, rule.id, True, c1).reversed(), _Move(m, b, rid, True, c2)], m)
            self.active.append(rule.id)
        self.active.sort(key=lambda rid: grlex_key(self.rules[rid].lhs))

    # -- results -----------------------------------------------------------

    def normal_forms(self) -> dict:
        return {g: self.reduce(self.unit(i))[0] for i, g in enumerate(self.labels)}

    def collapsed_pair(self):
        seen = {}
        for i in range(self.n):
            nf = self.reduce(self.unit(i))[0]
            if nf in seen:
                return seen[nf], i
            seen[nf] = i
        return None

    def rules_as_words(self) -> tuple:
        out = []
        for rid in self.active:
            r = self.rules[rid]
            out.append((self.to_labels(r.lhs), self.to_labels(self.reduce(r.rhs)[0])))
        return tuple(out)

    def collapse_chain(self, i, j):
        _, ci = self.reduce(self.unit(i))
        _, cj = self.reduce(self.unit(j))
        return ci + _reverse(cj)

    def certificate(self, i, j) -> DerivationCertificate:
        return _CertificateBuilder(self).build(i, j)


def _remove_loops(chain):
    """Cut every cycle out of a chain, keeping the first visit of each word."""
    if not chain:
        return []
    out = []
    seen = {chain[0].src: 0}  # word -> number of moves taken to reach it
    for m in chain:
        if m.dst in seen:
            k = seen[m.dst]
            del out[k:]
            seen = {w: i for w, i in seen.items() if i <= k}
        else:
            out.append(m)
            seen[m.dst] = len(out)
    return out


class _CertificateBuilder:
    """Unfold rule provenance into relation steps and lemmas.

    Rules used directly in the collapse chain are inlined; rules cited inside
    their proofs become lemmas, except those whose proof is a single step.
    """

    def __init__(self, completion: Completion):
        self.c = completion
        self.lemma_of = {}  # rule id -> lemma index
        self.lemmas = []  # (lhs, rhs, chain)

    def _single(self, rid) -> bool:
        return len(self.c.rules[rid].proof) == 1

    def expand(self, chain, top):
        out = []
        for m in chain:
            if isinstance(m.ref, Relation):
                out.append(m)
                continue
            rule = self.c.rules[m.ref]
            if top or self._single(m.ref):
                sub = _shift(self.expand(rule.proof, top and self._single(m.ref)), m.ctx)
                out += sub if m.forward else _reverse(sub)
            else:
                out.append(_Move(m.src, m.dst, ("lemma", self.lemma(m.ref)), m.forward, m.ctx))
        return _remove_loops(out)

    def lemma(self, rid) -> int:
        if rid not in self.lemma_of:
            rule = self.c.rules[rid]
            body = self.expand(rule.proof, top=False)
            self.lemma_of[rid] = len(self.lemmas)
            self.lemmas.append((rule.lhs, rule.rhs, body))
        return self.lemma_of[rid]

    def build(self, i, j) -> DerivationCertificate:
        main = self.expand(self.c.collapse_chain(i, j), top=True)
        # keep only lemmas reachable from the main chain, renumbered in order
        used = set()
        stack = [main]
        while stack:
            for m in stack.pop():
                if isinstance(m.ref, tuple) and m.ref[1] not in used:
                    used.add(m.ref[1])
                    stack.append(self.lemmas[m.ref[1]][2])
        renumber = {old: new for new, old in enumerate(sorted(used))}
        to_labels = self.c.to_labels

        def steps(chain):
            out = []
            for m in chain:
                ref = m.ref if isinstance(m.ref, Relation) else renumber[m.ref[1]]
                out.append(Step(to_labels(m.dst), ref, not m.forward, to_labels(m.ctx)))
            return tuple(out)

        lemmas = tuple(Lemma(to_labels(l), to_labels(r), steps(ch))
                       for k, (l, r, ch) in enumerate(self.lemmas) if k in used)
        labels = self.c.labels
        return DerivationCertificate((labels[i], labels[j]), steps(main), lemmas, commutative=True)


def realize_abelian_semigroup(table: FusionTable) -> RealizeOutcome:
    comp = Completion(table)
    pair = comp.collapsed_pair()
    if pair is not None:
        cert = comp.certificate(*pair)
        return RealizeOutcome(Status.NOT_REALIZABLE, ABELIAN_SEMIGROUP, certificate=cert)
    nfs = {g: comp.to_labels(w) for g, w in comp.normal_forms().items()}
    witness = QuotientWitness(comp.rules_as_words(), nfs)
    return RealizeOutcome(Status.REALIZABLE, ABELIAN_SEMIGROUP, witness=witness)
