"""Outcome, certificate and witness types, plus their text and JSON forms.

Words are tuples of labels.  In commutative certificates a word is a
multiset and is kept sorted by label order; in noncommutative ones it is a
sequence.  A derivation step records the rule it used (a fusion relation or
an earlier lemma), the direction, and the context around the rewritten
factor, so a replay needs nothing but the fusion table.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Union

from ..grading import Relation

GROUP = "group"
ABELIAN_SEMIGROUP = "abelian-semigroup"
SEMIGROUP = "semigroup"
MODES = (GROUP, ABELIAN_SEMIGROUP, SEMIGROUP)


class Status(enum.Enum):
    REALIZABLE = "realizable"
    NOT_REALIZABLE = "not-realizable"
    UNKNOWN = "unknown"


class MalformedCertificate(ValueError):
    pass


@dataclass(frozen=True)
class Step:
    word: tuple  # the word after this step
    rule: Union[Relation, int]  # fusion relation, or 0-based lemma index
    reverse: bool = False  # rewrite right-hand side into left-hand side
    left: tuple = ()
    right: tuple = ()


@dataclass(frozen=True)
class Lemma:
    lhs: tuple
    rhs: tuple
    steps: tuple  # chain starting at lhs


@dataclass(frozen=True)
class DerivationCertificate:
    """Chain of single rewrites from ``pair[0]`` to ``pair[1]``."""

    pair: tuple
    steps: tuple
    lemmas: tuple = ()
    commutative: bool = True

    @property
    def start(self) -> tuple:
        return (self.pair[0],)

    def words(self) -> list:
        return [self.start] + [s.word for s in self.steps]


@dataclass(frozen=True)
class CombinationCertificate:
    """``e_g - e_h`` as an integer combination of relation vectors
    ``e_a + e_b - e_c``; valid in any abelian group."""

    pair: tuple
    terms: tuple  # ((Relation, int), ...)


@dataclass(frozen=True)
class GroupWitness:
    free_rank: int
    torsion: tuple
    assignment: dict  # label -> tuple of free_rank + len(torsion) ints

    def describe(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}Z" for d in self.torsion]
        return " x ".join(parts) or "trivial group"


@dataclass(frozen=True)
class ModelWitness:
    carrier: tuple  # labels first, then extra elements
    table: tuple  # table[i][j] = index of carrier[i]*carrier[j]


@dataclass(frozen=True)
class QuotientWitness:
    rules: tuple  # ((lhs word, rhs word), ...), commutative words
    normal_forms: dict  # label -> word


@dataclass(frozen=True)
class RealizeOutcome:
    status: Status
    mode: str
    witness: object = None
    certificate: object = None
    bounds: dict = field(default=None)

    @property
    def realizable(self) -> bool:
        return self.status is Status.REALIZABLE


# -- text ------------------------------------------------------------------

def format_word(word) -> str:
    if not word:
        return "1"
    out = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        out.append(word[i] if j - i == 1 else f"{word[i]}^{j - i}")
        i = j
    return "*".join(out)


_FACTOR = re.compile(r"([A-Za-z][A-Za-z0-9_+]*)(?:\^(\d+))?\Z")


def parse_word(text: str) -> tuple:
    text = text.strip()
    if text == "1":
        return ()
    out = []
    for factor in text.split("*"):
        m = _FACTOR.match(factor.strip())
        if not m or (m.group(2) is not None and int(m.group(2)) < 1):
            raise MalformedCertificate(f"bad word {text!r}")
        out += [m.group(1)] * int(m.group(2) or 1)
    return tuple(out)


def sort_word(word, order: dict) -> tuple:
    return tuple(sorted(word, key=order.__getitem__))


def chain_text(start, steps) -> str:
    return " = ".join(format_word(w) for w in [start] + [s.word for s in steps])


def certificate_lines(cert) -> list[str]:
    if isinstance(cert, CombinationCertificate):
        g, h = cert.pair
        terms = " ".join(f"{'+' if c > 0 else '-'} {abs(c)}*({r.left[0]} + {r.left[1]} - {r.right})"
                         for r, c in cert.terms)
        return [f"{g} - {h} = {terms.lstrip('+ ')}", f"so {g} = {h} in every abelian group"]
    lines = []
    for k, lem in enumerate(cert.lemmas, 1):
        lines.append(f"lemma {k}: {format_word(lem.lhs)} = {format_word(lem.rhs)}: "
                     + chain_text(lem.lhs, lem.steps))
    lines.append(chain_text(cert.start, cert.steps))
    lines.append(f"so {cert.pair[0]} = {cert.pair[1]}, a contradiction")
    return lines


def step_justification(step: Step) -> str:
    if isinstance(step.rule, Relation):
        rule = str(step.rule)
    else:
        rule = f"lemma {step.rule + 1}"
    ctx = [format_word(step.left)] if step.left else []
    ctx += [f"(right) {format_word(step.right)}"] if step.right else []
    how = "backward" if step.reverse else "forward"
    return f"{rule} {how}" + (f" in context {', '.join(ctx)}" if ctx else "")


# -- JSON ------------------------------------------------------------------

def _step_json(s: Step) -> dict:
    return {
        "word": format_word(s.word),
        "by": str(s.rule) if isinstance(s.rule, Relation) else f"lemma {s.rule + 1}",
        "direction": "backward" if s.reverse else "forward",
        "left": format_word(s.left),
        "right": format_word(s.right),
    }


def parse_relation(text: str) -> Relation:
    m = re.fullmatch(r"\s*([^*=\s]+)\s*\*\s*([^*=\s]+)\s*=\s*([^*=\s]+)\s*", text)
    if not m:
        raise MalformedCertificate(f"bad relation {text!r}")
    return Relation((m.group(1), m.group(2)), m.group(3))


def _step_from_json(d: dict) -> Step:
    try:
        by = d["by"]
        lem = re.fullmatch(r"lemma (\d+)", by)
        rule = int(lem.group(1)) - 1 if lem else parse_relation(by)
        if d["direction"] not in ("forward", "backward"):
            raise MalformedCertificate(f"bad direction {d['direction']!r}")
        return Step(parse_word(d["word"]), rule, d["direction"] == "backward",
                    parse_word(d["left"]), parse_word(d["right"]))
    except (KeyError, TypeError, AttributeError) as exc:
        raise MalformedCertificate(f"bad step {d!r}") from exc


def certificate_to_json(cert) -> dict | None:
    if cert is None:
        return None
    if isinstance(cert, CombinationCertificate):
        return {
            "kind": "combination",
            "pair": list(cert.pair),
            "terms": [{"relation": str(r), "coeff": c} for r, c in cert.terms],
            "text": certificate_lines(cert),
        }
    return {
        "kind": "derivation",
        "pair": list(cert.pair),
        "commutative": cert.commutative,
        "lemmas": [{"lhs": format_word(l.lhs), "rhs": format_word(l.rhs),
                    "steps": [_step_json(s) for s in l.steps]} for l in cert.lemmas],
        "steps": [_step_json(s) for s in cert.steps],
        "text": certificate_lines(cert),
    }


def certificate_from_json(d):
    if d is None:
        return None
    try:
        kind = d["kind"]
        pair = tuple(d["pair"])
        if len(pair) != 2:
            raise MalformedCertificate("pair must have two labels")
        if kind == "combination":
            terms = tuple((parse_relation(t["relation"]), int(t["coeff"])) for t in d["terms"])
            return CombinationCertificate(pair, terms)
        if kind == "derivation":
            lemmas = tuple(Lemma(parse_word(l["lhs"]), parse_word(l["rhs"]),
                                 tuple(_step_from_json(s) for s in l["steps"])) for l in d["lemmas"])
            steps = tuple(_step_from_json(s) for s in d["steps"])
            return DerivationCertificate(pair, steps, lemmas, bool(d["commutative"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedCertificate):
            raise
        raise MalformedCertificate(f"bad certificate: {exc}") from exc
    raise MalformedCertificate(f"unknown certificate kind {kind!r}")


def witness_to_json(w) -> dict | None:
    if w is None:
        return None
    if isinstance(w, GroupWitness):
        return {
            "kind": "group",
            "group": w.describe(),
            "free_rank": w.free_rank,
            "torsion": list(w.torsion),
            "assignment": {g: list(v) for g, v in w.assignment.items()},
        }
    if isinstance(w, ModelWitness):
        return {
            "kind": "model",
            "carrier": list(w.carrier),
            "table": [[w.carrier[k] for k in row] for row in w.table],
        }
    return {
        "kind": "quotient",
        "rules": [[format_word(l), format_word(r)] for l, r in w.rules],
        "normal_forms": {g: format_word(v) for g, v in w.normal_forms.items()},
    }


def witness_from_json(d):
    if d is None:
        return None
    try:
        kind = d["kind"]
        if kind == "group":
            return GroupWitness(int(d["free_rank"]), tuple(map(int, d["torsion"])),
                                {g: tuple(map(int, v)) for g, v in d["assignment"].items()})
        if kind == "model":
            carrier = tuple(d["carrier"])
            index = {c: i for i, c in enumerate(carrier)}
            return ModelWitness(carrier, tuple(tuple(index[c] for c in row) for row in d["table"]))
        if kind == "quotient":
            return QuotientWitness(tuple((parse_word(l), parse_word(r)) for l, r in d["rules"]),
                                   {g: parse_word(v) for g, v in d["normal_forms"].items()})
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedCertificate):
            raise
        raise MalformedCertificate(f"bad witness: {exc}") from exc
    raise MalformedCertificate(f"unknown witness kind {kind!r}")
