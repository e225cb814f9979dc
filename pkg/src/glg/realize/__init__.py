"""Deciding whether a fusion table is realized by a group or semigroup."""

from .certificates import (
    ABELIAN_SEMIGROUP,
    GROUP,
    MODES,
    SEMIGROUP,
    CombinationCertificate,
    DerivationCertificate,
    GroupWitness,
    Lemma,
    MalformedCertificate,
    ModelWitness,
    QuotientWitness,
    RealizeOutcome,
    Status,
    Step,
    certificate_from_json,
    certificate_lines,
    certificate_to_json,
    format_word,
    parse_word,
    witness_from_json,
    witness_to_json,
)
from .completion import Completion, realize_abelian_semigroup
from .group import realize_abelian_group, relation_matrix
from .semigroup import find_model, realize_semigroup, word_closure
from .verify import verify_certificate


def realize(table, mode: str = ABELIAN_SEMIGROUP, **limits) -> RealizeOutcome:
    if mode == GROUP:
        return realize_abelian_group(table)
    if mode == ABELIAN_SEMIGROUP:
        return realize_abelian_semigroup(table)
    if mode == SEMIGROUP:
        return realize_semigroup(table, **limits)
    raise ValueError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")


def outcome_to_json(outcome: RealizeOutcome) -> dict:
    return {
        "status": outcome.status.value,
        "mode": outcome.mode,
        "certificate": certificate_to_json(outcome.certificate),
        "witness": witness_to_json(outcome.witness),
        "bounds": outcome.bounds,
    }


def outcome_from_json(d: dict) -> RealizeOutcome:
    try:
        status = Status(d["status"])
        mode = d["mode"]
    except (KeyError, ValueError, TypeError) as exc:
        raise MalformedCertificate(f"bad report: {exc}") from exc
    if mode not in MODES:
        raise MalformedCertificate(f"unknown mode {mode!r}")
    return RealizeOutcome(
        status,
        mode,
        witness=witness_from_json(d.get("witness")),
        certificate=certificate_from_json(d.get("certificate")),
        bounds=d.get("bounds"),
    )


__all__ = [
    "ABELIAN_SEMIGROUP", "GROUP", "MODES", "SEMIGROUP",
    "CombinationCertificate", "Completion", "DerivationCertificate", "GroupWitness",
    "Lemma", "MalformedCertificate", "ModelWitness", "QuotientWitness", "RealizeOutcome",
    "Status", "Step", "certificate_from_json", "certificate_lines", "certificate_to_json",
    "find_model", "format_word", "outcome_from_json", "outcome_to_json", "parse_word",
    "realize", "realize_abelian_group", "realize_abelian_semigroup", "realize_semigroup",
    "relation_matrix", "verify_certificate", "witness_from_json", "witness_to_json",
    "word_closure",
]
