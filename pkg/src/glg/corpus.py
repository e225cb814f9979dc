"""The algebras and gradings worked out by hand: two gradings that no
semigroup realizes (dimensions 4 and 6), a non-group grading in dimension 3,
and the fine Z x (Z/2)^2 grading whose coarsening gives the dimension-6 one.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .exactmath import QQ, Field
from .grading import Grading, validate_grading
from .liealg import LieAlgebra

YES, NO = "realizable", "not-realizable"


@dataclass(frozen=True)
class NamedExample:
    name: str
    description: str
    algebra: LieAlgebra
    gradings: dict  # grading name -> Grading
    expected: dict  # grading name -> {mode: status}

    @property
    def grading(self) -> Grading:
        return next(iter(self.gradings.values()))


def _solvable4(field):
    alg = LieAlgebra.from_brackets(field, "a u v w".split(), {
        ("a", "u"): {"u": 1},
        ("a", "v"): {"w": 1},
        ("a", "w"): {"v": 1},
    })
    grading = validate_grading(alg, [
        ("alpha", alg.span("a", "u")),
        ("beta", alg.span("v")),
        ("gamma", alg.span("w")),
    ])
    expected = {"group": NO, "abelian-semigroup": NO, "semigroup": NO}
    return ("metabelian 4-dimensional algebra; the grading is not realized by any semigroup",
            alg, grading, expected)


def _remark3(field):
    alg = LieAlgebra.from_brackets(field, "x y z".split(), {
        ("x", "z"): {"z": 1},
        ("y", "z"): {"z": 1},
    })
    grading = validate_grading(alg, [(n, alg.span(n)) for n in ("x", "y", "z")])
    expected = {"group": NO, "abelian-semigroup": YES, "semigroup": YES}
    return ("3-dimensional algebra whose basis grading is a semigroup but not a group grading",
            alg, grading, expected)


def semisimple_algebra(field: Field = QQ) -> LieAlgebra:
    """J ⊕ K with J = <h,x,y> and K = <e1,e2,e3>."""
    return LieAlgebra.from_brackets(field, "h x y e1 e2 e3".split(), {
        ("h", "x"): {"x": 1},
        ("h", "y"): {"y": -1},
        ("x", "y"): {"h": 1},
        ("e1", "e2"): {"e3": 1},
        ("e2", "e3"): {"e1": 1},
        ("e3", "e1"): {"e2": 1},
    })


def _semisimple6(field):
    alg = semisimple_algebra(field)
    grading = validate_grading(alg, [
        ("alpha", alg.span("h", "e1")),
        ("beta", alg.span("x")),
        ("gamma", alg.span("y")),
        ("delta", alg.span("e2")),
        ("mu", alg.span("e3")),
    ])
    expected = {"group": NO, "abelian-semigroup": NO, "semigroup": NO}
    return ("sum of two 3-dimensional simple algebras with a 5-part non-semigroup grading",
            alg, grading, expected)


def _semisimple6_fine(field):
    alg = semisimple_algebra(field)
    grading = validate_grading(alg, [(n, alg.span(n)) for n in alg.basis_names])
    expected = {"group": YES, "abelian-semigroup": YES, "semigroup": YES}
    return ("the same algebra with its fine Z x (Z/2Z)^2 grading",
            alg, grading, expected)


_BUILDERS = {
    "solvable4": _solvable4,
    "remark3": _remark3,
    "semisimple6": _semisimple6,
    "semisimple6-fine": _semisimple6_fine,
}

NAMES = tuple(_BUILDERS)


def builtin(name: str, field: Field = QQ) -> NamedExample:
    try:
        build = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(NAMES)}") from None
    description, alg, grading, expected = build(field)
    return NamedExample(name, description, alg, {name: grading}, {name: expected})


def example_files(name: str) -> tuple[str, str]:
    """Text of the shipped ``.alg`` and ``.grad`` files for a builtin."""
    if name not in _BUILDERS:
        raise KeyError(f"unknown example {name!r}")
    data = resources.files("glg") / "data"
    return ((data / f"{name}.alg").read_text(encoding="utf-8"),
            (data / f"{name}.grad").read_text(encoding="utf-8"))
