"""Built-in worked examples, shipped as spec files plus two families
generated in code: Klein-bottle type maps and Sol-manifold Reidemeister
sequences."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .manifolds import AffineMapSpec, ManifoldSpec
from .ratfunc import SequenceOracle
from .specio import ParsedSpec, parse_spec_data

import json

_SPEC_FILES = (
    "klein_bottle_ex1",
    "heisenberg_ex3",
    "torus_cat_map",
    "identity_torus",
    "klein_type_3_5",
    "klein_type_3_0",
    "halfturn_coincidence",
    "quarter_rotation",
)


@dataclass(frozen=True)
class SequenceFixture:
    """A raw invariant sequence with no underlying manifold spec; used
    to exercise zeta reconstruction and congruence checks directly."""

    name: str
    description: str
    degree_bound: int
    _fn: object

    def oracle(self) -> SequenceOracle:
        return SequenceOracle(self._fn, self.degree_bound, name=self.name)


def load_fixture(name: str) -> ParsedSpec:
    """Load one of the shipped spec files by name (no .json suffix)."""
    if name not in _SPEC_FILES:
        raise KeyError(f"no builtin spec fixture {name!r}")
    text = resources.files("zetafix.data").joinpath(f"{name}.json").read_text()
    return parse_spec_data(json.loads(text))


def klein_type(r: int, l: int, q: int) -> ParsedSpec:
    """Klein-bottle self-map of type (r, l, q): linear part diag(r, q),
    or [[r,0],[2l,0]] in the degenerate q = 0 family.  Realizable maps
    have r odd or q = 0; the arithmetic works for any integers."""
    d = [[r, 0], [0, q]] if q != 0 else [[r, 0], [2 * l, 0]]
    spec = ManifoldSpec.make(f"klein_type_{r}_{l}_{q}", 2,
                             [("I", [[1, 0], [0, 1]]),
                              ("A", [[1, 0], [0, -1]])])
    return ParsedSpec(spec, AffineMapSpec.make("f", d))


def sol_r_sequence(r: int) -> SequenceFixture:
    """Reidemeister sequence |1 - r^n| of the standard Sol-manifold
    map family; its zeta is (1-z)/(1-rz) for r >= 2."""
    if r == 1:
        raise ValueError("r = 1 makes every term zero and the zeta trivial")
    return SequenceFixture(
        name=f"sol_r_{r}",
        description=f"Sol-manifold Reidemeister sequence |1 - {r}^n|",
        degree_bound=4,
        _fn=lambda n: abs(1 - r ** n))


def builtin_fixtures() -> dict:
    """All named builtins: spec fixtures first, then sequence
    fixtures.  Order is stable for listings."""
    out: dict = {name: load_fixture(name) for name in _SPEC_FILES}
    for r in (2, 3):
        f = sol_r_sequence(r)
        out[f.name] = f
    return out
