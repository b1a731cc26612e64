"""Ground-state decisions for periodic configurations and a finite-tree oracle.

A configuration is a ground state when every unit ball attains the minimum
ball energy.  ``min_scope="all"`` compares against every ball pattern of the
catalog (the published definition of the regions); ``min_scope="class"``
only against patterns whose centre carries the same field value.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Literal, Sequence

from .energy import (
    BallPattern,
    FieldSpec,
    ParameterPoint,
    ball_energy_numeric,
    ball_energy_symbolic,
    enumerate_ball_patterns,
    enumerate_energy_forms,
)
from .rational import fmt
from .regions import Region, argmin_region, intersect
from .words import IDENTITY, FiniteTree, GroupWord, Subgroup, class_count, coset_class, ordered_neighbors

MinScope = Literal["all", "class"]
MIN_SCOPES = ("all", "class")


class ClassMismatch(ValueError):
    """Field classes of the parameters and the field specification disagree."""


class TreeTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class PeriodicConfiguration:
    """One spin per coset of the chosen subgroup (``(even, odd)`` for ``even-length``)."""

    subgroup: Subgroup
    spins: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "spins", tuple(int(s) for s in self.spins))
        if len(self.spins) != class_count(self.subgroup):
            raise ValueError(f"{self.subgroup} configuration needs {class_count(self.subgroup)} spins, got {self.spins}")
        if any(s < 0 for s in self.spins):
            raise ValueError("spins are non-negative")

    @classmethod
    def constant(cls, spin: int) -> "PeriodicConfiguration":
        return cls("full", (spin,))

    @classmethod
    def even_odd(cls, even: int, odd: int) -> "PeriodicConfiguration":
        return cls("even-length", (even, odd))

    @classmethod
    def parse(cls, text: str) -> "PeriodicConfiguration":
        """``const:2`` or ``evenodd:0,1``."""
        kind, _, rest = text.partition(":")
        try:
            values = [int(v) for v in rest.split(",")]
        except ValueError:
            raise ValueError(f"bad configuration spec {text!r}") from None
        if kind == "const" and len(values) == 1:
            return cls.constant(values[0])
        if kind == "evenodd" and len(values) == 2:
            return cls.even_odd(*values)
        raise ValueError(f"bad configuration spec {text!r}; use const:S or evenodd:S_even,S_odd")

    def spin_at(self, x: GroupWord) -> int:
        return self.spins[coset_class(x, self.subgroup) - 1]

    @property
    def is_constant(self) -> bool:
        return len(set(self.spins)) == 1

    def shifted(self, g: GroupWord) -> "PeriodicConfiguration":
        """The configuration ``x -> sigma(g x)``."""
        if self.subgroup == "full" or len(g) % 2 == 0:
            return self
        return PeriodicConfiguration(self.subgroup, self.spins[::-1])

    def label(self) -> str:
        if self.subgroup == "full":
            return f"const:{self.spins[0]}"
        return f"evenodd:{self.spins[0]},{self.spins[1]}"


def two_class_battery(m: int = 2) -> list[PeriodicConfiguration]:
    """All ``(m+1)^2`` even/odd assignments, constants included."""
    return [PeriodicConfiguration.even_odd(a, b) for a in range(m + 1) for b in range(m + 1)]


def ball_patterns_of(config: PeriodicConfiguration, k: int, field: FieldSpec | None = None) -> list[BallPattern]:
    """Distinct ball patterns induced by a periodic configuration.

    Both our partitions are by word parity, so the balls around ``e`` and
    ``a_1`` are representative of every ball.
    """
    field = field or FieldSpec(config.subgroup)
    out: list[BallPattern] = []
    for center in (IDENTITY, GroupWord((1,))):
        p = BallPattern(
            config.spin_at(center),
            tuple(config.spin_at(y) for y in ordered_neighbors(center, k)),
            field.class_of(center),
        )
        if p not in out:
            out.append(p)
    return out


@dataclass(frozen=True)
class Violation:
    ball: BallPattern
    energy: Fraction
    alternative: BallPattern
    alt_energy: Fraction

    def to_json(self) -> dict:
        return {
            "ball": self.ball.to_json(),
            "energy": fmt(self.energy),
            "alternative": self.alternative.to_json(),
            "alt_energy": fmt(self.alt_energy),
        }


@dataclass(frozen=True)
class GroundStateReport:
    verdict: bool
    violations: tuple[Violation, ...] = ()

    def __bool__(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "violations": [v.to_json() for v in self.violations]}


def _check_inputs(config: PeriodicConfiguration, m: int, field: FieldSpec, params: ParameterPoint | None) -> None:
    if any(s > m for s in config.spins):
        raise ValueError(f"configuration {config.label()} uses spins outside 0..{m}")
    if params is not None and params.r != field.r:
        raise ClassMismatch(f"field {field.subgroup!r} has {field.r} classes but {params.r} field values were given")


def _check_scope(min_scope: str) -> None:
    if min_scope not in MIN_SCOPES:
        raise ValueError(f"min_scope must be one of {MIN_SCOPES}")


def is_ground_state(
    config: PeriodicConfiguration,
    k: int,
    m: int,
    field: FieldSpec,
    params: ParameterPoint,
    min_scope: MinScope = "all",
) -> GroundStateReport:
    """Brute-force check of every induced ball against all alternative patterns."""
    _check_scope(min_scope)
    _check_inputs(config, m, field, params)
    alternatives = [(ball_energy_numeric(q, k, field, params), q) for q in enumerate_ball_patterns(k, m, field.r)]
    violations = []
    for p in ball_patterns_of(config, k, field):
        pool = [(e, q) for e, q in alternatives if min_scope == "all" or q.center_class == p.center_class]
        low = min(e for e, _ in pool)
        mine = ball_energy_numeric(p, k, field, params)
        if mine > low:
            best = min(q for e, q in pool if e == low)
            violations.append(Violation(p, mine, best, low))
    return GroundStateReport(not violations, tuple(violations))


@lru_cache(maxsize=None)
def _argmin_cached(k: int, m: int, r: int, min_scope: str, center_class: int, form) -> Region:
    catalog = enumerate_energy_forms(k, m, r)
    if min_scope == "class":
        catalog = catalog.for_class(center_class)
    return argmin_region(catalog, catalog.index(form))


def pattern_region(p: BallPattern, k: int, m: int, field: FieldSpec, min_scope: MinScope = "all") -> Region:
    """Parameters where the pattern's energy is minimal."""
    _check_scope(min_scope)
    return _argmin_cached(k, m, field.r, min_scope, p.center_class, ball_energy_symbolic(p, k, field))


def ground_state_region(
    config: PeriodicConfiguration,
    k: int,
    m: int,
    field: FieldSpec | int | None = None,
    min_scope: MinScope = "all",
) -> Region:
    """Exact parameter set on which :func:`is_ground_state` holds."""
    if isinstance(field, int):
        field = FieldSpec.with_classes(field)
    field = field or FieldSpec(config.subgroup)
    _check_inputs(config, m, field, None)
    regions = [pattern_region(p, k, m, field, min_scope) for p in ball_patterns_of(config, k, field)]
    out = regions[0]
    for reg in regions[1:]:
        out = intersect(out, reg)
    return out


@dataclass(frozen=True)
class OracleResult:
    """Survivors of the finite-tree search, as spin tuples in ``tree.vertices`` order."""

    tree: FiniteTree
    survivors: tuple[tuple[int, ...], ...]
    examined: int

    def as_dicts(self) -> list[dict[GroupWord, int]]:
        return [dict(zip(self.tree.vertices, s)) for s in self.survivors]

    def interior_constant(self) -> bool:
        """True when every survivor is constant on the ball centres."""
        idx = [self.tree.vertices.index(v) for v in self.tree.interior()]
        return all(len({s[i] for i in idx}) == 1 for s in self.survivors)

    def to_json(self, limit: int | None = 100) -> dict:
        shown = self.survivors if limit is None else self.survivors[:limit]
        return {
            "k": self.tree.k,
            "radius": self.tree.radius,
            "vertices": [str(v) for v in self.tree.vertices],
            "examined": self.examined,
            "survivor_count": len(self.survivors),
            "survivors": [list(s) for s in shown],
            "truncated": len(shown) < len(self.survivors),
        }


def exhaustive_ground_check(
    tree: FiniteTree,
    field: FieldSpec,
    params: ParameterPoint,
    m: int = 2,
    min_scope: MinScope = "all",
    max_configurations: int = 2_000_000,
) -> OracleResult:
    """Every spin assignment on ``tree`` whose interior unit balls are all minimal."""
    _check_scope(min_scope)
    if params.r != field.r:
        raise ClassMismatch(f"field has {field.r} classes, parameters give {params.r}")
    if tree.radius < 1:
        raise ValueError("need radius >= 1 so that a complete unit ball exists")
    n = len(tree.vertices)
    total = (m + 1) ** n
    if total > max_configurations:
        raise TreeTooLarge(f"{total} configurations exceed the cap of {max_configurations}")

    k = tree.k
    energies = {q: ball_energy_numeric(q, k, field, params) for q in enumerate_ball_patterns(k, m, field.r)}
    allowed: dict[int, set[tuple[int, tuple[int, ...]]]] = {}
    for cls in range(1, field.r + 1):
        pool = {q: e for q, e in energies.items() if min_scope == "all" or q.center_class == cls}
        low = min(pool.values())
        allowed[cls] = {(q.center, q.neighbors) for q, e in energies.items() if q.center_class == cls and e == low}

    pos = {v: i for i, v in enumerate(tree.vertices)}
    balls = [
        (pos[b.center], tuple(pos[y] for y in b.neighbors), allowed[field.class_of(b.center)])
        for b in tree.unit_balls()
    ]
    survivors = []
    for spins in product(range(m + 1), repeat=n):
        for c, nb, ok in balls:
            if (spins[c], tuple(sorted(spins[i] for i in nb))) not in ok:
                break
        else:
            survivors.append(spins)
    return OracleResult(tree, tuple(survivors), total)


def restrict_to_tree(config: PeriodicConfiguration, tree: FiniteTree) -> tuple[int, ...]:
    return tuple(config.spin_at(v) for v in tree.vertices)
