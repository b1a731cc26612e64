"""Spins, fields and the unit-ball energy of the SOS model.

The energy of a restricted configuration on a unit ball ``b`` is

    U(sigma_b) = -(J/2) * sum_{x ~ c_b} |sigma(x) - sigma(c_b)| + alpha_{class(c_b)} * sigma(c_b)

where each centre-neighbour edge is counted once.  Energies are kept either
numerically (exact ``Fraction``) or symbolically as affine forms in
``(J, alpha_1, ..., alpha_r)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Iterable, Iterator, Mapping, Sequence

from .rational import fmt, fmt_all, parse_rational
from .words import FiniteTree, GroupWord, Subgroup, class_count, coset_class

HALF = Fraction(1, 2)


class IncompleteConfiguration(ValueError):
    pass


def check_spin(value: int, m: int) -> int:
    if not 0 <= value <= m:
        raise ValueError(f"spin {value} outside 0..{m}")
    return value


@dataclass(frozen=True)
class FieldSpec:
    """Which vertex partition the external field is constant on.

    ``full`` gives a translation-invariant field (one value ``alpha``);
    ``even-length`` gives ``alpha_1`` on even words and ``alpha_2`` on odd ones.
    """

    subgroup: Subgroup = "full"

    def __post_init__(self):
        class_count(self.subgroup)  # validates

    @property
    def r(self) -> int:
        return class_count(self.subgroup)

    def class_of(self, x: GroupWord) -> int:
        return coset_class(x, self.subgroup)

    @classmethod
    def with_classes(cls, r: int) -> "FieldSpec":
        if r == 1:
            return cls("full")
        if r == 2:
            return cls("even-length")
        raise ValueError(f"only 1 or 2 field classes are supported, got {r}")


TRANSLATION_INVARIANT = FieldSpec("full")
EVEN_ODD = FieldSpec("even-length")


@dataclass(frozen=True)
class ParameterPoint:
    J: Fraction
    alphas: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "J", parse_rational(self.J))
        object.__setattr__(self, "alphas", tuple(parse_rational(a) for a in self.alphas))
        if not self.alphas:
            raise ValueError("at least one field value is required")

    @classmethod
    def of(cls, J, *alphas) -> "ParameterPoint":
        return cls(J, tuple(alphas))

    @classmethod
    def from_vector(cls, vec: Sequence[Fraction]) -> "ParameterPoint":
        return cls(vec[0], tuple(vec[1:]))

    @property
    def r(self) -> int:
        return len(self.alphas)

    def vector(self) -> tuple[Fraction, ...]:
        return (self.J, *self.alphas)

    def to_json(self) -> dict:
        return {"J": fmt(self.J), "alphas": fmt_all(self.alphas)}


@dataclass(frozen=True, order=True)
class BallPattern:
    """Spin at a ball centre, the neighbour multiset, and the centre's field class."""

    center: int
    neighbors: tuple[int, ...]
    center_class: int = 1

    def __post_init__(self):
        object.__setattr__(self, "neighbors", tuple(sorted(int(s) for s in self.neighbors)))
        if self.center_class < 1:
            raise ValueError("field classes are numbered from 1")

    @property
    def k(self) -> int:
        return len(self.neighbors) - 1

    def to_json(self) -> dict:
        return {"center": self.center, "neighbors": list(self.neighbors), "class": self.center_class}

    @classmethod
    def from_json(cls, data: Mapping) -> "BallPattern":
        return cls(int(data["center"]), tuple(data["neighbors"]), int(data.get("class", 1)))


@dataclass(frozen=True, order=True)
class AffineEnergy:
    """``coeff_J * J + sum_i coeff_alpha[i] * alpha_{i+1} + constant``."""

    coeff_J: Fraction
    coeff_alpha: tuple[Fraction, ...]
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coeff_J", Fraction(self.coeff_J))
        object.__setattr__(self, "coeff_alpha", tuple(Fraction(c) for c in self.coeff_alpha))
        object.__setattr__(self, "constant", Fraction(self.constant))

    @property
    def r(self) -> int:
        return len(self.coeff_alpha)

    def vector(self) -> tuple[Fraction, ...]:
        return (self.coeff_J, *self.coeff_alpha)

    def evaluate(self, params: ParameterPoint) -> Fraction:
        if params.r != self.r:
            raise ValueError(f"form has {self.r} field classes, point has {params.r}")
        total = self.constant + self.coeff_J * params.J
        for c, a in zip(self.coeff_alpha, params.alphas):
            total += c * a
        return total

    def __sub__(self, other: "AffineEnergy") -> "AffineEnergy":
        return AffineEnergy(
            self.coeff_J - other.coeff_J,
            tuple(a - b for a, b in zip(self.coeff_alpha, other.coeff_alpha)),
            self.constant - other.constant,
        )

    def __str__(self) -> str:
        return format_linear(self.vector(), self.constant, variable_names(self.r))

    def to_json(self) -> dict:
        return {"coeff_J": fmt(self.coeff_J), "coeff_alpha": fmt_all(self.coeff_alpha), "constant": fmt(self.constant)}


def variable_names(r: int) -> tuple[str, ...]:
    return ("J", "a") if r == 1 else ("J", *(f"a{i}" for i in range(1, r + 1)))


def format_linear(coeffs: Sequence[Fraction], constant: Fraction, names: Sequence[str]) -> str:
    """Render ``-3/2 J + 2 a`` style text as ``-3J/2 + 2a``."""
    parts: list[str] = []
    for c, name in zip(coeffs, names):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        num = "" if mag.numerator == 1 else str(mag.numerator)
        term = f"{num}{name}" + (f"/{mag.denominator}" if mag.denominator != 1 else "")
        parts.append(f"{sign} {term}")
    if constant != 0 or not parts:
        parts.append(f"{'-' if constant < 0 else '+'} {fmt(abs(constant))}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def coupling_sum(center: int, neighbors: Iterable[int]) -> int:
    return sum(abs(s - center) for s in neighbors)


def energy_of_ball(center: int, neighbors: Sequence[int], center_class: int, r: int) -> AffineEnergy:
    """Symbolic energy straight from a (possibly unsorted) neighbour sequence."""
    if not 1 <= center_class <= r:
        raise ValueError(f"centre class {center_class} outside 1..{r}")
    alphas = [Fraction(0)] * r
    alphas[center_class - 1] = Fraction(center)
    return AffineEnergy(-HALF * coupling_sum(center, neighbors), tuple(alphas))


def ball_energy_symbolic(p: BallPattern, k: int, field: FieldSpec) -> AffineEnergy:
    if len(p.neighbors) != k + 1:
        raise ValueError(f"a unit ball has {k + 1} neighbours, pattern has {len(p.neighbors)}")
    return energy_of_ball(p.center, p.neighbors, p.center_class, field.r)


def ball_energy_numeric(p: BallPattern, k: int, field: FieldSpec, params: ParameterPoint) -> Fraction:
    if len(p.neighbors) != k + 1:
        raise ValueError(f"a unit ball has {k + 1} neighbours, pattern has {len(p.neighbors)}")
    if params.r != field.r:
        raise ValueError(f"field has {field.r} classes, parameters give {params.r}")
    return -HALF * params.J * coupling_sum(p.center, p.neighbors) + params.alphas[p.center_class - 1] * p.center


def enumerate_ball_patterns(k: int, m: int, r: int) -> list[BallPattern]:
    """Every canonical (centre, neighbour multiset, class) triple, once."""
    if k < 1 or m < 1 or r not in (1, 2):
        raise ValueError("need k >= 1, m >= 1, r in {1, 2}")
    spins = range(m + 1)
    return [
        BallPattern(c, nb, cls)
        for cls in range(1, r + 1)
        for c in spins
        for nb in combinations_with_replacement(spins, k + 1)
    ]


def enumerate_labeled_patterns(k: int, m: int, r: int) -> Iterator[tuple[int, tuple[int, ...], int]]:
    """Raw ``(centre, ordered neighbours, class)`` triples; ``r (m+1)^(k+2)`` of them."""
    spins = range(m + 1)
    for cls in range(1, r + 1):
        for c in spins:
            for nb in product(spins, repeat=k + 1):
                yield c, nb, cls


@dataclass(frozen=True)
class EnergyCatalog:
    """The distinct ball energies for given ``(k, m, r)``, each with a witness pattern.

    ``classes[i]`` lists the centre classes whose patterns realise ``forms[i]``.
    Indices handed out by :meth:`index` are 1-based.
    """

    k: int
    m: int
    r: int
    forms: tuple[AffineEnergy, ...]
    witnesses: tuple[BallPattern, ...]
    classes: tuple[frozenset[int], ...] = field(default=())

    def __len__(self) -> int:
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __contains__(self, form: AffineEnergy) -> bool:
        return form in self.forms

    def form(self, i: int) -> AffineEnergy:
        if not 1 <= i <= len(self.forms):
            raise IndexError(f"form index {i} outside 1..{len(self.forms)}")
        return self.forms[i - 1]

    def index(self, form: AffineEnergy) -> int:
        try:
            return self.forms.index(form) + 1
        except ValueError:
            raise KeyError(f"{form} is not in the catalog") from None

    @property
    def field_spec(self) -> FieldSpec:
        return FieldSpec.with_classes(self.r)

    def minimum(self, params: ParameterPoint) -> Fraction:
        return min(f.evaluate(params) for f in self.forms)

    def minimizers(self, params: ParameterPoint) -> list[int]:
        values = [f.evaluate(params) for f in self.forms]
        low = min(values)
        return [i + 1 for i, v in enumerate(values) if v == low]

    def for_class(self, center_class: int) -> "EnergyCatalog":
        """Sub-catalog of forms realised by patterns with the given centre class."""
        keep = [i for i, cl in enumerate(self.classes) if center_class in cl]
        return EnergyCatalog(
            self.k, self.m, self.r,
            tuple(self.forms[i] for i in keep),
            tuple(self.witnesses[i] for i in keep),
            tuple(self.classes[i] for i in keep),
        )

    def reordered(self, order: Sequence[AffineEnergy]) -> "EnergyCatalog":
        """Same catalog listed in a prescribed order; ``order`` must be a permutation."""
        if len(order) != len(self.forms) or set(order) != set(self.forms):
            raise ValueError("ordering is not a permutation of the catalog forms")
        pos = {f: i for i, f in enumerate(self.forms)}
        idx = [pos[f] for f in order]
        return EnergyCatalog(
            self.k, self.m, self.r,
            tuple(self.forms[i] for i in idx),
            tuple(self.witnesses[i] for i in idx),
            tuple(self.classes[i] for i in idx),
        )

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "r": self.r,
            "forms": [
                {
                    "index": i + 1,
                    "coeff_J": fmt(f.coeff_J),
                    "coeff_alpha": fmt_all(f.coeff_alpha),
                    "text": str(f),
                    "witness": w.to_json(),
                }
                for i, (f, w) in enumerate(zip(self.forms, self.witnesses))
            ],
        }


def enumerate_energy_forms(k: int, m: int, r: int) -> EnergyCatalog:
    field_ = FieldSpec.with_classes(r)
    forms: dict[AffineEnergy, BallPattern] = {}
    classes: dict[AffineEnergy, set[int]] = {}
    for p in enumerate_ball_patterns(k, m, r):
        u = ball_energy_symbolic(p, k, field_)
        forms.setdefault(u, p)
        classes.setdefault(u, set()).add(p.center_class)
    return EnergyCatalog(
        k, m, r,
        tuple(forms),
        tuple(forms.values()),
        tuple(frozenset(classes[u]) for u in forms),
    )


def hamiltonian_finite(
    tree: FiniteTree,
    config: Mapping[GroupWord, int],
    field: FieldSpec,
    params: ParameterPoint,
) -> Fraction:
    """``-J sum_edges |s(x)-s(y)| + sum_x alpha_{class(x)} s(x)`` on a finite tree."""
    missing = [v for v in tree.vertices if v not in config]
    if missing:
        raise IncompleteConfiguration(f"{len(missing)} vertices have no spin, e.g. {missing[0]!r}")
    if params.r != field.r:
        raise ValueError(f"field has {field.r} classes, parameters give {params.r}")
    coupling = sum(abs(config[x] - config[y]) for x, y in tree.edges)
    total = -params.J * coupling
    for v in tree.vertices:
        total += params.alphas[field.class_of(v) - 1] * config[v]
    return total
