"""Reduced words in the free product of order-2 cyclic groups.

Vertices of the Cayley tree of order ``k`` are identified with elements of
``G_k = <a_1, ..., a_{k+1} | a_i^2 = e>``.  Neighbours are obtained by right
multiplication with a generator, translations by left multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Literal

Subgroup = Literal["full", "even-length"]
SUBGROUPS: tuple[str, ...] = ("full", "even-length")


class InvalidGenerator(ValueError):
    """A letter outside ``1..k+1`` was supplied."""


def _cancel(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for a in letters:
        if stack and stack[-1] == a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


@dataclass(frozen=True, order=True)
class GroupWord:
    """A reduced word; the empty word is the identity ``e``."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        if any(a < 1 for a in letters):
            raise InvalidGenerator(f"generator indices start at 1, got {letters}")
        object.__setattr__(self, "letters", _cancel(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __str__(self) -> str:
        return ".".join(str(a) for a in self.letters)

    def __repr__(self) -> str:
        return f"GroupWord({str(self) or 'e'})"

    @property
    def is_identity(self) -> bool:
        return not self.letters

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        """Inverse of ``str``: ``"1.2.3"`` -> a_1 a_2 a_3, ``""`` -> e."""
        text = text.strip()
        if not text or text == "e":
            return cls()
        try:
            return cls(tuple(int(part) for part in text.split(".")))
        except ValueError as exc:
            raise InvalidGenerator(f"cannot parse word {text!r}") from exc


IDENTITY = GroupWord()


def reduce(letters: Iterable[int], k: int | None = None) -> GroupWord:
    """Return the reduced form of a raw generator sequence.

    When ``k`` is given, every letter must lie in ``1..k+1``.
    """
    letters = tuple(letters)
    if k is not None:
        bad = [a for a in letters if not 1 <= a <= k + 1]
        if bad:
            raise InvalidGenerator(f"letters {bad} outside 1..{k + 1}")
    return GroupWord(letters)


def generator(i: int, k: int | None = None) -> GroupWord:
    return reduce((i,), k)


def neighbors(x: GroupWord, k: int) -> frozenset[GroupWord]:
    """The ``k+1`` vertices adjacent to ``x`` (right representation)."""
    return frozenset(x * GroupWord((i,)) for i in range(1, k + 2))


def ordered_neighbors(x: GroupWord, k: int) -> tuple[GroupWord, ...]:
    return tuple(x * GroupWord((i,)) for i in range(1, k + 2))


def are_adjacent(x: GroupWord, y: GroupWord) -> bool:
    """Adjacent iff ``x^{-1} y`` is a single generator."""
    # every element is its own inverse letter-wise, so x^{-1} = reversed(x)
    diff = GroupWord(tuple(reversed(x.letters)) + y.letters)
    return len(diff) == 1


def left_shift(g: GroupWord, h: GroupWord) -> GroupWord:
    """The translation ``T_g(h) = gh``."""
    return g * h


def coset_class(x: GroupWord, subgroup: Subgroup = "full") -> int:
    if subgroup == "full":
        return 1
    if subgroup == "even-length":
        return 1 if len(x) % 2 == 0 else 2
    raise ValueError(f"unknown subgroup {subgroup!r}; expected one of {SUBGROUPS}")


def class_count(subgroup: Subgroup) -> int:
    return {"full": 1, "even-length": 2}[subgroup]


def words_up_to(k: int, radius: int) -> Iterator[GroupWord]:
    """All reduced words of length ``<= radius``, shortest first."""
    gens = range(1, k + 2)
    for n in range(radius + 1):
        for letters in product(gens, repeat=n):
            if all(a != b for a, b in zip(letters, letters[1:])):
                yield GroupWord(letters)


@dataclass(frozen=True)
class UnitBall:
    center: GroupWord
    neighbors: tuple[GroupWord, ...]

    @classmethod
    def around(cls, center: GroupWord, k: int) -> "UnitBall":
        return cls(center, ordered_neighbors(center, k))


@dataclass(frozen=True)
class FiniteTree:
    """The ball of radius ``radius`` around ``e`` in the Cayley tree of order ``k``."""

    k: int
    radius: int
    vertices: tuple[GroupWord, ...] = field(init=False, repr=False)
    edges: tuple[tuple[GroupWord, GroupWord], ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.k < 1 or self.radius < 0:
            raise ValueError("need k >= 1 and radius >= 0")
        verts = tuple(words_up_to(self.k, self.radius))
        # each non-root vertex hangs off its parent (drop the last letter)
        edges = tuple((GroupWord(v.letters[:-1]), v) for v in verts if v.letters)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)

    def __len__(self) -> int:
        return len(self.vertices)

    def interior(self) -> tuple[GroupWord, ...]:
        """Vertices whose whole unit ball lies inside the tree."""
        return tuple(v for v in self.vertices if len(v) < self.radius)

    def unit_balls(self) -> tuple[UnitBall, ...]:
        return tuple(UnitBall.around(v, self.k) for v in self.interior())

    def adjacency(self) -> dict[GroupWord, frozenset[GroupWord]]:
        vs = set(self.vertices)
        return {v: frozenset(n for n in neighbors(v, self.k) if n in vs) for v in self.vertices}


def tree_size(k: int, radius: int) -> int:
    """Closed-form vertex count ``1 + (k+1)(k^R - 1)/(k - 1)`` (k >= 2)."""
    if radius == 0:
        return 1
    if k == 1:
        return 1 + 2 * radius
    return 1 + (k + 1) * (k**radius - 1) // (k - 1)
