"""Published ball-energy lists and argmin-region tables, transcribed verbatim.

These are reference data for comparison only; nothing in the library derives
from them.  Catalog ids: ``ti18`` (translation-invariant field, 18 energies)
and ``p29`` (even/odd periodic field, 29 energies).  Rows are 1-based.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .energy import AffineEnergy, EnergyCatalog, enumerate_energy_forms
from .regions import Region, parse_region

CATALOG_IDS = ("ti18", "p29")

# (coupling sum s, centre spin t, centre class): U = -s J / 2 + t * alpha_class
_TI18_LIST = (
    [(s, 0, 1) for s in range(1, 7)]
    + [(s, 1, 1) for s in range(1, 4)]
    + [(s, 2, 1) for s in range(1, 7)]
    + [(0, 1, 1), (0, 2, 1), (0, 0, 1)]
)
_P29_LIST = _TI18_LIST + (
    [(s, 1, 2) for s in range(1, 4)]
    + [(s, 2, 2) for s in range(1, 7)]
    + [(0, 1, 2), (0, 2, 2)]
)

_TI18_ROWS = (
    ["J = 0, a >= 0"] * 5
    + ["J >= 0, a >= 0"]
    + ["J = 0, a = 0"] * 3
    + ["J = 0, a <= 0"] * 5
    + [
        "J >= 0, a <= 0",
        "J <= 0, a = 0",
        "J <= 0, a <= 0",
        "J <= 0, a >= 0",
    ]
)

# as printed, including the rows that disagree with the computed regions
_P29_ROWS = (
    ["J = 0, a1 >= 0, a2 >= 0"] * 5
    + ["J >= 0, a1 >= 0, a2 >= 0"]
    + ["J = 0, a1 = 0, a2 >= 0"] * 3
    + ["J = 0, a1 <= 0, a2 >= a1"] * 5
    + [
        "J >= 0, a1 <= 0, a2 >= a1",
        "J >= 0, a1 = 0, a2 <= 0",
        "J >= 0, a1 >= 0, a2 <= a1",
        "J <= 0, a1 >= 0, a2 >= 0",
    ]
    + ["J = 0, a1 >= 0, a2 = 0"] * 3
    + ["J = 0, a1 >= a2, a2 <= 0"] * 5
    + [
        "J >= 0, a1 >= a2, a2 <= 0",
        "J >= 0, a1 <= 0, a2 = 0",
        "J >= 0, a1 <= a2, a2 >= 0",
    ]
)


def _check_id(catalog_id: str) -> None:
    if catalog_id not in CATALOG_IDS:
        raise ValueError(f"unknown catalog {catalog_id!r}; expected one of {CATALOG_IDS}")


def _classes(catalog_id: str) -> int:
    return 1 if catalog_id == "ti18" else 2


def paper_forms(catalog_id: str) -> tuple[AffineEnergy, ...]:
    """The energies ``U_1, U_2, ...`` in published order."""
    _check_id(catalog_id)
    r = _classes(catalog_id)
    listing = _TI18_LIST if catalog_id == "ti18" else _P29_LIST
    out = []
    for s, t, cls in listing:
        alphas = [Fraction(0)] * r
        alphas[cls - 1] = Fraction(t)
        out.append(AffineEnergy(Fraction(-s, 2), tuple(alphas)))
    return tuple(out)


def paper_region_table(catalog_id: str) -> list[Region]:
    """The published closed forms of ``A_1, A_2, ...`` (not simplified)."""
    _check_id(catalog_id)
    rows = _TI18_ROWS if catalog_id == "ti18" else _P29_ROWS
    r = _classes(catalog_id)
    return [parse_region(text, r) for text in rows]


@lru_cache(maxsize=None)
def paper_catalog(catalog_id: str) -> EnergyCatalog:
    """Enumerated catalog (k = m = 2) listed in published order.

    Raises ``ValueError`` if enumeration and the published list disagree as sets.
    """
    _check_id(catalog_id)
    return enumerate_energy_forms(2, 2, _classes(catalog_id)).reordered(paper_forms(catalog_id))
