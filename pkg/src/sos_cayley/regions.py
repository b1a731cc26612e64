"""Exact convex polyhedra over the parameter space ``(J, alpha_1, ..., alpha_r)``.

A :class:`Region` is a finite conjunction of rational linear constraints
``c . x + d <= 0`` or ``c . x + d = 0``.  Feasibility, containment and
redundancy are all decided by Fourier-Motzkin elimination in ``Fraction``
arithmetic; strict constraints ``c . x + d < 0`` only ever appear inside
those decisions (negations of closed constraints).
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Literal, Sequence

from .energy import AffineEnergy, EnergyCatalog, ParameterPoint, format_linear, variable_names
from .rational import fmt, fmt_all, parse_rational

Relation = Literal["le", "eq", "lt"]
_RELATIONS = ("eq", "le", "lt")


class DimensionMismatch(ValueError):
    pass


def _primitive(coeffs: Sequence[Fraction], constant: Fraction, flip_sign: bool) -> tuple[tuple[Fraction, ...], Fraction]:
    vals = [Fraction(v) for v in (*coeffs, constant)]
    den = math.lcm(*(v.denominator for v in vals))
    nums = [int(v * den) for v in vals]
    g = math.gcd(*nums)
    if g == 0:
        return tuple(Fraction(0) for _ in coeffs), Fraction(0)
    if flip_sign:
        lead = next((n for n in nums[:-1] if n), nums[-1])
        if lead < 0:
            g = -g
    return tuple(Fraction(n // g) for n in nums[:-1]), Fraction(nums[-1] // g)


@dataclass(frozen=True, order=True)
class LinearConstraint:
    """``coeffs . x + constant  (<= | = | <)  0``."""

    coeffs: tuple[Fraction, ...]
    relation: Relation = "le"
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "constant", Fraction(self.constant))

    @property
    def dimension(self) -> int:
        return len(self.coeffs)

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return self.constant + sum((c * v for c, v in zip(self.coeffs, x)), Fraction(0))

    def holds_at(self, x: Sequence[Fraction]) -> bool:
        v = self.value(x)
        if self.relation == "eq":
            return v == 0
        if self.relation == "le":
            return v <= 0
        return v < 0

    def normalized(self) -> "LinearConstraint":
        """Primitive integer coefficients; equalities get a positive leading coefficient."""
        coeffs, const = _primitive(self.coeffs, self.constant, self.relation == "eq")
        return LinearConstraint(coeffs, self.relation, const)

    @property
    def is_constant(self) -> bool:
        return not any(self.coeffs)

    def trivially_true(self) -> bool:
        return self.is_constant and self.holds_at(())

    def trivially_false(self) -> bool:
        return self.is_constant and not self.holds_at(())

    def strict_negation(self) -> "LinearConstraint":
        """``c . x + d > 0`` written as ``-c . x - d < 0``."""
        return LinearConstraint(tuple(-c for c in self.coeffs), "lt", -self.constant)

    def strict_version(self) -> "LinearConstraint":
        return LinearConstraint(self.coeffs, "lt", self.constant)

    def pretty(self, names: Sequence[str] | None = None) -> str:
        names = names or variable_names(self.dimension - 1)
        return _pretty_constraint(self, names)

    def to_json(self) -> dict:
        return {"coeffs": fmt_all(self.coeffs), "relation": self.relation, "constant": fmt(self.constant)}

    @classmethod
    def from_json(cls, data: dict) -> "LinearConstraint":
        return cls(
            tuple(parse_rational(c) for c in data["coeffs"]),
            data["relation"],
            parse_rational(data.get("constant", "0")),
        )


def _pretty_constraint(c: LinearConstraint, names: Sequence[str]) -> str:
    op = {"le": "<=", "lt": "<", "eq": "="}[c.relation]
    flipped = {"<=": ">=", "<": ">", "=": "="}[op]
    pos = tuple(x if x > 0 else Fraction(0) for x in c.coeffs)
    neg = tuple(-x if x < 0 else Fraction(0) for x in c.coeffs)
    zero = Fraction(0)
    if not any(c.coeffs):
        return f"{fmt(c.constant)} {op} 0"
    if not any(neg):
        return f"{format_linear(pos, zero, names)} {op} {fmt(-c.constant)}"
    if not any(pos):
        return f"{format_linear(neg, zero, names)} {flipped} {fmt(c.constant)}"
    first = next(i for i, x in enumerate(c.coeffs) if x)
    if c.coeffs[first] > 0:
        return f"{format_linear(pos, zero, names)} {op} {format_linear(neg, -c.constant, names)}"
    return f"{format_linear(neg, zero, names)} {flipped} {format_linear(pos, c.constant, names)}"


def _sort_key(c: LinearConstraint):
    first = next((i for i, x in enumerate(c.coeffs) if x), len(c.coeffs))
    return (first, _RELATIONS.index(c.relation), tuple(-abs(x) for x in c.coeffs), c.coeffs, c.constant)


# -- Fourier-Motzkin core -------------------------------------------------

def _tighten(cons: Iterable[LinearConstraint]) -> list[LinearConstraint] | None:
    """Normalise, drop tautologies and keep the tightest of parallel inequalities.

    Returns ``None`` when a constant constraint is violated.
    """
    eqs: set[LinearConstraint] = set()
    best: dict[tuple[Fraction, ...], LinearConstraint] = {}
    for c in cons:
        c = c.normalized()
        if c.is_constant:
            if not c.holds_at(()):
                return None
            continue
        if c.relation == "eq":
            eqs.add(c)
            continue
        cur = best.get(c.coeffs)
        # larger constant is tighter; on ties strict beats non-strict
        if cur is None or (c.constant, c.relation == "lt") > (cur.constant, cur.relation == "lt"):
            best[c.coeffs] = c
    return sorted(eqs) + sorted(best.values())


def _combine(a: LinearConstraint, sa: Fraction, b: LinearConstraint, sb: Fraction, relation: Relation) -> LinearConstraint:
    return LinearConstraint(
        tuple(sa * x + sb * y for x, y in zip(a.coeffs, b.coeffs)),
        relation,
        sa * a.constant + sb * b.constant,
    )


def _pick(lo: tuple[Fraction, bool] | None, hi: tuple[Fraction, bool] | None) -> Fraction:
    """A simple rational strictly/weakly between the bounds; prefers small integers."""

    def ok(v: Fraction) -> bool:
        if lo is not None and (v < lo[0] or (lo[1] and v == lo[0])):
            return False
        if hi is not None and (v > hi[0] or (hi[1] and v == hi[0])):
            return False
        return True

    candidates = [Fraction(0)]
    if lo is not None:
        c = Fraction(math.ceil(lo[0]))
        candidates += [c, c + 1]
    if hi is not None:
        f = Fraction(math.floor(hi[0]))
        candidates += [f, f - 1]
    candidates.sort(key=lambda v: (abs(v), v))
    if lo is not None and hi is not None:
        candidates.append((lo[0] + hi[0]) / 2)
    for v in candidates:
        if ok(v):
            return v
    raise AssertionError(f"empty interval {lo} .. {hi} after feasible elimination")


def _solve(cons: list[LinearConstraint], free: frozenset[int]) -> dict[int, Fraction] | None:
    tight = _tighten(cons)
    if tight is None:
        return None
    if not tight:
        return {j: Fraction(0) for j in free}

    eq = next((c for c in tight if c.relation == "eq"), None)
    if eq is not None:
        j = next(i for i, x in enumerate(eq.coeffs) if x)
        pivot = eq.coeffs[j]
        rest = [_combine(c, Fraction(1), eq, -c.coeffs[j] / pivot, c.relation) for c in tight if c is not eq]
        sub = _solve(rest, free - {j})
        if sub is None:
            return None
        sub[j] = -(eq.constant + sum(eq.coeffs[i] * sub[i] for i in sub if i != j)) / pivot
        return sub

    active = [j for j in free if any(c.coeffs[j] for c in tight)]
    if not active:  # unreachable: non-constant constraints mention some free variable
        raise AssertionError("constraint mentions an eliminated variable")

    def cost(j):
        up = sum(1 for c in tight if c.coeffs[j] > 0)
        down = sum(1 for c in tight if c.coeffs[j] < 0)
        return (up * down - up - down, j)

    j = min(active, key=cost)
    uppers = [c for c in tight if c.coeffs[j] > 0]
    lowers = [c for c in tight if c.coeffs[j] < 0]
    rest = [c for c in tight if c.coeffs[j] == 0]
    for u in uppers:
        for l in lowers:
            rel: Relation = "lt" if "lt" in (u.relation, l.relation) else "le"
            rest.append(_combine(u, 1 / u.coeffs[j], l, 1 / -l.coeffs[j], rel))
    sub = _solve(rest, free - {j})
    if sub is None:
        return None

    def bound(c: LinearConstraint) -> Fraction:
        r = c.constant + sum(c.coeffs[i] * sub[i] for i in sub if i != j)
        return -r / c.coeffs[j]

    lo = hi = None
    for c in lowers:
        b = (bound(c), c.relation == "lt")
        if lo is None or b > lo:
            lo = b
    for c in uppers:
        b = (bound(c), c.relation == "lt")
        if hi is None or (b[0], not b[1]) < (hi[0], not hi[1]):
            hi = b
    sub[j] = _pick(lo, hi)
    return sub


def find_point(constraints: Iterable[LinearConstraint], dimension: int) -> tuple[Fraction, ...] | None:
    """An exact rational point satisfying every constraint, or ``None`` if infeasible."""
    cons = list(constraints)
    for c in cons:
        if c.dimension != dimension:
            raise DimensionMismatch(f"constraint of dimension {c.dimension} in a {dimension}-dimensional system")
    sol = _solve(cons, frozenset(range(dimension)))
    if sol is None:
        return None
    point = tuple(sol[i] for i in range(dimension))
    if not all(c.holds_at(point) for c in cons):  # certificate check, never expected to trip
        raise AssertionError(f"elimination produced a non-solution {point}")
    return point


def is_feasible(constraints: Iterable[LinearConstraint], dimension: int) -> bool:
    return find_point(constraints, dimension) is not None


# -- regions --------------------------------------------------------------

_CONTRADICTION_CONST = Fraction(1)


@dataclass(frozen=True)
class Region:
    """Closed convex polyhedron ``{x : every constraint holds}``."""

    dimension: int
    constraints: tuple[LinearConstraint, ...] = ()
    empty: bool = False

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for c in self.constraints:
            if c.dimension != self.dimension:
                raise DimensionMismatch(f"constraint {c} does not live in dimension {self.dimension}")
            if c.relation == "lt":
                raise ValueError("regions are closed; strict constraints are not allowed")

    @classmethod
    def everything(cls, dimension: int) -> "Region":
        return cls(dimension)

    @classmethod
    def nothing(cls, dimension: int) -> "Region":
        return cls(dimension, (LinearConstraint((0,) * dimension, "le", _CONTRADICTION_CONST),), empty=True)

    @property
    def names(self) -> tuple[str, ...]:
        return variable_names(self.dimension - 1)

    def contains_point(self, p: ParameterPoint | Sequence[Fraction]) -> bool:
        x = p.vector() if isinstance(p, ParameterPoint) else tuple(p)
        if len(x) != self.dimension:
            raise DimensionMismatch(f"point of dimension {len(x)} vs region of dimension {self.dimension}")
        return all(c.holds_at(x) for c in self.constraints)

    def equalities(self) -> tuple[LinearConstraint, ...]:
        return tuple(c for c in self.constraints if c.relation == "eq")

    def inequalities(self) -> tuple[LinearConstraint, ...]:
        return tuple(c for c in self.constraints if c.relation == "le")

    def pretty(self) -> str:
        if self.empty:
            return "empty"
        if not self.constraints:
            return "all"
        return ", ".join(c.pretty(self.names) for c in self.constraints)

    def __str__(self) -> str:
        return "{" + self.pretty() + "}"

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "constraints": [c.to_json() for c in self.constraints],
            "empty": self.empty,
            "text": self.pretty(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Region":
        return cls(int(data["dimension"]), tuple(LinearConstraint.from_json(c) for c in data["constraints"]),
                   bool(data.get("empty", False)))

    def substitute(self, index: int, value: Fraction) -> "Region":
        """Slice at ``x[index] = value``, dropping that coordinate."""
        out = []
        for c in self.constraints:
            coeffs = c.coeffs[:index] + c.coeffs[index + 1:]
            out.append(LinearConstraint(coeffs, c.relation, c.constant + c.coeffs[index] * value))
        return Region(self.dimension - 1, tuple(out), self.empty)


def _rref(rows: list[LinearConstraint], dim: int) -> list[tuple[int, list[Fraction]]]:
    """Reduced row echelon form of equality rows; returns ``(pivot column, row)`` pairs.

    Each row is ``coeffs + [constant]`` scaled so the pivot is 1.
    """
    mat = [list(c.coeffs) + [c.constant] for c in rows]
    pivot_cols: list[int] = []
    r = 0
    for col in range(dim):
        sel = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        piv = mat[r][col]
        mat[r] = [v / piv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivot_cols.append(col)
        r += 1
    return list(zip(pivot_cols, mat))


def simplify(region: Region) -> Region:
    """Canonical irredundant description of the same point set.

    Implicit equalities are detected and written as ``= 0`` constraints in
    reduced row echelon form; inequalities are reduced modulo those
    equalities, deduplicated and stripped of anything implied by the rest.
    """
    dim = region.dimension
    if region.empty:
        return Region.nothing(dim)
    tight = _tighten(region.constraints)
    if tight is None or not is_feasible(tight, dim):
        return Region.nothing(dim)

    eqs = [c for c in tight if c.relation == "eq"]
    ineqs = [c for c in tight if c.relation == "le"]
    implicit = [c for c in ineqs if not is_feasible([*tight, c.strict_version()], dim)]
    ineqs = [c for c in ineqs if c not in implicit]
    eqs += [LinearConstraint(c.coeffs, "eq", c.constant) for c in implicit]

    pivots = _rref(eqs, dim)
    eq_rows = [LinearConstraint(tuple(row[:-1]), "eq", row[-1]).normalized() for _, row in pivots]

    reduced = []
    for c in ineqs:
        coeffs, const = list(c.coeffs), c.constant
        for col, row in pivots:
            f = coeffs[col]
            if f:
                coeffs = [a - f * b for a, b in zip(coeffs, row[:-1])]
                const -= f * row[-1]
        reduced.append(LinearConstraint(tuple(coeffs), "le", const))
    kept = [c for c in (_tighten(reduced) or []) if c.relation == "le"]

    kept.sort(key=_sort_key, reverse=True)  # try dropping the least "natural" rows first
    i = 0
    while i < len(kept):
        c = kept[i]
        others = eq_rows + kept[:i] + kept[i + 1:]
        if is_feasible([*others, c.strict_negation()], dim):
            i += 1
        else:
            del kept[i]
    out = sorted(eq_rows + kept, key=_sort_key)
    return Region(dim, tuple(out))


def make_region(constraints: Iterable[LinearConstraint], dimension: int | None = None) -> Region:
    cons = tuple(constraints)
    if dimension is None:
        if not cons:
            raise ValueError("dimension needed for an unconstrained region")
        dimension = cons[0].dimension
    return simplify(Region(dimension, cons))


def intersect(a: Region, b: Region) -> Region:
    if a.dimension != b.dimension:
        raise DimensionMismatch(f"cannot intersect regions of dimension {a.dimension} and {b.dimension}")
    if a.empty or b.empty:
        return Region.nothing(a.dimension)
    return simplify(Region(a.dimension, a.constraints + b.constraints))


def contains_point(r: Region, p: ParameterPoint | Sequence[Fraction]) -> bool:
    return r.contains_point(p)


def separating_point(a: Region, b: Region) -> tuple[Fraction, ...] | None:
    """An exact point of ``a`` outside ``b``, or ``None`` when ``a`` is a subset of ``b``."""
    if a.dimension != b.dimension:
        raise DimensionMismatch(f"dimensions {a.dimension} and {b.dimension} differ")
    if a.empty:
        return None
    for c in b.constraints:
        negations = [c.strict_negation()]
        if c.relation == "eq":
            negations.append(c.strict_version())
        for neg in negations:
            x = find_point([*a.constraints, neg], a.dimension)
            if x is not None:
                return x
    return None


def region_subset(a: Region, b: Region) -> bool:
    return separating_point(a, b) is None


def region_equal(a: Region, b: Region) -> bool:
    return region_subset(a, b) and region_subset(b, a)


def difference_constraints(catalog: EnergyCatalog | Sequence[AffineEnergy], i: int) -> list[LinearConstraint]:
    """Raw ``U_i - U_j <= 0`` for every other form ``j`` (1-based ``i``)."""
    forms = list(catalog)
    target = forms[i - 1]
    out = []
    for j, other in enumerate(forms, start=1):
        if j == i:
            continue
        d = target - other
        out.append(LinearConstraint(d.vector(), "le", d.constant))
    return out


def argmin_region(catalog: EnergyCatalog | Sequence[AffineEnergy], i: int) -> Region:
    """Parameters at which form ``i`` is no larger than every other form."""
    forms = tuple(catalog)
    if not 1 <= i <= len(forms):
        raise IndexError(f"form index {i} outside 1..{len(forms)}")
    return _argmin(forms, i)


@lru_cache(maxsize=4096)
def _argmin(forms: tuple[AffineEnergy, ...], i: int) -> Region:
    return simplify(Region(len(forms[0].vector()), tuple(difference_constraints(forms, i))))


# -- text form ------------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*([A-Za-z]\w*)?(?:\s*/\s*(\d+))?")


def _parse_expr(text: str, names: Sequence[str]) -> tuple[list[Fraction], Fraction]:
    coeffs = [Fraction(0)] * len(names)
    const = Fraction(0)
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty expression")
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse linear expression {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        val = parse_rational(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(4):
            val /= int(m.group(4))
        if m.group(3):
            if m.group(3) not in names:
                raise ValueError(f"unknown variable {m.group(3)!r}; expected one of {tuple(names)}")
            coeffs[names.index(m.group(3))] += sign * val
        else:
            const += sign * val
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ValueError(f"cannot parse linear expression {text!r}")
    return coeffs, const


def parse_constraint(text: str, names: Sequence[str]) -> LinearConstraint:
    """Parse ``"J >= 0"``, ``"a2 >= a1"``, ``"2a - 3J/2 <= 1"`` etc."""
    m = re.match(r"^(.*?)(<=|>=|=)(.*)$", text.strip())
    if not m:
        raise ValueError(f"no relation in {text!r}")
    lhs, op, rhs = m.groups()
    lc, lk = _parse_expr(lhs, names)
    rc, rk = _parse_expr(rhs, names)
    coeffs = [a - b for a, b in zip(lc, rc)]
    const = lk - rk
    if op == ">=":
        coeffs, const = [-c for c in coeffs], -const
    return LinearConstraint(tuple(coeffs), "eq" if op == "=" else "le", const)


def parse_region(text: str, r: int) -> Region:
    names = variable_names(r)
    parts = [p for p in text.split(",") if p.strip()]
    return Region(r + 1, tuple(parse_constraint(p, names) for p in parts))
