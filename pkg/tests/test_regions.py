import json
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import boundary_rational
from sos_cayley.energy import ParameterPoint
from sos_cayley.paper_tables import paper_catalog, paper_region_table
from sos_cayley.regions import (
    DimensionMismatch,
    LinearConstraint,
    Region,
    argmin_region,
    contains_point,
    difference_constraints,
    find_point,
    intersect,
    is_feasible,
    parse_region,
    region_equal,
    region_subset,
    separating_point,
    simplify,
)
from sos_cayley.theorems import compare_tables

F = Fraction


def R(text, r=1):
    return parse_region(text, r)


@pytest.fixture(scope="module")
def ti18():
    return paper_catalog("ti18")


@pytest.fixture(scope="module")
def p29():
    return paper_catalog("p29")


# -- argmin rows ----------------------------------------------------------

@pytest.mark.parametrize("row, text", [
    (17, "J <= 0, a <= 0"),
    (18, "J <= 0, a >= 0"),
    (16, "J <= 0, a = 0"),
    (6, "J >= 0, a >= 0"),
    (7, "J = 0, a = 0"),
    (8, "J = 0, a = 0"),
    (9, "J = 0, a = 0"),
])
def test_ti18_rows(ti18, row, text):
    assert region_equal(argmin_region(ti18, row), R(text))


def test_p29_row_27(p29):
    assert region_equal(argmin_region(p29, 27), R("J >= 0, a1 >= a2, a2 <= 0", 2))


def test_simplify_of_raw_difference_constraints(ti18):
    raw = difference_constraints(ti18, 17)
    assert len(raw) == 17
    out = simplify(Region(2, tuple(raw)))
    assert out.pretty() == R("J <= 0, a <= 0").pretty()
    assert len(out.constraints) == 2


# -- simplify -------------------------------------------------------------

def test_simplify_drops_implied():
    out = simplify(R("a <= 0, a <= 1"))
    assert len(out.constraints) == 1
    assert region_equal(out, R("a <= 0"))


def test_simplify_merges_opposite_pair():
    out = simplify(R("2a1 <= 2a2, 2a2 <= 2a1", 2))
    assert len(out.constraints) == 1
    (c,) = out.constraints
    assert c.relation == "eq"
    assert region_equal(out, R("a1 = a2", 2))


def test_simplify_detects_emptiness():
    assert simplify(R("J <= -1, J >= 1")).empty
    assert simplify(R("J + a <= 0, J >= 1, a >= 0")).empty
    assert not simplify(R("J + a <= 0, J >= 0, a >= 0")).empty


def test_simplify_finds_implicit_equality():
    out = simplify(R("J + a <= 0, J >= 0, a >= 0"))
    assert len(out.equalities()) == 2


# -- intersect / contains / subset ----------------------------------------

def test_intersections_from_the_periodic_table(p29):
    assert region_equal(intersect(argmin_region(p29, 3), argmin_region(p29, 21)), R("J = 0, a1 >= 0, a2 = 0", 2))
    assert region_equal(intersect(argmin_region(p29, 15), argmin_region(p29, 6)), R("J >= 0, a1 = 0, a2 >= 0", 2))


def test_intersect_idempotent(ti18):
    for i in range(1, 19):
        a = argmin_region(ti18, i)
        assert region_equal(intersect(a, a), a)


def test_intersect_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        intersect(R("J <= 0"), R("J <= 0", 2))
    with pytest.raises(DimensionMismatch):
        region_subset(R("J <= 0"), R("J <= 0", 2))


def test_contains_point_examples(ti18):
    a17 = R("J <= 0, a <= 0")
    assert contains_point(a17, (F(0), F(0)))
    assert not contains_point(a17, (F(1), F(-1)))
    a6 = argmin_region(ti18, 6)
    p = ParameterPoint.of(1, -1)
    assert not contains_point(a6, p)
    assert ti18.form(15).evaluate(p) == -5 < ti18.form(6).evaluate(p) == -3


def test_subset_examples(ti18):
    assert region_subset(R("J <= 0, a <= 0"), R("J <= 0"))
    assert not region_subset(R("J <= 0, a <= 0"), R("J <= 0, a >= 0"))
    x = separating_point(R("J <= 0, a <= 0"), R("J <= 0, a >= 0"))
    assert R("J <= 0, a <= 0").contains_point(x) and not R("J <= 0, a >= 0").contains_point(x)
    a7 = argmin_region(ti18, 7)
    assert region_subset(a7, R("J = 0, a = 0")) and region_subset(R("J = 0, a = 0"), a7)


def test_equality_negation_is_two_sided():
    # a half-line is not inside the line J = 0 on either side
    assert not region_subset(R("J >= 0"), R("J = 0"))
    assert not region_subset(R("J <= 0"), R("J = 0"))
    assert region_subset(R("J >= 0, J <= 0"), R("J = 0"))


# -- feasibility against an independent vertex oracle ----------------------

def _solve_square(rows, rhs):
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col] / a[col][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(a[i][n] / a[i][i] for i in range(n))


def _vertex_feasible(cons, dim):
    """A bounded closed polyhedron is non-empty iff it has a vertex."""
    for tight in combinations(cons, dim):
        x = _solve_square([c.coeffs for c in tight], [-c.constant for c in tight])
        if x is not None and all(c.holds_at(x) for c in cons):
            return True
    return False


def _random_boxed_system(rng, dim):
    box = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        box.append(LinearConstraint(tuple(e), "le", F(-3)))
        e[i] = -1
        box.append(LinearConstraint(tuple(e), "le", F(-3)))
    extra = []
    for _ in range(rng.randint(1, 5)):
        coeffs = tuple(F(rng.randint(-3, 3)) for _ in range(dim))
        rel = "eq" if rng.random() < 0.2 else "le"
        extra.append(LinearConstraint(coeffs, rel, F(rng.randint(-4, 4), rng.randint(1, 3))))
    return box + extra


@pytest.mark.parametrize("seed", range(300))
def test_find_point_agrees_with_vertex_oracle(seed):
    rng = random.Random(seed)
    dim = rng.choice((2, 3))
    cons = _random_boxed_system(rng, dim)
    # equalities become two inequalities for the oracle
    expanded = []
    for c in cons:
        expanded.append(LinearConstraint(c.coeffs, "le", c.constant))
        if c.relation == "eq":
            expanded.append(LinearConstraint(tuple(-v for v in c.coeffs), "le", -c.constant))
    x = find_point(cons, dim)
    assert (x is not None) == _vertex_feasible(expanded, dim)
    if x is not None:
        assert all(c.holds_at(x) for c in cons)


def test_strict_constraints():
    lt = LinearConstraint((F(1), F(0)), "lt", F(0))      # J < 0
    ge = LinearConstraint((F(-1), F(0)), "le", F(0))     # J >= 0
    assert not is_feasible([lt, ge], 2)
    x = find_point([lt, LinearConstraint((F(-1), F(0)), "le", F(-1))], 2)  # -1 <= J < 0
    assert find_point([lt, LinearConstraint((F(-1), F(0)), "le", F(1))], 2) is None  # J >= 1
    assert x is not None and -1 <= x[0] < 0


# -- catalog-level properties ----------------------------------------------

def _random_point(rng, r, boundary=True):
    draw = boundary_rational if boundary else (lambda g: F(g.randint(-30, 30), g.randint(1, 6)))
    return ParameterPoint(draw(rng), tuple(draw(rng) for _ in range(r)))


@pytest.mark.parametrize("cid", ["ti18", "p29"])
def test_coverage_and_oracle_equivalence(cid, rng):
    cat = paper_catalog(cid)
    regions = [argmin_region(cat, i) for i in range(1, len(cat) + 1)]
    for _ in range(2000):
        p = _random_point(rng, cat.r)
        low = cat.minimum(p)
        inside = [reg.contains_point(p) for reg in regions]
        assert any(inside)
        assert inside == [f.evaluate(p) == low for f in cat]


@pytest.mark.parametrize("cid", ["ti18", "p29"])
def test_simplify_preserves_points(cid, rng):
    cat = paper_catalog(cid)
    for i in range(1, len(cat) + 1):
        raw = Region(cat.r + 1, tuple(difference_constraints(cat, i)))
        done = simplify(raw)
        for _ in range(60):
            p = _random_point(rng, cat.r)
            assert raw.contains_point(p) == done.contains_point(p)


def test_subset_is_a_partial_order(p29):
    regions = [argmin_region(p29, i) for i in range(1, 30)]
    regions += [R("J <= 0", 2), R("J = 0", 2), R("a1 = a2", 2), Region.everything(3)]
    for a in regions:
        assert region_subset(a, a)
    for a, b in combinations(regions, 2):
        if region_subset(a, b) and region_subset(b, a):
            assert region_equal(a, b)
    rng = random.Random(3)
    for _ in range(400):
        a, b, c = rng.sample(regions, 3)
        if region_subset(a, b) and region_subset(b, c):
            assert region_subset(a, c)


# -- published tables -------------------------------------------------------

def test_published_rows_as_printed():
    ti = paper_region_table("ti18")
    assert len(ti) == 18
    assert region_equal(ti[5], R("J >= 0, a >= 0"))
    assert region_equal(ti[0], R("J = 0, a >= 0"))
    p = paper_region_table("p29")
    assert len(p) == 29
    assert region_equal(p[14], R("J >= 0, a1 <= 0, a2 >= a1", 2))


def test_ti18_table_matches():
    assert all(row["match"] for row in compare_tables("ti18"))


def test_p29_mismatches_are_exactly_the_known_rows(p29):
    rows = compare_tables("p29")
    bad = {row["row"] for row in rows if not row["match"]}
    assert bad == {16, 17, 28, 29}
    table = paper_region_table("p29")
    for row in rows:
        if row["match"]:
            continue
        i = row["row"]
        computed = argmin_region(p29, i)
        for key, inside, outside in (("computed_not_published", computed, table[i - 1]),
                                     ("published_not_computed", table[i - 1], computed)):
            if row[key] is None:
                continue
            x = tuple(F(v) for v in row[key])
            assert inside.contains_point(x) and not outside.contains_point(x)


def test_p29_row_16_recomputed(p29):
    assert region_equal(argmin_region(p29, 16), R("J <= 0, a1 = 0, a2 >= 0", 2))
    # the printed row claims J >= 0; at (1, 0, 0) a strictly lower form exists
    p = ParameterPoint.of(1, 0, 0)
    assert p29.form(16).evaluate(p) > p29.minimum(p)


# -- serialisation ----------------------------------------------------------

@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
                          st.sampled_from(["le", "eq"]), st.integers(-5, 5)), max_size=5))
def test_region_json_roundtrip(rows):
    reg = Region(3, tuple(LinearConstraint(tuple(F(c) for c in co), rel, F(k)) for co, rel, k in rows))
    back = Region.from_json(json.loads(json.dumps(reg.to_json())))
    assert back == reg


def test_constraint_normalisation():
    a = LinearConstraint((F(2), F(-4)), "le", F(6)).normalized()
    b = LinearConstraint((F(1, 3), F(-2, 3)), "le", F(1)).normalized()
    assert a == b
    e = LinearConstraint((F(-2), F(2)), "eq", F(0)).normalized()
    assert e.coeffs[0] > 0
