import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from quivercount.conservative import ConservativeFit, CountTable, build_count_table
from quivercount.exact import LaurentPoly, RatFunc, T
from quivercount.plethystic import (
    CommSeries,
    a_roundtrip_residual,
    adams,
    build_hua_lhs,
    exp_pleth,
    hua_tuples,
    log_pleth,
    s_roundtrip_residual,
    series_exp,
    series_log,
    solve_a,
    solve_s,
)
from quivercount.quiver import Quiver, dim_vectors
from strategies import small_ints

TWO_LOOP = Quiver.loops(2)
JORDAN = Quiver.jordan()


def oracle_table(q: Quiver, maxdeg: int) -> CountTable:
    """Count table filled from the inclusion-exclusion closed form (no enumeration)."""
    q = q.extend()
    fits = {v: ConservativeFit(v, [], oracles.conservative_closed_form(q, v), None) for v in dim_vectors(q.n, maxdeg)}
    return CountTable(q, maxdeg, fits)


@st.composite
def comm_series(draw, nvars=None, maxdeg=None, constant=0):
    n = nvars or draw(st.integers(1, 2))
    d = maxdeg if maxdeg is not None else draw(st.integers(1, 4))
    coeffs = {}
    for v in dim_vectors(n, d, mindeg=1):
        if draw(st.booleans()):
            num = LaurentPoly(draw(st.lists(small_ints, max_size=3)), draw(st.integers(-1, 2)))
            den = draw(st.sampled_from([LaurentPoly.one(), T - 1, T + 1, T**2 + 1]))
            coeffs[v] = RatFunc(num, den)
    coeffs[(0,) * n] = RatFunc.coerce(constant)
    return CommSeries(n, d, coeffs)


def X1(maxdeg, coeff=1, power=1):
    return CommSeries(1, maxdeg, {(power,): coeff})


def test_adams_examples():
    assert adams(X1(3, T), 2) == X1(3, T**2, 2)
    const = CommSeries(1, 3, {(0,): T + 2})
    assert adams(const, 3) == CommSeries(1, 3, {(0,): T**3 + 2})
    with pytest.raises(ValueError):
        adams(const, 0)


def test_exp_of_variable_is_geometric():
    assert exp_pleth(X1(3)) == CommSeries(1, 3, {(k,): 1 for k in range(4)})
    assert exp_pleth(X1(2, T)) == CommSeries(1, 2, {(0,): 1, (1,): T, (2,): T**2})


def test_exp_log_domain_errors():
    with pytest.raises(ValueError):
        exp_pleth(CommSeries(1, 2, {(0,): 1}))
    with pytest.raises(ValueError):
        log_pleth(CommSeries(1, 2, {(0,): 2}))


def test_ordinary_exp_log():
    f = X1(4, Fraction(1, 2))
    assert series_log(series_exp(f)) == f
    # exp(X) = sum X^k / k!
    assert series_exp(X1(3)) == CommSeries(1, 3, {(0,): 1, (1,): 1, (2,): Fraction(1, 2), (3,): Fraction(1, 6)})


@given(comm_series())
@settings(max_examples=120)
def test_log_inverts_exp(f):
    assert log_pleth(exp_pleth(f)) == f


@given(comm_series(constant=1))
@settings(max_examples=120)
def test_exp_inverts_log(g):
    assert exp_pleth(log_pleth(g)) == g


@given(st.data())
@settings(max_examples=80)
def test_exp_is_multiplicative(data):
    f = data.draw(comm_series(nvars=2, maxdeg=3))
    g = data.draw(comm_series(nvars=2, maxdeg=3))
    assert exp_pleth(f + g) == exp_pleth(f) * exp_pleth(g)


@given(comm_series(), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=120)
def test_adams_composition(f, a, b):
    assert adams(adams(f, a), b) == adams(f, a * b)


@given(st.data())
@settings(max_examples=60)
def test_adams_is_a_ring_map(data):
    f = data.draw(comm_series())
    g = data.draw(comm_series(nvars=f.nvars, maxdeg=f.maxdeg))
    assert adams(f * g, 2) == adams(f, 2) * adams(g, 2)
    assert adams(f + g, 3) == adams(f, 3) + adams(g, 3)


def test_hua_tuples_degree_two_one_variable():
    def degree(parts):
        return sum(s * sum(v) for s, v in enumerate(parts, 1))

    deg2 = sorted(t for t in hua_tuples(1, 2) if degree(t) == 2)
    assert deg2 == [((0,), (1,)), ((2,),)]


@pytest.mark.parametrize("n, maxdeg", [(1, 5), (2, 3), (3, 2)])
def test_hua_tuples_match_naive_enumeration(n, maxdeg):
    # search well beyond r = maxdeg; nothing longer may appear
    naive = set()
    vecs = list(dim_vectors(n, maxdeg))
    for r in range(1, maxdeg + 3):
        for parts in itertools.product(vecs, repeat=r):
            if any(parts[-1]) and sum(s * sum(v) for s, v in enumerate(parts, 1)) <= maxdeg:
                naive.add(parts)
    got = list(hua_tuples(n, maxdeg))
    assert len(got) == len(set(got))
    assert set(got) == naive


def test_hua_lhs_examples():
    table = oracle_table(TWO_LOOP, 2)
    lhs = build_hua_lhs(table, 2)
    assert lhs[(0,)] == RatFunc.one()
    assert lhs[(1,)] == RatFunc(T + 1)
    # capping the tuple length at the degree changes nothing
    assert build_hua_lhs(table, 2, max_parts=2) == lhs
    assert build_hua_lhs(table, 2, max_parts=1) != lhs


def test_solve_small_cases():
    for q, expected in [(TWO_LOOP, T**2 - 1), (JORDAN, T - 1)]:
        table = build_count_table(q, 1)
        s = solve_s(table, 1)[(1,)]
        a = solve_a(table, 1)[(1,)]
        assert s.poly() == expected and a.poly() == expected
        assert s.integer_coeffs and a.integer_coeffs
    assert solve_s(build_count_table(JORDAN, 0), 0) == {}


@pytest.mark.slow
def test_two_loop_degree_two_values():
    table = build_count_table(TWO_LOOP, 2)
    s = solve_s(table, 2)
    a = solve_a(table, 2)
    assert s[(2,)].poly() == T**5 - T**4
    assert a[(2,)].poly() == T**5 + T**3 - 2 * T**2 - T + 1


@pytest.mark.slow
def test_two_loop_degree_two_against_class_counts():
    table = oracle_table(TWO_LOOP, 2)
    s = solve_s(table, 2)[(2,)].poly()
    a = solve_a(table, 2)[(2,)].poly()
    for p in (2, 3):
        counts = oracles.one_vertex_class_counts(TWO_LOOP, 2, p)
        assert s(p) == counts["abs_simple"]
        assert a(p) == counts["abs_indecomposable"]


@pytest.mark.parametrize("q, maxdeg", [(JORDAN, 4), (TWO_LOOP, 3), (Quiver.a2(), 3), (Quiver.kronecker(), 2)])
def test_round_trips_vanish(q, maxdeg):
    table = oracle_table(q, maxdeg)
    s = solve_s(table, maxdeg)
    a = solve_a(table, maxdeg)
    assert s_roundtrip_residual(table, maxdeg, {v: r.value for v, r in s.items()}).is_zero()
    assert a_roundtrip_residual(table, maxdeg, {v: r.value for v, r in a.items()}).is_zero()
    assert all(r.integer_coeffs for r in s.values())
    assert all(r.integer_coeffs for r in a.values())


def test_round_trip_detects_wrong_values():
    table = oracle_table(TWO_LOOP, 2)
    s = {v: r.value for v, r in solve_s(table, 2).items()}
    s[(2,)] = s[(2,)] + 1
    assert not s_roundtrip_residual(table, 2, s).is_zero()


def test_jordan_values():
    table = oracle_table(JORDAN, 4)
    assert {v: r.poly() for v, r in solve_s(table, 4).items()} == {
        (1,): T - 1, (2,): LaurentPoly.zero(), (3,): LaurentPoly.zero(), (4,): LaurentPoly.zero()}
    assert all(r.poly() == T - 1 for r in solve_a(table, 4).values())


def test_uncovered_table_rejected():
    with pytest.raises(ValueError):
        solve_s(oracle_table(JORDAN, 1), 2)
