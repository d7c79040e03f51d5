import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from oracles import generated_subrep
from quivercount import fp
from quivercount.counts import CountKind, count_poly
from quivercount.exact import eval_at
from quivercount.ffrep import (
    BudgetExceeded,
    ClosureError,
    FFRep,
    SubRep,
    count_conservative,
    direct_sum,
    enumerate_and_classify,
    enumerate_subreps,
    enumerate_subspaces,
    im_minus,
    im_plus,
    is_conservative,
    is_epimorphic,
    is_monomorphic,
    is_nilpotent,
    is_nilpotent_plus,
    iter_reps,
    max_epimorphic_subrep,
    max_nilpotent_subrep,
    quotient,
    restrict,
    verify_unique_factorization,
)
from quivercount.quiver import Quiver

JORDAN = Quiver.jordan()
TWO_LOOP = Quiver.loops(2)
SMALL_QUIVERS = [JORDAN, TWO_LOOP, Quiver.a2().extend(), Quiver.kronecker().extend(), Quiver(2, ((1, 2), (2, 1)))]


def rep(q, dims, *mats, p=2):
    return FFRep(q, p, dims, tuple(np.array(m) for m in mats))


@st.composite
def reps(draw, max_dim=2, primes=(2, 3), q=None, p=None):
    q = q or draw(st.sampled_from(SMALL_QUIVERS))
    p = p or draw(st.sampled_from(primes))
    dims = tuple(draw(st.integers(0, max_dim)) for _ in range(q.n))
    mats = tuple(
        np.array(draw(st.lists(st.integers(0, p - 1), min_size=dims[t - 1] * dims[s - 1],
                               max_size=dims[t - 1] * dims[s - 1]))).reshape(dims[t - 1], dims[s - 1])
        for s, t in q.arrows
    )
    return FFRep(q, p, dims, mats)


@st.composite
def rep_with_subreps(draw):
    m = draw(reps())

    def vecs():
        return {i: draw(st.lists(st.lists(st.integers(0, m.p - 1), min_size=m.dims[i - 1], max_size=m.dims[i - 1]),
                                 max_size=2)) for i in m.quiver.vertices}

    small = generated_subrep(m, vecs())
    extra = vecs()
    for i in m.quiver.vertices:
        extra[i] = [list(r) for r in small.basis(i)] + extra[i]
    big = generated_subrep(m, extra)
    return m, small, big


# -- examples -------------------------------------------------------------


def test_predicates_on_one_dim_two_loop():
    m = rep(TWO_LOOP, (1,), [[1]], [[0]])
    assert is_monomorphic(m) and is_epimorphic(m) and is_conservative(m)
    assert not is_nilpotent(m)
    z = FFRep.zero(TWO_LOOP, (2,), 2)
    assert not is_monomorphic(z) and not is_epimorphic(z) and is_nilpotent(z)
    e = FFRep.zero(TWO_LOOP, (0,), 3)
    assert is_monomorphic(e) and is_epimorphic(e) and is_nilpotent(e)


def test_im_operators_examples():
    zero1 = rep(TWO_LOOP, (1,), [[0]], [[0]])
    assert im_minus(zero1, SubRep.zero(2, (1,))).is_full()
    assert im_plus(zero1, SubRep.full(2, (1,))).is_zero()
    m = rep(TWO_LOOP, (1,), [[1]], [[0]])
    assert im_minus(m, SubRep.zero(2, (1,))).is_zero()
    assert im_minus(m, SubRep.full(2, (1,))).is_full()
    assert im_plus(m, SubRep.full(2, (1,))).is_full()
    assert im_plus(m, SubRep.zero(2, (1,))).is_zero()


def test_empty_intersection_and_sum_conventions():
    # on the unextended A2 the sink has no outgoing and the source no incoming arrows
    m = rep(Quiver.a2(), (1, 1), [[1]])
    assert im_minus(m, SubRep.zero(2, (1, 1))).sub_dims == (0, 1)
    assert im_plus(m, SubRep.full(2, (1, 1))).sub_dims == (0, 1)


def test_closure_violation_raises():
    m = rep(JORDAN, (2,), [[0, 1], [0, 0]])
    bad = SubRep.from_rows(2, (2,), [[[0, 1]]])
    with pytest.raises(ClosureError):
        im_minus(m, bad)
    with pytest.raises(ClosureError):
        quotient(m, bad)


def test_max_subreps_examples():
    nil = rep(TWO_LOOP, (2,), [[0, 1], [0, 0]], [[0, 0], [0, 0]])
    assert max_nilpotent_subrep(nil).is_full()
    assert max_epimorphic_subrep(nil).is_zero()
    m = rep(TWO_LOOP, (1,), [[1]], [[0]])
    assert max_nilpotent_subrep(m).is_zero()
    assert max_epimorphic_subrep(m).is_full()


def test_jordan_block_is_nilpotent_and_quotient():
    m = rep(JORDAN, (2,), [[0, 1], [0, 0]])
    assert is_nilpotent(m) and is_nilpotent_plus(m)
    e1 = SubRep.from_rows(2, (2,), [[[1, 0]]])
    qm = quotient(m, e1)
    assert qm.dims == (1,) and not qm.mats[0].any()
    assert quotient(m, SubRep.zero(2, (2,))) == m
    assert quotient(m, SubRep.full(2, (2,))).dims == (0,)


def test_subrep_enumeration_examples():
    assert len(enumerate_subreps(FFRep.zero(JORDAN, (1,), 2))) == 2
    assert len(enumerate_subreps(FFRep.zero(JORDAN, (2,), 2))) == 5
    block = rep(JORDAN, (2,), [[0, 1], [0, 0]])
    subs = enumerate_subreps(block)
    assert len(subs) == 3
    assert [s.sub_dims for s in subs] == [(0,), (1,), (2,)]


def test_subspace_counts_are_gaussian_binomials():
    assert len(enumerate_subspaces(3, 2)) == 1 + 7 + 7 + 1
    assert len(enumerate_subspaces(2, 3)) == 1 + 4 + 1


def test_classify_examples():
    c = enumerate_and_classify(TWO_LOOP, (2,), 2)
    assert (c.total, c.nilpotent, c.monomorphic, c.epimorphic) == (256, 10, 210, 210)
    c = enumerate_and_classify(TWO_LOOP, (1,), 3)
    assert (c.total, c.nilpotent, c.monomorphic, c.epimorphic, c.conservative) == (9, 1, 8, 8, 8)
    for q in SMALL_QUIVERS:
        c = enumerate_and_classify(q, (0,) * q.n, 5)
        assert (c.total, c.nilpotent, c.monomorphic, c.epimorphic, c.conservative) == (1,) * 5


def test_classify_json():
    assert enumerate_and_classify(JORDAN, (1,), 2).to_json() == {
        "q": 2, "dim": [1], "total": 2, "nilpotent": 1, "monomorphic": 1, "epimorphic": 1, "conservative": 1,
    }


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        enumerate_and_classify(TWO_LOOP, (3,), 2, budget=1000)
    with pytest.raises(BudgetExceeded):
        list(iter_reps(TWO_LOOP, (2,), 2, budget=100))


def test_chunking_does_not_change_counts():
    a = enumerate_and_classify(Quiver.kronecker().extend(), (1, 2, 0), 3, chunk=7)
    b = enumerate_and_classify(Quiver.kronecker().extend(), (1, 2, 0), 3)
    assert a == b


@pytest.mark.parametrize("q, v, p", [(TWO_LOOP, (2,), 2), (TWO_LOOP, (2,), 3), (JORDAN, (3,), 2),
                                     (Quiver.kronecker().extend(), (1, 1, 1), 2), (Quiver.a2().extend(), (1, 1, 1), 3)])
def test_rank_reduced_conservative_count(q, v, p):
    assert count_conservative(q, v, p) == enumerate_and_classify(q, v, p).conservative


def test_batched_classification_matches_per_rep_predicates():
    q = Quiver.kronecker().extend()
    v, p = (1, 2, 1), 2
    c = enumerate_and_classify(q, v, p)
    tally = [0, 0, 0, 0]
    for m in iter_reps(q, v, p):
        tally[0] += is_nilpotent(m)
        tally[1] += is_monomorphic(m)
        tally[2] += is_epimorphic(m)
        tally[3] += is_conservative(m)
    assert tally == [c.nilpotent, c.monomorphic, c.epimorphic, c.conservative]
    for kind, got in zip([CountKind.NILPOTENT, CountKind.MONOMORPHIC, CountKind.EPIMORPHIC], tally):
        assert eval_at(count_poly(q, v, kind), p) == got


def test_unique_factorization_on_zero_rep():
    chk = verify_unique_factorization(FFRep.zero(TWO_LOOP, (2,), 2))
    assert chk.ok and len(chk.nil_mono) == 1 and len(chk.epi_nil) == 1
    assert chk.to_json()["ok"] is True


# -- properties -------------------------------------------------------------


@given(rep_with_subreps())
@settings(max_examples=150)
def test_im_operators_monotone_and_extensive(data):
    m, small, big = data
    assert small <= big
    assert small <= im_minus(m, small)
    assert im_plus(m, small) <= small
    assert im_minus(m, small) <= im_minus(m, big)
    assert im_plus(m, small) <= im_plus(m, big)


@given(reps(max_dim=2))
@settings(max_examples=150)
def test_chains_stabilize_within_total_dimension(m):
    cur = SubRep.zero(m.p, m.dims)
    for _ in range(sum(m.dims)):
        cur = im_minus(m, cur)
    assert im_minus(m, cur) == cur == max_nilpotent_subrep(m)
    cur = SubRep.full(m.p, m.dims)
    for _ in range(sum(m.dims)):
        cur = im_plus(m, cur)
    assert im_plus(m, cur) == cur == max_epimorphic_subrep(m)


@given(reps(max_dim=2))
@settings(max_examples=150)
def test_nilpotency_characterizations_agree(m):
    assert is_nilpotent(m) == is_nilpotent_plus(m) == oracles.path_nilpotent(m.quiver, m.dims, m.p, m.mats)


@given(reps(max_dim=2))
@settings(max_examples=150)
def test_quotients_by_maximal_subreps(m):
    n = max_nilpotent_subrep(m)
    e = max_epimorphic_subrep(m)
    assert is_nilpotent(restrict(m, n)) and is_monomorphic(quotient(m, n))
    assert is_epimorphic(restrict(m, e)) and is_nilpotent(quotient(m, e))


@given(st.data())
@settings(max_examples=150)
def test_predicates_respect_direct_sums(data):
    a = data.draw(reps(max_dim=2))
    b = data.draw(reps(max_dim=2, q=a.quiver, p=a.p))
    s = direct_sum(a, b)
    for pred in (is_monomorphic, is_epimorphic, is_nilpotent):
        assert pred(s) == (pred(a) and pred(b))


@given(rep_with_subreps())
@settings(max_examples=100)
def test_restrict_and_quotient_dimensions(data):
    m, sub, _ = data
    r = restrict(m, sub)
    qm = quotient(m, sub)
    assert r.dims == sub.sub_dims
    assert tuple(a + b for a, b in zip(r.dims, qm.dims)) == m.dims


def test_sigma_tau_shapes():
    m = rep(Quiver.kronecker().extend(), (1, 2, 1), [[1], [0]], [[0], [1]], [[1]], [[1, 1]])
    assert m.sigma(1).shape == (4, 1)
    assert m.tau(2).shape == (2, 2)
    assert fp.rank(m.tau(2), 2) == 2
