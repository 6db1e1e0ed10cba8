import random

import pytest
from hypothesis import given, settings, strategies as st

from sigmaforge import (
    GroupMismatchError,
    GroupSet,
    SequenceMS,
    Subgroup,
    coset_profile,
    deficiency,
    delta,
    fold_to_quotient,
    gamma,
    generated_subgroup,
    make_group,
    shift,
    stabilizer,
    subsequence_sums,
    subset_sums,
    sumset,
)
from conftest import naive_stab, naive_subseq_sigma, naive_sigma, naive_sumset


def gset(g, idxs):
    return GroupSet.from_indices(g, idxs)


# -- sumset ----------------------------------------------------------------

def test_sumset_identity_shift():
    g = make_group([7])
    A = gset(g, [2, 5, 6])
    assert sumset(gset(g, [0]), A) == A


def test_sumset_direct_example():
    g = make_group([6])
    assert sumset(gset(g, [1, 2]), gset(g, [0, 3])).members() == [1, 2, 4, 5]


def test_sumset_complete_when_large():
    # |A| + |B| > |G| forces A + B = G
    g = make_group([7])
    rng = random.Random(1)
    for _ in range(50):
        ka = rng.randint(1, 7)
        kb = 8 - ka
        A = gset(g, rng.sample(range(7), ka))
        B = gset(g, rng.sample(range(7), kb))
        assert sumset(A, B).card == 7


def test_sumset_empty_and_mismatch():
    g = make_group([6])
    assert sumset(GroupSet(g), gset(g, [1])).card == 0
    with pytest.raises(GroupMismatchError):
        sumset(gset(g, [1]), gset(make_group([7]), [1]))


@given(
    st.lists(st.integers(1, 5), min_size=1, max_size=3),
    st.data(),
)
@settings(max_examples=60)
def test_sumset_matches_oracle(factors, data):
    g = make_group(factors)
    A = data.draw(st.sets(st.integers(0, g.order - 1)))
    B = data.draw(st.sets(st.integers(0, g.order - 1)))
    got = sumset(gset(g, A), gset(g, B)).members()
    assert got == (naive_sumset(g, A, B) if A and B else [])


# -- shift -----------------------------------------------------------------

def test_shift_examples():
    g = make_group([5])
    A = gset(g, [0, 1])
    assert shift(A, g.element(0)) == A
    assert shift(A, g.element(4)).members() == [0, 4]
    assert shift(shift(A, g.element(3)), -g.element(3)) == A


def test_shift_preserves_cardinality():
    g = make_group([4, 3])
    rng = random.Random(2)
    for _ in range(30):
        A = gset(g, rng.sample(range(12), rng.randint(0, 12)))
        assert shift(A, g.element(rng.randrange(4), rng.randrange(3))).card == A.card


# -- subset and subsequence sums ------------------------------------------

def test_sigma_examples():
    g5 = make_group([5])
    assert subset_sums(GroupSet(g5)).members() == [0]
    assert subset_sums(gset(g5, [1, 2])).members() == [0, 1, 2, 3]
    g8 = make_group([8])
    assert subset_sums(gset(g8, [2, 4])).members() == [0, 2, 4, 6]


@given(st.integers(2, 16), st.sets(st.integers(0, 15), max_size=8))
@settings(max_examples=60)
def test_sigma_matches_oracle(n, elems):
    g = make_group([n])
    elems = {x % n for x in elems}
    assert subset_sums(gset(g, elems)).members() == naive_sigma(g, elems)


def test_sigma_contains_set_and_zero():
    g = make_group([3, 4])
    rng = random.Random(3)
    for _ in range(40):
        A = gset(g, rng.sample(range(12), rng.randint(0, 6)))
        sig = subset_sums(A)
        assert 0 in sig
        assert sig.mask & A.mask == A.mask


def test_sigma_monotone():
    g = make_group([15])
    rng = random.Random(4)
    for _ in range(40):
        A = rng.sample(range(15), rng.randint(0, 8))
        B = rng.sample(A, rng.randint(0, len(A)))
        sa = subset_sums(gset(g, A)).mask
        sb = subset_sums(gset(g, B)).mask
        assert sb & sa == sb


def test_subsequence_sums_examples():
    g9 = make_group([9])
    assert subsequence_sums(SequenceMS(g9)).members() == [0]
    assert subsequence_sums(SequenceMS(g9, {3: 2})).members() == [0, 3, 6]


def test_subsequence_matches_oracle_and_set_case():
    g = make_group([10])
    rng = random.Random(5)
    for _ in range(30):
        terms = [rng.randrange(10) for _ in range(rng.randint(0, 7))]
        a = SequenceMS.from_terms(g, terms)
        assert subsequence_sums(a).members() == naive_subseq_sigma(g, terms)
    # all-distinct sequence equals subset sums of the support
    distinct = rng.sample(range(10), 5)
    a = SequenceMS.from_terms(g, distinct)
    assert subsequence_sums(a) == subset_sums(gset(g, distinct))


# -- stabilizer ------------------------------------------------------------

def test_stabilizer_examples():
    g6 = make_group([6])
    assert stabilizer(GroupSet.full(g6)).members == tuple(range(6))
    assert stabilizer(GroupSet(g6)).members == tuple(range(6))
    assert stabilizer(gset(g6, [0, 3])).members == (0, 3)
    g5 = make_group([5])
    assert stabilizer(gset(g5, [0, 1])).members == (0,)


@given(st.lists(st.integers(1, 4), min_size=1, max_size=3), st.data())
@settings(max_examples=60)
def test_stabilizer_matches_shift_oracle(factors, data):
    g = make_group(factors)
    A = data.draw(st.sets(st.integers(0, g.order - 1)))
    assert list(stabilizer(gset(g, A)).members) == naive_stab(g, A)


def test_stabilizer_monotone_under_sumset():
    g = make_group([12])
    rng = random.Random(6)
    for _ in range(50):
        S = gset(g, rng.sample(range(12), rng.randint(1, 8)))
        T = gset(g, rng.sample(range(12), rng.randint(1, 8)))
        hs = stabilizer(S).mask
        hst = stabilizer(sumset(S, T)).mask
        assert hs & hst == hs


# -- gamma / delta / deficiency -------------------------------------------

def test_gamma_delta_examples():
    g5 = make_group([5])
    S = gset(g5, [0, 1])
    assert delta(S, g5.element(0)) == 0
    assert delta(S, g5.element(1)) == 1
    assert gamma(S, g5.element(1)) == 1


def test_gamma_plus_delta_and_complement():
    g = make_group([2, 6])
    rng = random.Random(7)
    for _ in range(60):
        S = gset(g, rng.sample(range(12), rng.randint(0, 12)))
        x = g.element(rng.randrange(2), rng.randrange(6))
        assert gamma(S, x) + delta(S, x) == S.card
        assert delta(S, x) == delta(S.complement(), x)


def test_delta_subadditive():
    g = make_group([16])
    rng = random.Random(8)
    for _ in range(60):
        S = gset(g, rng.sample(range(16), rng.randint(0, 16)))
        x, y = g.element(rng.randrange(16)), g.element(rng.randrange(16))
        assert delta(S, x + y) <= delta(S, x) + delta(S, y)


def test_deficiency_examples():
    g = make_group([6])
    S = gset(g, [0, 1, 2])
    assert deficiency(S, gset(g, [0, 1])) == 0  # Q inside S
    assert deficiency(S, gset(g, [4, 5])) == 0  # Q disjoint from S
    assert deficiency(S, gset(g, [1, 2, 3, 4])) == 2


# -- coset machinery -------------------------------------------------------

def test_coset_profile_examples():
    g = make_group([6])
    h = Subgroup(g, [0, 3])
    inside = SequenceMS.from_terms(g, [0, 3, 3])
    assert coset_profile(inside, h).rho == ()
    a = SequenceMS.from_terms(g, [1, 1, 2])
    assert coset_profile(a, h).rho == (2, 1)
    # distinct terms against the trivial subgroup: singleton cosets
    triv = Subgroup.trivial(g)
    b = SequenceMS.from_terms(g, [0, 1, 4, 5])
    assert coset_profile(b, triv).rho == (3,)


def test_coset_profile_non_increasing():
    g = make_group([4, 4])
    h = generated_subgroup(g, gset(g, [g.encode((2, 0))]))
    rng = random.Random(9)
    for _ in range(30):
        a = SequenceMS.from_terms(
            g, [rng.randrange(16) for _ in range(rng.randint(0, 10))]
        )
        rho = coset_profile(a, h).rho
        assert all(rho[i] >= rho[i + 1] for i in range(len(rho) - 1))
        if rho:
            assert rho[0] <= g.order // len(h) - 1


def test_fold_to_quotient():
    g = make_group([6])
    h = Subgroup(g, [0, 3])
    assert fold_to_quotient(gset(g, [0, 3]), h).members() == [0]
    assert fold_to_quotient(GroupSet.full(g), h).members() == [0, 1, 2]
    assert fold_to_quotient(gset(g, [1, 4]), h).members() == [1]


def test_quotient_consistency_with_sigma():
    # |Sigma(A)| = |H| * |fold(Sigma(A), H)| when H = stab(Sigma(A))
    g = make_group([12])
    rng = random.Random(10)
    for _ in range(40):
        A = gset(g, rng.sample(range(12), rng.randint(0, 8)))
        sig = subset_sums(A)
        H = stabilizer(sig)
        folded = fold_to_quotient(sig, H)
        assert sig.card == len(H) * folded.card
        assert sig.card % len(H) == 0


def test_set_literals():
    g = make_group([6])
    assert gset(g, [5, 1, 3]).literal() == "1;3;5"
    g2 = make_group([2, 3])
    s = GroupSet.from_indices(g2, [g2.encode((1, 0)), g2.encode((0, 2))])
    assert s.literal() == "1,0;0,2"
