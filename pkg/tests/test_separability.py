import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rsc.finite_field import make_field, set_product, set_sum
from rsc.separability import (
    BudgetExceeded,
    Mode,
    NotSeparable,
    SearchBudget,
    SepWitness,
    check_witness,
    field_separable_lemma31,
    lemma31_branches,
    prop32_condition,
    r_index,
    search_separable,
    subfield_witness,
    witness_add_subgroups,
    witness_mult_cyclic,
    witness_prop32,
)

# independent oracle: bitsets over Z/p (sums) and Z/(p-1) via logs (products)


def _rot(mask, k, n):
    k %= n
    full = (1 << n) - 1
    return ((mask << k) | (mask >> (n - k))) & full


def oracle_prime(p, U, w1, w2, mode):
    """Exhaustive: some E, F inside U of sizes min(w, |U|) cover U."""
    U = sorted(U)
    F = make_field(p)
    if mode == "additive":
        target = sum(1 << u for u in U)
        for E in itertools.combinations(U, min(w1, len(U))):
            for Fs in itertools.combinations(U, min(w2, len(U))):
                fm = sum(1 << f for f in Fs)
                acc = 0
                for e in E:
                    acc |= _rot(fm, e, p)
                if acc & target == target:
                    return True
        return False
    n = p - 1
    nz = [u for u in U if u]
    target = sum(1 << F.log(u) for u in nz)
    for a in range(min(w1, len(U)) + 1):
        for b in range(min(w2, len(U)) + 1):
            if not (1 <= a <= w1 and 1 <= b <= w2):
                continue
            for E in itertools.combinations(U, a):
                for Fs in itertools.combinations(U, b):
                    if 0 in U and 0 not in E and 0 not in Fs:
                        continue
                    fm = sum(1 << F.log(f) for f in Fs if f)
                    acc = 0
                    for e in E:
                        if e:
                            acc |= _rot(fm, F.log(e), n)
                    if acc & target == target:
                        return True
    return False


def oracle_xor(m, U, w1, w2):
    U = sorted(U)
    for E in itertools.combinations(U, min(w1, len(U))):
        for Fs in itertools.combinations(U, min(w2, len(U))):
            if set(U) <= {e ^ f for e in E for f in Fs}:
                return True
    return False


@settings(max_examples=150)
@given(
    st.sampled_from([5, 7, 11, 13]),
    st.data(),
    st.integers(1, 3),
    st.integers(1, 3),
    st.sampled_from(["additive", "multiplicative"]),
)
def test_search_agrees_with_bitset_oracle_prime_fields(p, data, w1, w2, mode):
    U = data.draw(st.sets(st.integers(0, p - 1), min_size=1, max_size=min(p, 9)))
    F = make_field(p)
    res = search_separable(F, U, w1, w2, mode)
    assert not isinstance(res, BudgetExceeded)
    want = oracle_prime(p, U, w1, w2, mode)
    assert isinstance(res, SepWitness) == want
    if want:
        assert check_witness(F, U, res)


@settings(max_examples=100)
@given(st.sampled_from([3, 4]), st.data(), st.integers(1, 4), st.integers(1, 4))
def test_search_agrees_with_xor_oracle(m, data, w1, w2):
    U = data.draw(st.sets(st.integers(0, 2**m - 1), min_size=1, max_size=10))
    F = make_field(2, m)
    res = search_separable(F, U, w1, w2, "additive")
    assert not isinstance(res, BudgetExceeded)
    assert isinstance(res, SepWitness) == oracle_xor(m, U, w1, w2)


@given(st.sampled_from([(2, 4), (3, 2), (2, 5), (7, 1)]), st.data(), st.integers(1, 5), st.integers(1, 5))
def test_witnesses_respect_cardinality_bound(pm, data, w1, w2):
    F = make_field(*pm)
    U = data.draw(st.sets(st.integers(0, F.q - 1), min_size=1, max_size=12))
    for mode in Mode:
        res = search_separable(F, U, w1, w2, mode, SearchBudget(max_candidates=5000))
        if isinstance(res, SepWitness):
            assert len(U) <= w1 * w2
            assert check_witness(F, U, res)
        if len(U) > w1 * w2:
            assert isinstance(res, NotSeparable)


def test_check_witness_examples():
    F5 = make_field(5)
    assert check_witness(F5, {1, 2, 3, 4}, SepWitness("multiplicative", (1, 4), (1, 2), 2, 2))
    assert check_witness(F5, {0, 1, 2, 3}, SepWitness("additive", (0, 2), (0, 1), 2, 2))
    assert not check_witness(F5, {0, 1, 2, 3}, SepWitness("additive", (0, 2), (0, 3), 2, 2))
    assert check_witness(F5, {3}, SepWitness("additive", (3,), (3,), 1, 1)) is False  # 3+3 = 1
    assert check_witness(F5, {0}, SepWitness("additive", (0,), (0,), 1, 1))
    # sizes and membership
    assert not check_witness(F5, {1, 2, 3, 4}, SepWitness("multiplicative", (1, 4, 2), (1, 2), 2, 2))
    assert not check_witness(F5, {1, 4}, SepWitness("multiplicative", (1, 4), (1, 2), 2, 2))


def test_search_examples():
    F4 = make_field(2, 2)
    r = search_separable(F4, {0, 1}, 2, 1, "additive")
    assert isinstance(r, SepWitness) and check_witness(F4, {0, 1}, r)
    F5 = make_field(5)
    r = search_separable(F5, {1, 2, 3, 4}, 2, 2, "multiplicative")
    assert isinstance(r, SepWitness)
    F8 = make_field(2, 3)
    a = F8.alpha
    r = search_separable(F8, {1, a, F8.mul(a, a)}, 1, 1, "additive")
    assert isinstance(r, NotSeparable)


def test_search_zero_in_multiplicative_set():
    F7 = make_field(7)
    U = {0, 1, 6}
    r = search_separable(F7, U, 2, 2, "multiplicative")
    assert isinstance(r, SepWitness) and 0 in r.F + r.E
    assert isinstance(search_separable(F7, {0, 3}, 1, 1, "multiplicative"), NotSeparable)
    assert isinstance(search_separable(F7, {0}, 1, 1, "multiplicative"), SepWitness)


def test_budget_exceeded_is_a_value():
    F = make_field(2, 7)
    r = search_separable(F, range(128), 12, 12, "additive", SearchBudget(max_candidates=50))
    assert isinstance(r, BudgetExceeded)


def test_mult_cyclic_examples():
    F5 = make_field(5)
    w = witness_mult_cyclic(F5, 2, 4, 2, 2)
    assert (w.E, w.F) == ((1, 4), (1, 2))
    F64 = make_field(2, 6)
    g = F64.exp(7)
    w = witness_mult_cyclic(F64, g, 9, 3, 3)
    assert set(w.E) == {1, F64.pow(g, 3), F64.pow(g, 6)} and set(w.F) == {1, g, F64.pow(g, 2)}
    w = witness_mult_cyclic(F5, 1, 1, 1, 1)
    assert (w.E, w.F) == ((1,), (1,))
    assert witness_mult_cyclic(F5, 2, 4, 1, 2) is None
    with pytest.raises(ValueError):
        witness_mult_cyclic(F5, 2, 3, 2, 2)


def test_subgroup_examples():
    F4 = make_field(2, 2)
    w = witness_add_subgroups(F4, [1, 2], 2, 2)
    assert w.E == (0, 1) and w.F == (0, 2)
    F32 = make_field(2, 5)
    w = witness_add_subgroups(F32, [1, 2, 4, 8], 5, 5)
    assert len(w.E) == len(w.F) == 4
    w = witness_add_subgroups(F32, [], 1, 1)
    assert w.E == w.F == (0,)
    assert witness_add_subgroups(F32, [1, 2, 4], 2, 2) is None


def test_prop32():
    assert not prop32_condition(2, 15, 15)
    assert prop32_condition(2, 15, 15, rational=True)  # 1.875^2 = 3.5
    assert not prop32_condition(2, 3, 3)
    assert not prop32_condition(2, 10, 10) and not prop32_condition(2, 10, 10, rational=True)
    F = make_field(2, 5)
    # w = 6: r = 2, floor(6/4)^2 = 1 < 2; w1 = 4, w2 = 3: floor(4/4) * floor(3/2) = 1
    assert witness_prop32(F, [1, 2, 4, 8], 3, 3) is None
    F27 = make_field(3, 3)
    # p = 3, w1 = w2 = 6: r = 1, floor(6/3)^2 = 4 >= 3, s = 3
    w = witness_prop32(F27, [1, 3, 9], 6, 6)
    assert w is not None and check_witness(F27, range(27), w)


def test_lemma31_examples():
    w = field_separable_lemma31(2, 7, 12, 12)
    assert w.mode is Mode.MULTIPLICATIVE and check_witness(make_field(2, 7), range(128), w)
    assert 3 in lemma31_branches(2, 7, 12, 12)
    w = field_separable_lemma31(2, 4, 5, 4)
    assert w.mode is Mode.ADDITIVE
    assert field_separable_lemma31(3, 3, 3, 3) is None
    with pytest.raises(ValueError):
        field_separable_lemma31(2, 0, 2, 2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_third_branch_product_set_size(p):
    """|E F'| reaches p^s whenever w1 w2 - w2 >= p^s."""
    for s in range(1, 10):
        if p**s > 512:
            break
        F = make_field(p, s)
        for w1 in range(2, 41):
            for w2 in range(1, w1 + 1):
                if w1 * w2 - w2 < p**s:
                    continue
                w = subfield_witness(F, s, w1, w2)
                assert len(set_product(F, w.E, w.F) if w.mode is Mode.MULTIPLICATIVE else set_sum(F, w.E, w.F)) == p**s


def test_r_index():
    assert [r_index(w, 2) for w in (1, 2, 3, 4, 7, 8, 12, 15, 16)] == [0, 1, 1, 2, 2, 3, 3, 3, 4]
    assert r_index(9, 3) == 2 and r_index(26, 3) == 2
    with pytest.raises(ValueError):
        r_index(0, 2)


def test_witness_json_round_trip():
    w = SepWitness("additive", (3, 0), (1,), 2, 1)
    assert SepWitness.from_dict(w.to_dict()) == w
    assert w.E == (0, 3)
