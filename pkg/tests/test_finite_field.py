import itertools
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from rsc import finite_field as ff
from rsc._registry import REGISTRY
from rsc.finite_field import (
    FieldError,
    FieldMismatchError,
    SubspaceSpec,
    field_of_order,
    gfp_rank,
    make_field,
    polynomial_basis_subspace,
    set_product,
    set_sum,
    span,
    subfield_subspace,
)

# independent schoolbook arithmetic on digit lists


def naive_mul(a, b, poly, p):
    m = len(poly) - 1
    prod = [0] * (2 * m)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            for i in range(m + 1):
                prod[d - m + i] = (prod[d - m + i] - c * poly[i]) % p
    return prod[:m]


def to_digits(a, p, m):
    return [(a // p**i) % p for i in range(m)]


def from_digits(d, p):
    return sum(c * p**i for i, c in enumerate(d))


SMALL = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (2, 6), (3, 3)]
MEDIUM = [(2, 8), (3, 5), (2, 11), (3, 7), (7, 3)]


@pytest.mark.parametrize("p,m", SMALL)
def test_field_axioms_exhaustive(p, m):
    F = make_field(p, m)
    q = F.q
    els = range(q)
    for a in els:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    if q <= 27:
        for a, b, c in itertools.product(els, repeat=3):
            assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("p,m", SMALL + MEDIUM)
def test_mul_matches_schoolbook_oracle(p, m):
    F = make_field(p, m)
    import random

    rng = random.Random(p * 100 + m)
    for _ in range(300):
        a, b = rng.randrange(F.q), rng.randrange(F.q)
        want = from_digits(naive_mul(to_digits(a, p, m), to_digits(b, p, m), F.irreducible, p), p)
        assert F.mul(a, b) == want
        want_add = from_digits([(x + y) % p for x, y in zip(to_digits(a, p, m), to_digits(b, p, m))], p)
        assert F.add(a, b) == want_add


@pytest.mark.parametrize("p,m", SMALL + MEDIUM)
def test_generator_primitive_and_logs(p, m):
    F = make_field(p, m)
    seen = set()
    x = 1
    for i in range(F.q - 1):
        assert F.exp(i) == x
        assert F.log(x) == i
        seen.add(x)
        x = F.mul(x, F.alpha)
    assert x == 1 and len(seen) == F.q - 1
    assert F.pow(F.alpha, F.q - 1) == 1


@given(st.sampled_from(MEDIUM), st.data())
def test_distributive_sampled(pm, data):
    F = make_field(*pm)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_examples():
    assert make_field(2, 1).alpha == 1
    assert make_field(2, 11).q - 1 == 2047
    assert make_field(3, 5).q == 243
    F5 = make_field(5)
    assert F5.mul(2, 3) == 1
    assert F5.alpha == 2 and F5.log(4) == 2
    F4 = make_field(2, 2)
    # x^2 + x + 1: alpha = x = 2, alpha^2 = alpha + 1 = 3
    assert F4.irreducible == (1, 1, 1)
    assert F4.mul(F4.alpha, F4.alpha) == F4.add(F4.alpha, 1) == 3
    assert F4.log(1) == 0 and F4.log(F4.alpha) == 1


def test_errors():
    F = make_field(5)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(FieldError):
        F.log(0)
    with pytest.raises(FieldError):
        make_field(4, 1)
    with pytest.raises(FieldError):
        make_field(2, 0)
    with pytest.raises(FieldError):
        make_field(2, 21)
    with pytest.raises(FieldError):
        field_of_order(6)
    with pytest.raises(FieldError):
        F.check(5)


def test_field_element_operators():
    F = make_field(2, 3)
    a, b = F.element(3), F.element(5)
    assert int(a + b) == F.add(3, 5)
    assert int(a * b) == F.mul(3, 5)
    assert int(a / b) == F.div(3, 5)
    assert int(a**3) == F.pow(3, 3)
    assert (a * a.inverse()) == F.one
    assert a.log() == F.log(3)
    G = make_field(2, 4)
    with pytest.raises(FieldMismatchError):
        a + G.element(3)
    with pytest.raises(TypeError):
        a + 1.5
    assert F.element(3) == F.element(3) and F.element(3) != F.element(4)


def test_large_field_without_tables_uses_bsgs():
    F = make_field(2, 20)
    assert F._log is None
    for i in (0, 1, 12345, 2**20 - 2):
        assert F.log(F.exp(i)) == i
    a = F.exp(777)
    assert F.mul(a, F.inv(a)) == 1
    # table-free arithmetic agrees with table arithmetic on the same polynomial
    T = ff.FieldSpec(2, 12, make_field(2, 12).irreducible, table_threshold=0)
    S = make_field(2, 12)
    for a, b in [(3, 4095), (1234, 777), (2048, 2049)]:
        assert T.mul(a, b) == S.mul(a, b)
        assert T.log(b) == S.log(b)


def test_odd_characteristic_zech_addition():
    F = make_field(3, 7)
    assert F._zech is not None
    import random

    rng = random.Random(7)
    for _ in range(500):
        a, b = rng.randrange(F.q), rng.randrange(F.q)
        assert F.add(a, b) == from_digits([(x + y) % 3 for x, y in zip(to_digits(a, 3, 7), to_digits(b, 3, 7))], 3)


def _naive_irreducible(f, p):
    m = len(f) - 1
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            r = list(f)
            for i in range(len(r) - 1, d - 1, -1):
                c = r[i]
                if c:
                    for j in range(d + 1):
                        r[i - d + j] = (r[i - d + j] - c * g[j]) % p
            if not any(r[:d]):
                return False
    return True


def _naive_primitive(f, p):
    m = len(f) - 1
    one = [1] + [0] * (m - 1)
    cur, order = list(one), 0
    xs = [0, 1] + [0] * (m - 2)
    while True:
        cur = naive_mul(cur, xs, f, p)
        order += 1
        if cur == one:
            return order == p**m - 1


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (2, 5), (2, 8), (2, 10), (3, 2), (3, 4), (5, 2), (5, 3), (7, 2)])
def test_registry_is_lexicographically_first_primitive(p, m):
    want = None
    for code in range(1, p**m):
        low = [(code // p**i) % p for i in range(m)]
        f = low + [1]
        if _naive_irreducible(f, p) and _naive_primitive(f, p):
            want = tuple(low)
            break
    assert REGISTRY[(p, m)] == want


def test_registry_well_known_entries():
    assert REGISTRY[(2, 8)] == (1, 0, 1, 1, 1, 0, 0, 0)  # 0x11d
    assert REGISTRY[(2, 11)] == (1, 0, 1) + (0,) * 8  # x^11 + x^2 + 1
    assert all(p**m <= 2**20 for p, m in REGISTRY)


def test_registry_override(tmp_path):
    path = tmp_path / "reg.txt"
    # x^2 + 2x + 2 over GF(3) is primitive but not the registry default x^2 + x + 2
    path.write_text("# override\n3 2 2 2 1\n")
    code = (
        "from rsc.finite_field import make_field\n"
        "F = make_field(3, 2)\n"
        "print(F.irreducible)\n"
    )
    env = {"RSC_FIELD_REGISTRY": str(path), "PATH": "/usr/bin:/bin"}
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "(2, 2, 1)"
    assert make_field(3, 2).irreducible == (2, 1, 1)


def test_span_and_sets():
    F8 = make_field(2, 3)
    assert span(F8, []) == {0}
    assert span(F8, [1]) == {0, 1}
    assert span(F8, [1, F8.alpha]) == {0, 1, F8.alpha, F8.add(1, F8.alpha)}
    F5 = make_field(5)
    assert set_product(F5, {1, 4}, {1, 2}) == {1, 2, 3, 4}
    E = {1, 3}
    assert set_sum(F5, E, {0}) == E and set_product(F5, E, {1}) == E


@given(st.lists(st.integers(0, 2**6 - 1), max_size=6))
def test_span_size_matches_rank(basis):
    F = make_field(2, 6)
    r = gfp_rank((F.digits(b) for b in basis), 2)
    assert len(span(F, basis)) == 2**r


@given(st.lists(st.integers(0, 26), max_size=4))
def test_span_size_matches_rank_odd(basis):
    F = make_field(3, 3)
    r = gfp_rank((F.digits(b) for b in basis), 3)
    assert len(span(F, basis)) == 3**r


def test_subspaces():
    F = make_field(2, 6)
    S = polynomial_basis_subspace(F, 3)
    assert S.v == 3 and len(S.elements()) == 8
    T = subfield_subspace(F, 3)
    els = T.elements()
    assert all(F.mul(a, b) in els for a in els for b in els)
    with pytest.raises(FieldError):
        SubspaceSpec(F, (1, 1))
    with pytest.raises(FieldError):
        subfield_subspace(F, 4)
