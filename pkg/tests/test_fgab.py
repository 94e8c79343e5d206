import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

from hkbott.errors import IllFormedEndo, IncomparableUndetermined, ZeroMultiplier
from hkbott.fgab import (
    TRIVIAL,
    Z,
    FgAbGroup,
    GroupEndo,
    LocalizedGroup,
    cyclic,
    determinant,
    element_orders,
    identity,
    invariant_factors,
    invert_further,
    is_isomorphic,
    limit_torsion,
    localize,
    matmul,
    parse_group,
    prime_factors,
    smith_normal_form,
)

from oracles import leibniz_det, minor_gcd_factors, orders_of, restriction_is_bijective, truncated_colimit_orders

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


# -- Smith normal form ----------------------------------------------------------------


def test_snf_examples():
    assert smith_normal_form([[2, 4], [6, 8]])[1] == [[2, 0], [0, 4]]
    assert smith_normal_form(identity(3))[1] == identity(3)
    assert smith_normal_form([[0]])[1] == [[0]]
    assert invariant_factors([[0, 0], [0, 6], [4, 0]]) == [2, 12]


@given(matrices)
def test_snf_transform(M):
    U, D, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_bareiss_matches_leibniz(M):
    assert determinant(M) == leibniz_det(M)


def test_snf_agrees_with_minor_gcds():
    rng = random.Random(20260601)
    for _ in range(200):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        assert invariant_factors(M) == minor_gcd_factors(M), M


# -- groups --------------------------------------------------------------------------


def test_canonical_forms():
    assert FgAbGroup.from_cyclic(0, [2, 3]) == cyclic(6)
    assert FgAbGroup.from_cyclic(1, [4, 2, 0, 1]) == FgAbGroup(2, (2, 4))
    assert (Z + cyclic(2, 3) + cyclic(4)).render() == "Z + Z_2^3 + Z_4"
    assert TRIVIAL.render() == "0"
    assert (cyclic(2) ** 4) == cyclic(2, 4)
    with pytest.raises(ValueError):
        FgAbGroup(0, (4, 2))
    with pytest.raises(ValueError):
        FgAbGroup(-1)


def test_cokernel():
    assert FgAbGroup.cokernel([[2, 0], [0, 3]], 2) == cyclic(6)
    assert FgAbGroup.cokernel([[0, 0]], 2) == FgAbGroup(2)
    assert FgAbGroup.cokernel([[2, 4, 0]], 3) == FgAbGroup(2, (2,))


@given(st.integers(0, 3), st.lists(st.integers(0, 12), max_size=4))
def test_parse_round_trip(free, orders):
    G = FgAbGroup.from_cyclic(free, orders)
    assert parse_group(G.render()) == G


@given(st.lists(st.integers(2, 6), max_size=3), st.lists(st.integers(2, 6), max_size=3))
def test_element_orders_determine_isomorphism(a, b):
    G, H = FgAbGroup.from_cyclic(0, a), FgAbGroup.from_cyclic(0, b)
    assert (element_orders(G) == element_orders(H)) == (G == H)
    assert element_orders(G) == orders_of(G)


def test_prime_factors():
    assert prime_factors(6561) == (3,)
    assert prime_factors(-12) == (2, 3)
    assert prime_factors(1) == ()


# -- direct limits --------------------------------------------------------------------


def test_limit_examples():
    G = FgAbGroup(1, (2,))
    # generators: free first, then Z_2; x2 on Z, identity on Z_2
    beta = GroupEndo(G, ((2, 0), (0, 1)))
    assert limit_torsion(G, beta) == cyclic(2)
    G4 = cyclic(4)
    assert limit_torsion(G4, GroupEndo(G4, ((2,),))) == TRIVIAL
    assert truncated_colimit_orders(G4, GroupEndo(G4, ((2,),)), stages=4) == [1]


def test_ill_formed_endomorphisms():
    G = FgAbGroup(1, (2,))
    with pytest.raises(IllFormedEndo):
        GroupEndo(G, ((1, 1), (0, 1)))  # torsion to free
    with pytest.raises(IllFormedEndo):
        GroupEndo(G, ((1,),))
    G24 = FgAbGroup(0, (2, 4))
    with pytest.raises(IllFormedEndo):
        GroupEndo(G24, ((1, 0), (1, 1)))  # order-2 generator onto an element of order 4
    with pytest.raises(IllFormedEndo):
        limit_torsion(cyclic(2), GroupEndo(cyclic(4), ((1,),)))


TORSION_CHAINS = [(), (2,), (3,), (4,), (2, 2), (2, 4), (8,), (2, 2, 2), (2, 2, 4), (2, 6), (12,), (16,), (4, 4), (5,), (6,)]


def random_endo(rng: random.Random) -> tuple[FgAbGroup, GroupEndo]:
    G = FgAbGroup(rng.randint(0, 2), rng.choice(TORSION_CHAINS))
    b, k = G.free_rank, G.ngens
    M = [[0] * k for _ in range(k)]
    for j in range(k):
        for i in range(k):
            if j < b:
                M[i][j] = rng.randint(-3, 3)
            elif i >= b:
                di, dj = G.torsion[i - b], G.torsion[j - b]
                step = di // gcd(di, dj)
                M[i][j] = step * rng.randint(0, di)
    return G, GroupEndo(G, tuple(map(tuple, M)))


def test_limit_torsion_against_colimit_oracle():
    rng = random.Random(7)
    bijective = 0
    for _ in range(200):
        G, beta = random_endo(rng)
        assert G.order <= 16
        result = limit_torsion(G, beta)
        assert orders_of(result) == truncated_colimit_orders(G, beta)
        if restriction_is_bijective(G, beta):
            bijective += 1
            assert result == G.torsion_subgroup()
    assert bijective > 20


# -- localized groups ------------------------------------------------------------------


def test_localize():
    assert localize(1, 9) == localize(1, 3)
    assert localize(1, 9).render() == "Z[1/3]"
    assert localize(2, 6).render() == "Z[1/6]^2"
    assert localize(0, 6).render() == "0"
    assert localize(1, 1).render() == "Z"
    assert localize(1, -7).render() == "Z[1/7]"
    assert is_isomorphic(localize(1, 3), localize(1, 9))
    with pytest.raises(ZeroMultiplier):
        localize(1, 0)
    assert invert_further(localize(1, 3), 2) == localize(1, 6)


def test_localized_comparisons():
    G = LocalizedGroup(1, frozenset({3}), cyclic(2, 3))
    assert G.render() == "Z[1/3] + Z_2^3"
    assert is_isomorphic(cyclic(2, 4), cyclic(2, 4))
    with pytest.raises(IncomparableUndetermined):
        is_isomorphic(LocalizedGroup(1, undetermined=True), LocalizedGroup(1))
    with pytest.raises(TypeError):
        is_isomorphic(cyclic(2), LocalizedGroup(0, torsion=cyclic(2)))
    with pytest.raises(ValueError):
        LocalizedGroup(1, frozenset({4}))
    assert LocalizedGroup(1, undetermined=True).render() == "Z + unknown"
