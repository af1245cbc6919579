import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fockcanon.fock import (
    FockVector,
    NotAddable,
    N_i,
    alpha_F_plus,
    alpha_runner,
    apply_alpha_F,
    apply_F,
    apply_F_divided,
    apply_V,
    apply_word,
    horizontal_ribbon_strips,
    theta,
    truncate,
)
from fockcanon.canonical import a_regular
from fockcanon.laurent import ONE, V, Laurent, gaussian_factorial
from fockcanon.partition import EMPTY, Node, Partition, ladder_residue_sequence, partitions_of

P = Partition
vi = V ** -1


def vec(*terms):
    return FockVector((P(lam), c) for lam, c in terms)


def test_N_i_examples():
    assert N_i(P((1,)), Node(2, 1), 2) == 1
    assert N_i(EMPTY, Node(1, 1), 5) == 0
    assert N_i(P((2,)), Node(2, 1), 2) == -1
    with pytest.raises(NotAddable):
        N_i(P((2,)), Node(1, 2), 2)


def test_F_examples():
    assert apply_F(FockVector.vacuum(), 0, 2) == vec(((1,), 1))
    assert apply_F(vec(((1,), 1)), 1, 2) == vec(((2,), 1), ((1, 1), V))
    assert apply_F(vec(((2, 1), 1)), 2, 3) == vec(((3, 1), 1))
    assert apply_F_divided(vec(((1,), 1)), 1, 2, 2) == vec(((2, 1), 1))
    x = vec(((3, 1), V), ((2, 2), 1))
    assert apply_F_divided(x, 1, 0, 3) == x
    assert apply_F_divided(FockVector.vacuum(), 0, 1, 2) == vec(((1,), 1))


@given(oracles.partitions_st(max_size=5, max_part=5), st.integers(2, 4), st.data())
def test_F_matches_diagram_oracle(lam, e, data):
    i = data.draw(st.integers(0, e - 1))
    got = apply_F(FockVector.basis(lam), i, e)
    want = FockVector((nu, Laurent.monomial(n)) for nu, n in oracles.F_oracle(lam, i, e).items())
    assert got == want


@pytest.mark.parametrize("e", [2, 3])
def test_divided_powers_divisibility(e):
    for n in range(0, 9):
        for lam in partitions_of(n):
            x = FockVector.basis(lam)
            for i in range(e):
                y = x
                for a in range(1, 4):
                    y = apply_F(y, i, e)
                    assert apply_F_divided(x, i, a, e).scale(gaussian_factorial(a)) == y


def test_ribbon_strip_examples():
    # the spins 0 and 1 of the two dominoes on the empty partition
    assert horizontal_ribbon_strips(EMPTY, 1, 2) == [(P((2,)), 0), (P((1, 1)), 1)]
    lam = P((3, 2))
    assert horizontal_ribbon_strips(lam, 0, 3) == [(lam, 0)]
    # every two-domino strip on (3), including the two with a vertical domino
    assert horizontal_ribbon_strips(P((3,)), 2, 2) == [
        (P((7,)), 0), (P((5, 2)), 0), (P((5, 1, 1)), 1), (P((3, 3, 1)), 1), (P((3, 2, 2)), 2)
    ]


@pytest.mark.parametrize("e", [2, 3])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_ribbon_strips_match_diagram_oracle(m, e):
    for n in range(0, 5):
        for lam in partitions_of(n):
            want = oracles.horizontal_strips_oracle(lam, m, e)
            got = dict(horizontal_ribbon_strips(lam, m, e))
            assert set(got) == set(want)
            for nu, spins in want.items():
                # all tilings of a strip share a spin
                assert spins == {got[nu]}


def test_V_examples():
    assert apply_V(FockVector.vacuum(), 1, 2) == vec(((2,), 1), ((1, 1), -vi))
    assert apply_V(FockVector.vacuum(), 1, 3) == vec(((3,), 1), ((2, 1), -vi), ((1, 1, 1), V ** -2))
    V2 = apply_V(vec(((3,), 1)), 2, 2)
    assert V2 == vec(((7,), 1), ((5, 2), 1), ((5, 1, 1), -vi), ((3, 3, 1), -vi), ((3, 2, 2), V ** -2))
    assert truncate(V2, 2) == vec(((7,), 1), ((5, 2), 1))


def _seeds(max_n):
    for n in range(max_n + 1):
        for lam in partitions_of(n):
            yield FockVector.basis(lam)


@pytest.mark.parametrize("e", [2, 3])
def test_V_commutes_with_F(e):
    for x in _seeds(4):
        for m in (1, 2):
            for i in range(e):
                assert apply_V(apply_F(x, i, e), m, e) == apply_F(apply_V(x, m, e), i, e)


@pytest.mark.parametrize("e", [2, 3])
def test_V_operators_commute(e):
    for x in _seeds(3):
        for m in (1, 2, 3):
            for n in range(m + 1, 4):
                assert apply_V(apply_V(x, n, e), m, e) == apply_V(apply_V(x, m, e), n, e)


def test_truncate_and_theta_examples():
    assert truncate(vec(((2,), 1), ((1, 1), V)), 1) == vec(((2,), 1))
    x = vec(((2,), 1), ((1, 1), V))
    assert truncate(x, 5) == x
    assert theta(vec(((4, 4, 3), 1)), 3, 4, 2) == vec(((6, 6, 4), 1))
    f = V ** 3 - 2
    assert theta(FockVector.basis(EMPTY, f), 2, 4, 0) == FockVector.basis(P((2, 2, 1, 1)), f)
    assert theta(vec(((6,), 1), ((5, 1), V)), 2, 6, 2) == vec(((11, 2, 1, 1), 1), ((10, 3, 1, 1), V))


def test_alpha_runner_cases():
    # residue 0 sits on runner 1 when k=4; runner 1 of the 4-abacus has residue 1
    assert alpha_runner(0, 3, 4, 2) == (1, 1, "before")
    assert alpha_runner(2, 3, 4, 3) == (0, 0, "wrap")
    # runner r = alpha: the word is F+_{j+1} F+_j with j+1 taken mod e+1
    r, j, case = alpha_runner(1, 3, 4, 2)
    assert (r, case) == (2, "at")
    assert all(0 <= alpha_runner(i, e, k, a)[1] <= e for e in (2, 3) for i in range(e) for k in range(1, 5) for a in range(e + 1))


def test_alpha_F_edge_cases():
    x = vec(((4, 4, 3), V))
    assert apply_alpha_F(x, 0, 0, 3, 4, 2) == theta(x, 3, 4, 2)
    # r < alpha reduces to a single F+_j
    lam = P((2, 1))
    r, j, case = alpha_runner(0, 3, 3, 2)
    assert case == "before"
    y = theta(FockVector.basis(lam), 3, 3, 2)
    assert apply_alpha_F(FockVector.basis(lam), 0, 1, 3, 3, 2) == truncate(apply_F(y, j, 4), 3)


def test_ladder_chain_through_alpha_F():
    mu, e, k, alpha = P((4, 4, 3)), 3, 4, 2
    y = theta(FockVector.vacuum(), e, k, alpha)
    for i, a in ladder_residue_sequence(mu, e):
        y = alpha_F_plus(y, i, a, e, k, alpha)
    assert y == theta(truncate(a_regular(mu, e), k), e, k, alpha)


def _commuting_cases(max_n, e):
    for n in range(max_n + 1):
        for lam in partitions_of(n):
            for k in range(max(len(lam), 1), len(lam) + 3):
                for alpha in range(e + 1):
                    yield lam, k, alpha


@pytest.mark.parametrize("e", [2, 3])
def test_theta_intertwines_F(e):
    for lam, k, alpha in _commuting_cases(8, e):
        x = FockVector.basis(lam)
        for i in range(e):
            for a in (1, 2):
                lhs = theta(truncate(apply_F_divided(x, i, a, e), k), e, k, alpha)
                assert lhs == apply_alpha_F(x, i, a, e, k, alpha), (lam, k, alpha, i, a)


@pytest.mark.parametrize("e", [2, 3])
def test_theta_intertwines_V(e):
    for lam, k, alpha in _commuting_cases(5, e):
        x = FockVector.basis(lam)
        for m in (1, 2):
            lhs = theta(truncate(apply_V(x, m, e), k), e, k, alpha)
            rhs = truncate(apply_V(theta(x, e, k, alpha), m, e + 1), k)
            assert lhs == rhs, (lam, k, alpha, m)


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(1, 2)), max_size=5))
@settings(max_examples=60)
def test_words_are_homogeneous(word):
    y = apply_word(FockVector.vacuum(), word, 3)
    assert y.degrees() <= {sum(a for _, a in word)}


@given(oracles.partitions_st(max_size=5, max_part=5), st.integers(2, 4))
@settings(deadline=None)
def test_single_ribbon_spin_is_leg_length(lam, e):
    got = dict(horizontal_ribbon_strips(lam, 1, e))
    for nu, cells in oracles.add_ribbon_oracle(lam, e):
        r, c = oracles.ribbon_head(cells)
        if r > 1 and lam.part(r - 1) < c:
            assert nu not in got
        else:
            assert got[nu] == oracles.ribbon_spin(cells)


def test_vector_json_round_trip():
    x = apply_V(vec(((3,), 1)), 2, 2)
    assert FockVector.from_json(x.to_json()) == x
    assert x.to_json()["degree"] == 7
    assert (x - x).is_zero()
    assert x + FockVector() == x
