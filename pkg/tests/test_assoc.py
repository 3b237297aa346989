from collections import Counter

import pytest

from quandlelab.abgroup import AbGroup
from quandlelab.assoc import (
    KerEpsGroup,
    adjoint_rep,
    as_presentation,
    check_daiji,
    clauwens_model,
    extended_quandle,
    h2q_eisermann,
    stabilizer_presentation,
)
from quandlelab.catalog import load_quandle, quandle_names
from quandlelab.cosets import coset_enumerate
from quandlelab.errors import CosetLimitError, InputError
from quandlelab.presentation import Presentation
from quandlelab.quandle import check_axioms, make_alexander, orbits, type_of
from quandlelab.rack import homology

CONNECTED = [n for n in quandle_names() + ["Sp_5_1"] if orbits(load_quandle(n)).connected]
ALEXANDER = [n for n in CONNECTED if load_quandle(n).alexander is not None]


def _order_profile(K: KerEpsGroup) -> dict:
    return dict(Counter(K.element_order(k) for k in range(K.size)))


# ---------------------------------------------------------------------------
# coset enumeration


def test_cosets_of_s3():
    P = Presentation(2, ((1, 1), (2, 2, 2), (1, 2, 1, 2)))
    assert coset_enumerate(P).num_cosets == 6
    assert coset_enumerate(P, [(1,)]).num_cosets == 3
    ct = coset_enumerate(P, [(2,)])
    assert ct.num_cosets == 2
    assert ct.check_complete(P.relators)
    for c, w in enumerate(ct.schreier_words):
        assert ct.apply(0, w) == c


def test_coset_limit():
    P = Presentation(1, ())
    with pytest.raises(CosetLimitError):
        coset_enumerate(P, (), max_cosets=50)


def test_as_presentation():
    Q = load_quandle("R3")
    P = as_presentation(Q)
    # x ◁ x = x gives a trivial relator, so only pairs x != y appear
    assert P.num_generators == 3 and len(P.relators) == 6


# ---------------------------------------------------------------------------
# Ker eps


def test_ker_eps_f4_is_quaternion():
    K = KerEpsGroup(load_quandle("F4_omega"))
    assert K.size == 8 and not K.is_abelian()
    assert _order_profile(K) == {1: 1, 2: 1, 4: 6}


def test_ker_eps_fourcycles_is_binary_tetrahedral():
    K = KerEpsGroup(load_quandle("S6_fourcycles"))
    assert K.size == 24
    assert _order_profile(K) == {1: 1, 2: 1, 3: 8, 4: 6, 6: 8}


def test_ker_eps_transpositions_is_a4():
    K = KerEpsGroup(load_quandle("S6_transpositions"))
    assert K.size == 12
    assert _order_profile(K) == {1: 1, 2: 3, 3: 8}


@pytest.mark.parametrize("name,size", [("R3", 3), ("R5", 5), ("Z2T3_a", 8), ("Z2T3_b", 8), ("Sp_5_1", 120)])
def test_ker_eps_sizes(name, size):
    assert KerEpsGroup(load_quandle(name)).size == size


def test_ker_eps_refuses_disconnected():
    with pytest.raises(InputError):
        KerEpsGroup(load_quandle("Trivial3"))


@pytest.mark.parametrize("name", CONNECTED)
def test_representation_is_faithful_and_daiji(name):
    Q = load_quandle(name)
    R = adjoint_rep(Q)
    assert R.K.check_regular()
    assert check_daiji(R, type_of(Q))


@pytest.mark.parametrize("name", ["F4_omega", "S6_fourcycles", "S6_transpositions"])
def test_adjoint_relations(name):
    Q = load_quandle(name)
    R = adjoint_rep(Q)
    for x in range(Q.n):
        for y in range(Q.n):
            # e_x e_y = e_y e_{x◁y}
            assert R.mul(R.gen(x), R.gen(y)) == R.mul(R.gen(y), R.gen(Q.op[x][y]))
            assert R.act(x, R.gen(y)) == Q.op[x][y]
        assert R.mul(R.gen(x), R.inv(R.gen(x))) == R.identity
        assert R.eps(R.gen(x, 5)) == 5


def test_adjoint_evaluate_forms_agree():
    Q = load_quandle("S6_fourcycles")
    R = adjoint_rep(Q)
    assert R.evaluate([1, -3, 2]) == R.evaluate([(0, 1), (2, -1), (1, 1)])


# ---------------------------------------------------------------------------
# extended quandle


def test_extended_f4():
    Xt, p = extended_quandle(load_quandle("F4_omega"))
    assert Xt.n == 8
    assert check_axioms(Xt).ok
    assert orbits(Xt).connected
    assert type_of(Xt) == 3
    assert homology(Xt, 2).is_trivial()
    Q = load_quandle("F4_omega")
    for a in range(8):
        for b in range(8):
            assert p[Xt.op[a][b]] == Q.op[p[a]][p[b]]


@pytest.mark.parametrize("name", ["R3", "S6_fourcycles", "S6_transpositions"])
def test_extended_quandle_covers(name):
    Q = load_quandle(name)
    Xt, p = extended_quandle(Q)
    assert check_axioms(Xt).ok and orbits(Xt).connected
    assert Xt.n == KerEpsGroup(Q).size
    assert sorted(Counter(p).values()) == [Xt.n // Q.n] * Q.n


# ---------------------------------------------------------------------------
# stabilizers and H2Q


@pytest.mark.parametrize("name", quandle_names())
def test_eisermann_matches_chain_complex(name):
    Q = load_quandle(name)
    assert h2q_eisermann(Q) == homology(Q, 2, "quandle")


@pytest.mark.parametrize("name", quandle_names())
def test_stabilizers_match_h1_with_x_coefficients(name):
    Q = load_quandle(name)
    total = AbGroup.trivial()
    for x in orbits(Q).representatives:
        total = total + stabilizer_presentation(Q, x).abelianization.group
    assert total == homology(Q, 1, "rack", "X") == homology(Q, 2, "rack")


def test_stabilizer_rewrite_rejects_non_stabilizing_word():
    S = stabilizer_presentation(load_quandle("R3"), 0)
    with pytest.raises(InputError):
        S.rewrite((2,))
    w = S.rewrite((1,))
    assert S.reduced_abelianization.coordinates(w) == ([], [])


def test_h2q_values():
    assert h2q_eisermann(load_quandle("S6_fourcycles")) == AbGroup.cyclic(4)
    assert h2q_eisermann(load_quandle("S6_transpositions")) == AbGroup.cyclic(2)
    assert h2q_eisermann(load_quandle("F4_omega")) == AbGroup.cyclic(2)
    assert h2q_eisermann(load_quandle("Sp_5_1")) == AbGroup.cyclic(5)


# ---------------------------------------------------------------------------
# Clauwens' model


@pytest.mark.parametrize("name", ALEXANDER + ["R7"])
def test_clauwens_prediction(name):
    Q = load_quandle(name)
    coker, predicted = clauwens_model(Q)
    assert KerEpsGroup(Q).size == predicted == Q.n * coker.order
    assert homology(Q, 2) == coker


@pytest.mark.parametrize("moduli,T", [([9], 2), ([3, 3], [[1, 1], [0, 1]]), ([5, 5], [[2, 0], [0, 3]])])
def test_clauwens_prediction_more_modules(moduli, T):
    Q = make_alexander(moduli, T)
    if not orbits(Q).connected:
        pytest.skip("not connected")
    coker, predicted = clauwens_model(Q)
    assert KerEpsGroup(Q).size == predicted
    assert h2q_eisermann(Q) == coker


def test_clauwens_needs_alexander():
    with pytest.raises(InputError):
        clauwens_model(load_quandle("S6_fourcycles"))
