from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quandlelab.abgroup import AbGroup, cokernel, homology_at
from quandlelab.errors import CompositionError, InputError
from quandlelab.fq import FqContext, is_prime, prime_power, smallest_irreducible
from quandlelab.intmat import IntMatrix, invariant_factors, rank, smith_normal_form
from quandlelab.presentation import Abelianization, Presentation, free_reduce

# ---------------------------------------------------------------------------
# finite fields


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(8) == (2, 3)
    assert is_prime(13) and not is_prime(15)
    with pytest.raises(InputError):
        prime_power(12)


@pytest.mark.parametrize("p,d", [(2, 1), (2, 2), (2, 3), (3, 2), (5, 1), (7, 1), (3, 3)])
def test_field_axioms(p, d):
    F = FqContext(p, d)
    q = F.q
    assert q == p**d
    for a in range(q):
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(a, 1) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, q - 1) == 1
    for a in range(q):
        for b in range(q):
            for c in range(0, q, max(1, q // 4)):
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_named_reduction_polys():
    a = FqContext(2, 3, (1, 0, 1, 1))
    b = FqContext(2, 3, (1, 1, 0, 1))
    x = a.generator
    # x^3 = x^2 + 1 in the first field, x^3 = x + 1 in the second
    assert a.pow(x, 3) == a.encode((1, 0, 1))
    assert b.pow(b.generator, 3) == b.encode((1, 1, 0))
    with pytest.raises(InputError):
        FqContext(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2


def test_smallest_irreducible_is_monic():
    for p, d in [(2, 2), (3, 2), (5, 2), (2, 4)]:
        poly = smallest_irreducible(p, d)
        assert len(poly) == d + 1 and poly[-1] == 1


# ---------------------------------------------------------------------------
# Smith normal form


def _minor_gcds(rows):
    """Invariant factors from gcds of k x k minors (determinantal divisors)."""
    m, n = len(rows), len(rows[0]) if rows else 0
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for R in combinations(range(m), k):
            for C in combinations(range(n), k):
                g = gcd(g, IntMatrix.from_rows([[rows[i][j] for j in C] for i in R]).determinant())
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


small = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=150, deadline=None)
@given(small)
def test_invariant_factors_match_determinantal_divisors(rows):
    M = IntMatrix.from_rows(rows)
    assert invariant_factors(M) == _minor_gcds(rows)


@settings(max_examples=80, deadline=None)
@given(small)
def test_snf_factorisation(rows):
    M = IntMatrix.from_rows(rows)
    S, U, V = smith_normal_form(M)
    assert U @ M @ V == S
    assert abs(U.determinant()) == 1 and abs(V.determinant()) == 1
    d = [x for x in smith_normal_form(M).diagonal if x]
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    for (i, j), _ in S.items():
        assert i == j


def test_snf_known():
    M = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert invariant_factors(M) == [2, 6, 12]
    assert rank(IntMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_sparse_and_dense_agree():
    rows = [[0, 3, 0, 0, 0], [0, 0, 0, 5, 0], [2, 0, 0, 0, 0], [0, 0, 0, 0, 0]]
    a = IntMatrix.from_rows(rows, storage="dense")
    b = IntMatrix.from_rows(rows, storage="sparse")
    assert a == b
    assert invariant_factors(a) == invariant_factors(b) == [1, 1, 30]


def test_matrix_json_roundtrip():
    M = IntMatrix.from_rows([[1, 0], [0, -7]])
    obj = M.to_json()
    assert obj == {"rows": 2, "cols": 2, "triplets": [[0, 0, 1], [1, 1, -7]]}
    assert IntMatrix.from_json(obj) == M


def test_large_entries_stay_exact():
    big = 10**30 + 7
    M = IntMatrix.from_rows([[big, 0], [0, big * 3]])
    assert invariant_factors(M) == [big, 3 * big]


# ---------------------------------------------------------------------------
# abelian groups


def test_abgroup_normal_form():
    G = AbGroup.from_orders([6, 4, 1], free_rank=2)
    assert G.torsion == (2, 12)
    assert str(G) == "Z^2 + Z/2 + Z/12"
    assert AbGroup.parse("Z^2 + Z/2 + Z/12") == G
    assert AbGroup.parse("0").is_trivial()
    assert str(AbGroup.from_orders([2, 3])) == "Z/6"
    assert AbGroup.from_json(G.to_json()) == G
    assert G.to_json() == {"rank": 2, "torsion": [2, 12]}


def test_abgroup_parts():
    G = AbGroup.from_orders([4, 3, 5])
    assert G.odd_part() == AbGroup.from_orders([15])
    assert G.primary_part(2) == AbGroup.cyclic(4)
    assert G.order == 60
    assert G.element_order([30]) == 2
    assert AbGroup(1, ()).element_order([], [1]) == float("inf")


def test_abgroup_rejects_bad_chain():
    with pytest.raises(InputError):
        AbGroup(0, (4, 6))
    with pytest.raises(InputError):
        AbGroup.parse("Q/2")


def test_cokernel_and_coordinates():
    M = IntMatrix.from_rows([[2, 0], [0, 3], [0, 0]])
    G = cokernel(M, coordinates=True)
    assert G == AbGroup.from_orders([6], 1)
    t, f = G.coordinate_map([1, 1, 5])
    assert len(t) == 1 and f in ([5], [-5])


def test_homology_of_circle_and_rp2():
    # simplicial-style: d1 of a circle is zero, H0 = H1 = Z
    assert homology_at(IntMatrix.zeros(1, 1), IntMatrix.zeros(0, 1)) == AbGroup(1)
    # cellular RP^2: d2 = 2, d1 = 0
    assert homology_at(IntMatrix.from_rows([[2]]), IntMatrix.zeros(1, 1)) == AbGroup.cyclic(2)


def test_homology_checks_composition():
    with pytest.raises(CompositionError):
        homology_at(IntMatrix.from_rows([[1]]), IntMatrix.from_rows([[1]]))


# ---------------------------------------------------------------------------
# presentations


def test_free_reduce():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)


def test_abelianization_of_trefoil_group():
    P = Presentation(2, ((1, 2, 1, -2, -1, -2),))
    A = Abelianization(P)
    assert A.group == AbGroup(1)
    assert P.to_json() == {"gens": 2, "relators": [[1, 2, 1, -2, -1, -2]]}
    assert Presentation.from_json(P.to_json()) == P
