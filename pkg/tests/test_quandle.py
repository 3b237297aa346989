import json
from itertools import product

import pytest

from quandlelab.catalog import load_quandle, quandle_names
from quandlelab.errors import InputError, ResourceLimitError
from quandlelab.fq import FqContext
from quandlelab.permgroup import PermGroup, parse_cycles, perm_order
from quandlelab.quandle import (
    QuandleTable,
    check_axioms,
    inner_group,
    is_isomorphic,
    make_alexander,
    make_alexander_fq,
    make_conjugation,
    make_spherical,
    make_symplectic,
    make_trivial,
    orbits,
    type_of,
)

CATALOG = quandle_names() + ["Sp_5_1", "Sphere_5_2", "R7", "Trivial2"]


@pytest.mark.parametrize("name", CATALOG)
def test_catalog_axioms(name):
    assert check_axioms(load_quandle(name)).ok


@pytest.mark.parametrize("name", CATALOG)
def test_type_divides_inn_over_size(name):
    Q = load_quandle(name)
    if not orbits(Q).connected:
        pytest.skip("only stated for connected quandles")
    inn = inner_group(Q).order
    assert inn % Q.n == 0
    assert (inn // Q.n) % type_of(Q) == 0


@pytest.mark.parametrize("name", CATALOG)
def test_schreier_sims_matches_closure(name):
    G = inner_group(load_quandle(name))
    if G.order <= 10_000:
        assert len(G.closure()) == G.order


def test_axiom_witness():
    op = [[0, 0], [0, 1]]  # column 0 is not a bijection
    chk = check_axioms(QuandleTable.from_json({"size": 2, "table": op}, validate=False))
    assert not chk.ok and chk.axiom == "ii"
    chk = check_axioms(QuandleTable.from_json({"size": 2, "table": [[1, 1], [0, 0]]}, validate=False))
    assert not chk.ok and chk.axiom == "i" and chk.witness == (0,)


def test_from_json_validates():
    with pytest.raises(InputError):
        QuandleTable.from_json({"size": 2, "table": [[0, 0], [0, 1]]})
    with pytest.raises(InputError):
        QuandleTable.from_json({"size": 3, "table": [[0, 1], [1, 0]]})


def test_json_roundtrip_keeps_alexander_data():
    Q = load_quandle("F4_omega")
    obj = json.loads(json.dumps(Q.to_json()))
    assert obj["size"] == 4 and len(obj["table"]) == 4
    R = QuandleTable.from_json(obj)
    assert R == Q and R.alexander == Q.alexander and R.labels == Q.labels


def test_dihedral():
    R3 = make_alexander([3], -1)
    assert [list(r) for r in R3.op] == [[0, 2, 1], [2, 1, 0], [1, 0, 2]]
    assert type_of(R3) == 2 and orbits(R3).connected
    assert inner_group(R3).order == 6


def test_f4_quandle():
    Q = load_quandle("F4_omega")
    assert Q.n == 4 and type_of(Q) == 3 and orbits(Q).connected
    assert inner_group(Q).order == 12


def test_alexander_fq_matches_polynomial_ring():
    # Z[T]/(2, T^2+T+1) is F_4 with T = a root of x^2+x+1
    ctx = FqContext(2, 2, (1, 1, 1))
    Q1 = make_alexander_fq(ctx, ctx.generator)
    Q2 = make_alexander([2, 2], [[0, 1], [1, 1]])
    assert is_isomorphic(Q1, Q2) is not None
    assert is_isomorphic(Q1, load_quandle("F4_omega")) is not None


def test_order8_alexander_quandles():
    a, b = load_quandle("Z2T3_a"), load_quandle("Z2T3_b")
    for Q in (a, b):
        assert Q.n == 8 and type_of(Q) == 7 and orbits(Q).connected
    iso = is_isomorphic(a, b)
    if iso is not None:
        assert all(iso[a.op[x][y]] == b.op[iso[x]][iso[y]] for x in range(8) for y in range(8))


@pytest.mark.parametrize("moduli,T", [([3], 2), ([5], 2), ([5], 4), ([9], 2), ([2, 2], [[0, 1], [1, 1]]),
                                      ([4], 3), ([6], 5), ([3, 3], [[1, 1], [0, 1]]), ([8], 3)])
def test_alexander_connected_iff_one_minus_t_onto(moduli, T):
    Q = make_alexander(moduli, T)
    data = Q.alexander
    image = set()
    for v in data.coords:
        Tv = data.apply_T(v)
        image.add(tuple((a - b) % m for a, b, m in zip(v, Tv, data.moduli)))
    assert orbits(Q).connected == (len(image) == Q.n)


def test_trivial_quandle():
    T = make_trivial(4)
    assert type_of(T) == 1 and orbits(T).count == 4 and inner_group(T).order == 1


def test_conjugation_quandles():
    S6 = load_quandle("S6_fourcycles")
    S6p = load_quandle("S6_transpositions")
    assert S6.n == S6p.n == 6
    assert type_of(S6) == 4 and type_of(S6p) == 2
    assert inner_group(S6).order == inner_group(S6p).order == 24
    assert set(S6.labels) == {"(1234)", "(1243)", "(1342)", "(1324)", "(1432)", "(1423)"}
    assert is_isomorphic(S6, S6p) is None
    with pytest.raises(InputError):
        make_conjugation([(1, 0, 2, 3)], (1, 2, 0, 3))  # a 3-cycle is not in <(12)>


def test_permgroup_basics():
    G = PermGroup(4, [parse_cycles("(1234)", 4), parse_cycles("(12)", 4)])
    assert G.order == 24
    assert parse_cycles("(13)", 4) in G
    A = PermGroup(4, [parse_cycles("(123)", 4), parse_cycles("(234)", 4)])
    assert A.order == 12 and parse_cycles("(12)", 4) not in A
    assert perm_order(parse_cycles("(12)(345)", 5)) == 6


def _brute_sphere(q, n):
    return sum(1 for v in product(range(q), repeat=n + 1) if sum(x * x for x in v) % q == 1)


@pytest.mark.parametrize("q", [5, 7, 13])
def test_sphere_size_and_inn(q):
    P = make_spherical(q, 2)
    assert P.n == _brute_sphere(q, 2)
    assert check_axioms(P).ok
    # the generators lie in SO(3, q); they generate Omega(3, q) of order q(q^2-1)/2
    assert inner_group(P).order == q * (q * q - 1) // 2


def test_sphere_over_f9():
    P = make_spherical(9, 2)
    assert P.n == 90
    assert inner_group(P).order == 9 * 80 // 2


@pytest.mark.parametrize("q", [5, 7, 9, 13])
def test_symplectic_inn_is_sl2(q):
    S = make_symplectic(q, 1)
    assert S.n == q * q - 1
    assert inner_group(S).order == q * (q * q - 1)


def test_symplectic_type():
    assert type_of(make_symplectic(5, 1)) == 5
    assert type_of(make_symplectic(9, 1)) == 3


def test_caps():
    with pytest.raises(ResourceLimitError):
        make_symplectic(5, 3, cap=1000)
    with pytest.raises(InputError):
        make_symplectic(4, 1)


def test_isomorphism_is_a_homomorphism():
    Q = load_quandle("S6_fourcycles")
    perm = [3, 5, 0, 1, 4, 2]
    inv = [perm.index(i) for i in range(6)]
    op = [[perm[Q.op[inv[x]][inv[y]]] for y in range(6)] for x in range(6)]
    P = QuandleTable(op)
    f = is_isomorphic(Q, P)
    assert f is not None
    assert all(f[Q.op[x][y]] == P.op[f[x]][f[y]] for x in range(6) for y in range(6))
