import json
import random
from itertools import combinations

import pytest

from bracelie.exactalg import PrimeField, QQ, ZZ
from bracelie.liealg import (
    L10_LAMBDAS,
    LambdaConstraintError,
    LieAlgebra,
    PresentedLieAlgebra,
    algebra_from_json,
    algebra_to_json,
    builtin_algebra,
    burde_family,
    burde_l10,
    heisenberg,
)


def jacobi_failures_oracle(alg):
    """Independent triple loop: [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej]."""
    ring = alg.ring
    bad = []
    for i, j, k in combinations(range(alg.dim), 3):
        total = [ring.zero] * alg.dim
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            t = alg.bracket(alg.bracket(alg.basis_vector(a), alg.basis_vector(b)),
                            alg.basis_vector(c))
            total = [ring.add(u, v) for u, v in zip(total, t)]
        if any(v != ring.zero for v in total):
            bad.append((i, j, k))
    return bad


def abelian(ring, dim):
    return LieAlgebra(ring, dim, {})


def heis_algebra(ring):
    return heisenberg(ring).base


def test_bracket_rule_and_antisymmetry():
    L = burde_l10(ZZ).base
    e = L.basis_vector
    assert L.bracket(e(0), e(4)) == e(5)
    assert L.bracket(e(4), e(5)) == e(9)
    assert L.bracket(e(1), e(8)) == tuple(-x for x in e(9))
    rng = random.Random(0)
    for _ in range(20):
        x = tuple(rng.randint(-5, 5) for _ in range(10))
        assert L.bracket(x, x) == L.zero_vector()


def test_bracket_bilinear():
    L = burde_l10(PrimeField(13)).base
    rng = random.Random(1)
    for _ in range(50):
        x = tuple(rng.randrange(13) for _ in range(10))
        xp = tuple(rng.randrange(13) for _ in range(10))
        y = tuple(rng.randrange(13) for _ in range(10))
        a, b = rng.randrange(13), rng.randrange(13)
        combo = tuple((a * u + b * v) % 13 for u, v in zip(x, xp))
        left = L.bracket(combo, y)
        right = tuple((a * u + b * v) % 13
                      for u, v in zip(L.bracket(x, y), L.bracket(xp, y)))
        assert left == right


def test_validate_abelian_and_fixed_algebra():
    assert abelian(ZZ, 4).validate() == []
    assert burde_l10(ZZ).base.validate() == []
    assert jacobi_failures_oracle(burde_l10(ZZ).base) == []


def test_validate_catches_broken_constraint():
    # forcing l7 = +l1 violates the family constraints and must break Jacobi
    lams = list(L10_LAMBDAS)
    lams[6] = +1
    brackets = {}
    good = burde_l10(ZZ).base
    for (i, j), row in good.brackets.items():
        brackets[(i, j)] = dict(row)
    # rebuild rows that depend on l7: [e1,e4], [e1,e5], [e1,e6], [e1,e7], [e2,*]
    l = [None] + lams
    brackets[(1, 4)] = {6: l[1] - l[7], 7: l[2] - l[8], 8: l[3] - l[9], 9: l[4] - l[10]}
    brackets[(1, 5)] = {7: l[1] - 2 * l[7], 8: l[2] - 2 * l[8], 9: l[3] - 2 * l[9]}
    brackets[(1, 6)] = {8: l[1] - 3 * l[7] + l[11], 9: l[2] - 3 * l[8] + l[12]}
    brackets[(1, 7)] = {9: l[1] - 4 * l[7] + 3 * l[11]}
    brackets[(2, 3)] = {6: l[7], 7: l[8], 8: l[9], 9: l[10]}
    brackets[(2, 4)] = {7: l[7], 8: l[8], 9: l[9]}
    brackets[(2, 5)] = {8: l[7] - l[11], 9: l[8] - l[12]}
    brackets[(2, 6)] = {9: l[7] - 2 * l[11]}
    broken = LieAlgebra(ZZ, 10, brackets)
    failures = broken.validate()
    assert failures
    assert [f[:3] for f in failures] == jacobi_failures_oracle(broken)


def test_lower_central_series_and_class():
    assert abelian(PrimeField(5), 3).nilpotency_class() == 1
    assert heis_algebra(PrimeField(5)).nilpotency_class() == 2
    assert heis_algebra(PrimeField(5)).lower_central_series() == [3, 1, 0]
    for p in (11, 13, 23):
        Lp = burde_l10(PrimeField(p)).base
        assert Lp.lower_central_series() == [10, 8, 7, 6, 5, 4, 3, 2, 1, 0]
        assert Lp.nilpotency_class() == 9
    assert burde_l10(ZZ).base.nilpotency_class() == 9


def test_non_nilpotent_marker():
    sl2 = LieAlgebra(PrimeField(7), 3, {(0, 1): {2: 1}, (0, 2): {0: 2},
                                        (1, 2): {1: -2}})
    assert sl2.validate() == []
    assert sl2.nilpotency_class() == float("inf")


def test_center():
    assert len(abelian(PrimeField(5), 4).center()) == 4
    heis_center = heis_algebra(PrimeField(5)).center()
    assert heis_center == [(0, 0, 1)]
    for p in (11, 13, 23):
        c = burde_l10(PrimeField(p)).base.center()
        assert c == [(0,) * 9 + (1,)]


def test_burde_family_reproduces_fixed_table():
    alg = burde_family(L10_LAMBDAS, ZZ)
    assert alg == burde_l10(ZZ).base
    e = alg.basis_vector
    v = alg.bracket(e(1), e(7))
    assert v == tuple(14 if i == 9 else 0 for i in range(10))
    v = alg.bracket(e(2), e(5))
    assert v == tuple(-4 if i == 8 else 0 for i in range(10))
    # internal consistency of the l12 value
    l = L10_LAMBDAS
    assert l[11] == -(9 * l[1] + 16 * l[7]) + (l[12] // l[0]) * (2 * l[2] + l[8])


def test_burde_family_constraint_errors():
    bad = list(L10_LAMBDAS)
    bad[0] = 0
    with pytest.raises(LambdaConstraintError) as exc:
        burde_family(bad, ZZ)
    assert exc.value.constraint == "l1 != 0"

    bad = list(L10_LAMBDAS)
    bad[1], bad[7] = 1, -3  # 3*l2 + l8 = 0
    with pytest.raises(LambdaConstraintError) as exc:
        burde_family(bad, ZZ)
    assert exc.value.constraint == "3*l2 + l8 != 0"

    bad = list(L10_LAMBDAS)
    bad[6] = +1
    with pytest.raises(LambdaConstraintError) as exc:
        burde_family(bad, ZZ)
    assert exc.value.constraint == "l7 = -l1"

    bad = list(L10_LAMBDAS)
    bad[10] = 4
    with pytest.raises(LambdaConstraintError) as exc:
        burde_family(bad, ZZ)
    assert exc.value.constraint == "l11 = 3*l1"

    bad = list(L10_LAMBDAS)
    bad[11] = 5
    with pytest.raises(LambdaConstraintError):
        burde_family(bad, ZZ)


def random_lambda(p, rng):
    """Free choices with the derived values filled in, all constraints met."""
    while True:
        l1 = rng.randrange(1, p)
        l2, l3, l4, l5, l6 = (rng.randrange(p) for _ in range(5))
        l8, l9, l10 = (rng.randrange(p) for _ in range(3))
        l13 = rng.randrange(p)
        if (3 * l2 + l8) % p != 0:
            break
    l7 = -l1 % p
    l11 = 3 * l1 % p
    l12 = (-(9 * l2 + 16 * l8) + l13 * pow(l1, -1, p) * (2 * l3 + l9)) % p
    return (l1, l2, l3, l4, l5, l6, l7, l8, l9, l10, l11, l12, l13)


@pytest.mark.parametrize("p", [11, 13, 23])
def test_burde_family_random_members_are_lie_algebras(p):
    rng = random.Random(p)
    ring = PrimeField(p)
    for _ in range(50):
        alg = burde_family(random_lambda(p, rng), ring)
        assert alg.validate() == []


def test_reduce_mod_examples():
    L = burde_l10(ZZ).base
    e = L.basis_vector

    L11 = L.reduce_mod(11)
    assert L11.bracket(e(2), e(3))[8] == (-25) % 11  # -25 -> 8

    L5 = L.reduce_mod(5)
    v = L5.bracket(e(1), e(4))
    assert v == (0, 0, 0, 0, 0, 0, 2, 3, 0, 0)  # 25 -> 0

    L23 = L.reduce_mod(23)
    assert L23.bracket(e(3), e(4))[9] == (-2) % 23  # -2 -> 21

    with pytest.raises(ValueError):
        L.reduce_mod(10)
    with pytest.raises(TypeError):
        L11.reduce_mod(11)


def test_reduction_preserves_validity_all_small_primes():
    from bracelie.exactalg import is_prime
    L = burde_l10(ZZ).base
    for p in range(2, 101):
        if is_prime(p):
            assert L.reduce_mod(p).validate() == [], p


def test_presentation_structure():
    P = burde_l10(ZZ)
    assert P.generators == (0, 1)
    assert P.rule_pairs() == {(0, i) for i in range(1, 9)}
    assert len(P.relation_pairs()) == 37
    assert (0, 9) in P.relation_pairs()

    with pytest.raises(ValueError):
        PresentedLieAlgebra(heis_algebra(ZZ), (0, 1), [(2, 0, 2)])  # uses e2 before defined
    with pytest.raises(ValueError):
        PresentedLieAlgebra(heis_algebra(ZZ), (0,), [(2, 0, 1)])  # e1 never available


def test_builtins():
    assert builtin_algebra("heisenberg", ZZ).dim == 3
    assert builtin_algebra("burde-l10", PrimeField(11)).dim == 10
    with pytest.raises(ValueError):
        builtin_algebra("nope", ZZ)


def test_algebra_json_round_trip(tmp_path):
    P = burde_l10(ZZ)
    doc = json.loads(json.dumps(algebra_to_json(P)))
    back = algebra_from_json(doc)
    assert isinstance(back, PresentedLieAlgebra)
    assert back.base == P.base
    assert back.generators == P.generators
    assert back.rules == P.rules

    plain = heis_algebra(PrimeField(7))
    doc = algebra_to_json(plain)
    assert algebra_from_json(doc) == plain
