import itertools
import json
import random
from importlib import resources

import pytest

from bracelie.braces import BoundExceededError
from bracelie.exactalg import Matrix, PrimeField, ZZ
from bracelie.liealg import burde_l10, heisenberg
from bracelie.polysolve import (
    Certificate,
    MonomialOrder,
    Polynomial,
    PolySystem,
    Witness,
    buchberger,
    certificate_from_json,
    certificate_to_json,
    generate_system,
    is_groebner_basis,
    mono_degree,
    mono_divides,
    mono_lcm,
    mono_mul,
    poly_from_json,
    poly_to_json,
    solve_small,
    substitute_witness,
    system_from_json,
    system_to_json,
    verify_certificate,
    witness_from_json,
    witness_to_json,
)

FP5 = PrimeField(5)
FP7 = PrimeField(7)


def bundled_witness():
    ref = resources.files("bracelie").joinpath("data/witness_f11_u11.json")
    return witness_from_json(json.loads(ref.read_text(encoding="utf-8")))


def var(ring, i):
    return Polynomial.variable(ring, i)


def const(ring, c):
    return Polynomial.constant(ring, c)


# -- monomials and polynomials ---------------------------------------------


def test_monomial_helpers():
    a = ((0, 2), (2, 1))
    b = ((0, 1), (1, 3))
    assert mono_mul(a, b) == ((0, 3), (1, 3), (2, 1))
    assert mono_degree(a) == 3
    assert mono_divides(((0, 1),), a)
    assert not mono_divides(((1, 1),), a)
    assert mono_lcm(a, b) == ((0, 2), (1, 3), (2, 1))


def test_grevlex_and_lex_orders():
    grevlex = MonomialOrder("grevlex", 3)
    lex = MonomialOrder("lex", 3)
    x, y, z = ((0, 1),), ((1, 1),), ((2, 1),)
    assert grevlex.key(x) > grevlex.key(y) > grevlex.key(z)
    assert lex.key(x) > lex.key(y) > lex.key(z)
    # grevlex ranks by total degree first
    assert grevlex.key(mono_mul(y, z)) > grevlex.key(x)
    # lex does not
    assert lex.key(x) > lex.key(mono_mul(y, z))
    # the grevlex tiebreak: x*z < y^2 since z is smaller in reverse position
    assert grevlex.key(((1, 2),)) > grevlex.key(((0, 1), (2, 1)))


def test_polynomial_arithmetic_and_evaluation():
    x, y = var(ZZ, 0), var(ZZ, 1)
    p = (x + y) * (x - y)
    assert p.terms == {((0, 2),): 1, ((1, 2),): -1}
    assert p.evaluate((7, 3)) == 40
    assert (p - p).is_zero()
    q = p.reduce_mod(5)
    assert q.evaluate((2, 1)) == 3
    with pytest.raises(TypeError):
        q.reduce_mod(5)


# -- Groebner bases -----------------------------------------------------------


def test_buchberger_already_a_basis():
    s = PolySystem(FP7, ["x", "y"], [var(FP7, 0) - const(FP7, 1),
                                     var(FP7, 1) - const(FP7, 2)])
    res = buchberger(s)
    assert not res.inconsistent
    assert len(res.basis) == 2
    assert is_groebner_basis(res, s)


def test_buchberger_detects_unit_ideal():
    s = PolySystem(FP5, ["x"], [var(FP5, 0), var(FP5, 0) + const(FP5, 1)])
    res = buchberger(s)
    assert res.inconsistent
    assert [g.terms for g in res.basis] == [{(): 1}]


def test_buchberger_unit_via_s_polynomial():
    # {xy - 1, x^2}: the S-polynomial chain puts x, then 1, in the ideal
    x, y = var(FP5, 0), var(FP5, 1)
    s = PolySystem(FP5, ["x", "y"], [x * y - const(FP5, 1), x * x])
    res = buchberger(s)
    assert res.inconsistent


def test_buchberger_deterministic():
    rng = random.Random(0)
    for _ in range(5):
        s = random_small_system(rng, 3, 7)
        r1 = buchberger(s)
        r2 = buchberger(s)
        assert [g.terms for g in r1.basis] == [g.terms for g in r2.basis]


def test_polynomial_constructor_normalizes_monomials():
    # duplicate variables merge and zero exponents drop
    p = Polynomial(ZZ, {((0, 1), (0, 2)): 1, ((1, 0), (0, 3)): 2})
    assert p.terms == {((0, 3),): 3}
    with pytest.raises(ValueError):
        Polynomial(ZZ, {((0, -1),): 1})


def test_buchberger_budget_error():
    P = burde_l10(ZZ)
    system = generate_system(P, 11, rabinowitsch=True).reduce_mod(23)
    with pytest.raises(BoundExceededError):
        buchberger(system, budget=10_000)


def random_small_system(rng, nvars, p):
    ring = PrimeField(p)
    gens = []
    for _ in range(rng.randrange(1, 4)):
        terms = {}
        for _ in range(rng.randrange(1, 5)):
            mono = []
            degree = rng.randrange(0, 4)
            for _ in range(degree):
                mono.append(rng.randrange(nvars))
            counted = {}
            for v in mono:
                counted[v] = counted.get(v, 0) + 1
            terms[tuple(sorted(counted.items()))] = rng.randrange(p)
        poly = Polynomial(ring, terms)
        if not poly.is_zero():
            gens.append(poly)
    if not gens:
        gens = [Polynomial(ring, {((0, 1),): 1})]
    return PolySystem(ring, [f"x{i}" for i in range(nvars)], gens)


def test_groebner_verdict_matches_brute_force_with_field_equations():
    # on a fixed corpus of 50 random systems, appending x^p - x makes the
    # Groebner verdict decide F_p-solvability exactly
    rng = random.Random(2024)
    checked = 0
    while checked < 50:
        nvars = rng.randrange(1, 5)
        p = rng.choice([2, 3, 5, 7])
        system = random_small_system(rng, nvars, p)
        solutions = solve_small(system)
        closed = system.with_field_equations()
        res = buchberger(closed, budget=400_000)
        assert res.inconsistent == (not solutions), (nvars, p)
        assert is_groebner_basis(res, closed)
        checked += 1


def test_unit_verdict_implies_no_points_even_without_field_equations():
    # 1 in the ideal always rules out rational points; the converse needs the
    # field equations: x^2 + 1 over F_3 has no roots yet the ideal is proper
    fp3 = PrimeField(3)
    s = PolySystem(fp3, ["x"], [Polynomial(fp3, {((0, 2),): 1, (): 1})])
    res = buchberger(s)
    assert not res.inconsistent
    assert solve_small(s) == []
    res2 = buchberger(s.with_field_equations())
    assert res2.inconsistent


# -- system generation ----------------------------------------------------------


def test_generate_system_counts_for_the_big_algebra():
    P = burde_l10(ZZ)
    system = generate_system(P, 11, rabinowitsch=True)
    assert sum(1 for v in system.variables if v.startswith("y")) == 110
    assert sum(1 for v in system.variables if v.startswith("z_")) == 55
    assert system.n_matrix_unknowns == 110
    # 37 bracket relations with 55 strictly-upper slots each, identically-zero
    # entries dropped, plus the appended auxiliary polynomial
    assert len(P.relation_pairs()) == 37
    candidate_slots = 37 * 55
    assert len(system.generators) - 1 < candidate_slots

    # counting oracle: a slot polynomial is kept iff it is not identically
    # zero; random integer substitutions never all vanish on a kept slot
    rng = random.Random(5)
    nonzero_seen = set()
    for _ in range(3):
        point = [rng.randrange(-7, 8) for _ in range(system.nvars)]
        for idx, g in enumerate(system.generators[:-1]):
            if g.evaluate(point) != 0:
                nonzero_seen.add(idx)
    assert len(nonzero_seen) == len(system.generators) - 1


def test_generate_system_rejects_tiny_targets():
    with pytest.raises(ValueError):
        generate_system(heisenberg(ZZ), 1)


def test_heisenberg_system_hand_witness():
    P = heisenberg(ZZ)
    system = generate_system(P, 3, rabinowitsch=True)
    assert system.n_matrix_unknowns == 6
    # E_x = e_12, E_y = e_23 gives E_z = e_13; the only nonzero central entry
    # is slot (0,2), so its auxiliary variable must be 1
    values = {"y0_0_1": 1, "y0_0_2": 0, "y0_1_2": 0,
              "y1_0_1": 0, "y1_0_2": 0, "y1_1_2": 1,
              "z_0": 0, "z_1": 1, "z_2": 0}
    point = [values[name] for name in system.variables]
    assert all(g.evaluate(point) == 0 for g in system.generators)


def test_zero_images_satisfy_relations_but_not_injectivity():
    P = burde_l10(ZZ)
    fp = PrimeField(11)
    zero = Matrix.zeros(fp, 11)
    report, _ = substitute_witness(P, Witness(11, 11, zero, zero))
    assert report.is_morphism
    assert not report.central_image_nonzero
    assert not report.injective


# -- witness verification ---------------------------------------------------------


def test_bundled_witness_is_an_injective_morphism():
    w = bundled_witness()
    report, images = substitute_witness(burde_l10(ZZ), w)
    assert len(report.relations) == 37
    assert report.is_morphism and report.central_image_nonzero and report.injective
    # the derived image of the central vector is the single unit at (0, 10)
    e9 = images[9]
    assert e9.entries[0][10] == 1
    assert sum(1 for row in e9.entries for x in row if x) == 1


def test_bundled_witness_fails_mod_23():
    w = bundled_witness()
    fp23 = PrimeField(23)
    lifted = Witness(23, 11,
                     Matrix(fp23, [list(r) for r in w.e0.entries]),
                     Matrix(fp23, [list(r) for r in w.e1.entries]))
    report, _ = substitute_witness(burde_l10(ZZ), lifted)
    assert not report.is_morphism
    assert report.failing  # at least one bracket relation has nonzero residual


def test_witness_shape_validation():
    fp = PrimeField(11)
    with pytest.raises(ValueError):
        Witness(11, 11, Matrix.identity(fp, 11), Matrix.zeros(fp, 11))
    with pytest.raises(ValueError):
        Witness(11, 10, Matrix.zeros(fp, 11), Matrix.zeros(fp, 11))
    with pytest.raises(ValueError):
        Witness(13, 11, Matrix.zeros(fp, 11), Matrix.zeros(fp, 11))


def test_two_path_consistency_heisenberg():
    # residuals from direct matrix substitution match evaluating the generated
    # polynomials, on random (not necessarily solving) strictly upper pairs
    P = heisenberg(ZZ)
    system = generate_system(P, 3)
    rng = random.Random(6)
    fp = PrimeField(7)
    P7 = heisenberg(fp)
    sys7 = system.reduce_mod(7)
    for _ in range(20):
        e0 = Matrix(fp, [[0, rng.randrange(7), rng.randrange(7)],
                         [0, 0, rng.randrange(7)], [0, 0, 0]])
        e1 = Matrix(fp, [[0, rng.randrange(7), rng.randrange(7)],
                         [0, 0, rng.randrange(7)], [0, 0, 0]])
        report, images = substitute_witness(P7, Witness(7, 3, e0, e1))
        point = [e0.entries[0][1], e0.entries[0][2], e0.entries[1][2],
                 e1.entries[0][1], e1.entries[0][2], e1.entries[1][2]]
        residual_zero = all(g.evaluate(point) == 0 for g in sys7.generators)
        assert residual_zero == report.is_morphism


def test_two_path_consistency_big_algebra():
    P = burde_l10(ZZ)
    system = generate_system(P, 11).reduce_mod(11)
    w = bundled_witness()
    slots = [(r, c) for r in range(11) for c in range(r + 1, 11)]
    point = [w.e0.entries[r][c] for r, c in slots] + \
            [w.e1.entries[r][c] for r, c in slots]
    sample = random.Random(7).sample(range(len(system.generators)), 60)
    for idx in sample:
        assert system.generators[idx].evaluate(point) == 0


def test_generation_commutes_with_reduction():
    for p in (5, 11):
        direct = generate_system(burde_l10(PrimeField(p)), 6)
        reduced = generate_system(burde_l10(ZZ), 6).reduce_mod(p)
        assert direct.variables == reduced.variables
        assert [g.terms for g in direct.generators] == [g.terms for g in reduced.generators]


# -- certificates -------------------------------------------------------------------


def test_certificate_accepts_toy_identity():
    y = var(ZZ, 0)
    system = PolySystem(ZZ, ["y"], [y, const(ZZ, 1) - y])
    cert = Certificate((const(ZZ, 1), const(ZZ, 1)), 1)
    for p in (2, 3, 11, 23):
        report = verify_certificate(system, cert, p)
        assert report.identity_holds and report.coprime_to_p and report.certified


def test_certificate_gcd_failure():
    # 1*(2y) + 2*(1 - y) = 2: the identity holds with k = 2, so the system is
    # certified unsolvable exactly for odd p; and indeed mod 2 it IS solvable
    y = var(ZZ, 0)
    system = PolySystem(ZZ, ["y"], [y.scale(2), const(ZZ, 1) - y])
    cert = Certificate((const(ZZ, 1), const(ZZ, 2)), 2)
    rep2 = verify_certificate(system, cert, 2)
    assert rep2.identity_holds and not rep2.coprime_to_p and not rep2.certified
    assert solve_small(system.reduce_mod(2)) == [(1,)]
    for p in (3, 5, 7, 23):
        rep = verify_certificate(system, cert, p)
        assert rep.certified
        assert solve_small(system.reduce_mod(p)) == []


def test_certificate_identity_failure():
    y = var(ZZ, 0)
    system = PolySystem(ZZ, ["y"], [y * y, y + const(ZZ, 1)])
    cert = Certificate((const(ZZ, 1), const(ZZ, 1)), 1)
    report = verify_certificate(system, cert, 5)
    assert not report.identity_holds and not report.certified


def test_certificate_arity_and_k_validation():
    y = var(ZZ, 0)
    system = PolySystem(ZZ, ["y"], [y])
    with pytest.raises(ValueError):
        verify_certificate(system, Certificate((const(ZZ, 1), const(ZZ, 1)), 1), 5)
    with pytest.raises(ValueError):
        Certificate((const(ZZ, 1),), 0)


def test_certificate_soundness_against_brute_force():
    # whenever a certificate verifies, the brute-force search finds nothing
    y, z = var(ZZ, 0), var(ZZ, 1)
    # y * z - ... constructions with known certificates
    cases = [
        (PolySystem(ZZ, ["y"], [y * y - const(ZZ, 2) * y + const(ZZ, 1), y - const(ZZ, 3)]),
         None),  # solvable over some fields; no certificate claimed
        (PolySystem(ZZ, ["y"], [y, const(ZZ, 1) - y]),
         Certificate((const(ZZ, 1), const(ZZ, 1)), 1)),
        (PolySystem(ZZ, ["y", "z"], [y, z, y + z - const(ZZ, 1)]),
         Certificate((const(ZZ, -1), const(ZZ, -1), const(ZZ, 1)), -1)),
    ]
    for system, cert in cases:
        if cert is None:
            continue
        for p in (2, 3, 5, 7):
            report = verify_certificate(system, cert, p)
            if report.certified:
                assert solve_small(system.reduce_mod(p)) == []


# -- brute force ----------------------------------------------------------------------


def test_solve_small_examples():
    fp3 = PrimeField(3)
    s = PolySystem(fp3, ["x"], [Polynomial(fp3, {((0, 2),): 1, (): 1})])
    assert solve_small(s) == []
    s5 = PolySystem(FP5, ["x"], [Polynomial(FP5, {((0, 2),): 1, (): 1})])
    assert solve_small(s5) == [(2,), (3,)]
    empty = PolySystem(fp3, ["x"], [])
    assert solve_small(empty) == [(0,), (1,), (2,)]


def test_solve_small_space_bound():
    s = PolySystem(FP7, [f"x{i}" for i in range(12)], [])
    with pytest.raises(BoundExceededError):
        solve_small(s)


# -- serialization -----------------------------------------------------------------------


def test_poly_json_round_trip():
    p = Polynomial(ZZ, {((0, 2), (3, 1)): 10 ** 25, ((1, 1),): -3, (): 7})
    doc = json.loads(json.dumps(poly_to_json(p)))
    assert poly_from_json(ZZ, doc) == p


def test_system_json_round_trip():
    system = generate_system(heisenberg(ZZ), 3, rabinowitsch=True)
    doc = json.loads(json.dumps(system_to_json(system)))
    back = system_from_json(doc)
    assert back.variables == system.variables
    assert back.n_matrix_unknowns == system.n_matrix_unknowns
    assert [g.terms for g in back.generators] == [g.terms for g in system.generators]


def test_witness_json_round_trip():
    w = bundled_witness()
    doc = json.loads(json.dumps(witness_to_json(w)))
    back = witness_from_json(doc)
    assert back.e0 == w.e0 and back.e1 == w.e1 and back.p == w.p


def test_certificate_json_round_trip():
    cert = Certificate((var(ZZ, 0), const(ZZ, -(10 ** 20))), 17)
    doc = json.loads(json.dumps(certificate_to_json(cert)))
    back = certificate_from_json(doc)
    assert back.k == cert.k
    assert [g.terms for g in back.cofactors] == [g.terms for g in cert.cofactors]
