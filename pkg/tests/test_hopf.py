"""Hopf *-algebra fixtures, duals, variants, Haar integrals, pairings."""

import pytest

from hopfgal.errors import InputError
from hopfgal.fixtures import (
    S3_TABLE,
    c_of_s3,
    c_of_z2,
    ck4,
    cs3,
    cz2,
)
from hopfgal.hopf import (
    HopfPairing,
    canonical_pairing,
    dual_hopf,
    group_algebra,
    haar,
    hopf_equal,
    validate_hopf,
    validate_pairing,
    variants,
)
from hopfgal.linalg import identity_matrix, mat_vec, unit_vec, vzero
from hopfgal.scalars import Scalar


GROUP_FIXTURES = [cz2, ck4, cs3, c_of_z2, c_of_s3]


@pytest.mark.parametrize("make", GROUP_FIXTURES)
def test_group_type_fixtures_pass(make):
    H = make()
    rep = validate_hopf(H)
    assert rep.ok, rep.failed()
    assert H.is_kac()


def test_cs3_is_cocommutative_noncommutative():
    H = cs3()
    assert not H.algebra.is_commutative()
    assert all(
        H.comult[i] == {(k, j): v for (j, k), v in H.comult[i].items()}
        for i in range(H.dim)
    )


def test_dual_of_cs3_is_commutative_noncocommutative():
    D = dual_hopf(cs3())
    assert validate_hopf(D).ok
    assert D.algebra.is_commutative()
    cocommutative = all(
        D.comult[i] == {(k, j): v for (j, k), v in D.comult[i].items()}
        for i in range(D.dim)
    )
    assert not cocommutative


def test_dual_of_group_algebra_is_function_algebra():
    assert hopf_equal(dual_hopf(cz2()), c_of_z2())
    assert hopf_equal(dual_hopf(cs3()), c_of_s3())


def test_double_dual_is_identity_on_fixtures():
    for make in GROUP_FIXTURES:
        H = make()
        assert hopf_equal(dual_hopf(dual_hopf(H)), H)


def test_broken_antipode_fails_with_witness():
    H = cs3()
    bad = group_algebra(S3_TABLE)
    bad.antipode = identity_matrix(6)
    rep = validate_hopf(bad)
    chk = rep["antipode_axiom"]
    assert not chk.passed
    # witness is a non-involutive element: any transposition or 3-cycle
    assert chk.witness in (1, 2, 3, 4, 5)
    assert validate_hopf(H).ok


def test_single_entry_perturbations_fail():
    for make in GROUP_FIXTURES:
        H = make()
        H.algebra.mult[0][0][H.dim - 1] = (
            H.algebra.mult[0][0].get(H.dim - 1, Scalar.zero()) + Scalar.one()
        )
        assert not validate_hopf(H).ok
        H2 = make()
        key = next(iter(H2.comult[0]))
        H2.comult[0][key] = H2.comult[0][key] + Scalar.one()
        assert not validate_hopf(H2).ok
        H3 = make()
        H3.antipode[0][H3.dim - 1] = (
            H3.antipode[0][H3.dim - 1] + Scalar.one()
        )
        assert not validate_hopf(H3).ok


def test_variants():
    for make in (cz2, cs3):
        H = make()
        h_op, h_cop, h_opcop = variants(H)
        assert validate_hopf(h_op).ok
        assert validate_hopf(h_cop).ok
        assert validate_hopf(h_opcop).ok
    # abelian group algebra: cop variant has identical tensors
    assert hopf_equal(variants(cz2())[1], cz2())
    # double cop flip restores the original exactly
    H = cs3()
    assert hopf_equal(variants(variants(H)[1])[1], H)


def test_op_of_cs3_isomorphic_via_inversion():
    H = cs3()
    h_op = variants(H)[0]
    # P: g -> g^{-1} is an algebra isomorphism H^op -> H
    P = H.antipode  # inversion permutation for a group algebra
    for i in range(6):
        for j in range(6):
            prod_op = vzero(6)
            for k, v in h_op.algebra.mult[i][j].items():
                prod_op[k] = prod_op[k] + v
            lhs = mat_vec([[P[a][b] for a in range(6)] for b in range(6)],
                          prod_op)
            rhs = H.mul_vec(H.antipode_vec(unit_vec(6, i)),
                            H.antipode_vec(unit_vec(6, j)))
            assert lhs == rhs


def test_haar_group_algebra():
    tau = haar(cs3())
    assert tau[0] == Scalar.one()
    assert all(not tau[i] for i in range(1, 6))
    tau2 = haar(cz2())
    assert tau2 == [Scalar.one(), Scalar.zero()]


def test_haar_function_algebra_uniform():
    tau = haar(c_of_s3())
    assert all(t == Scalar.rational(1, 6) for t in tau)


def test_haar_invariance_properties():
    for make in GROUP_FIXTURES:
        H = make()
        tau = haar(H)
        n = H.dim
        for i in range(n):
            sv = H.star_vec(unit_vec(n, i))
            val = sum((sv[k] * tau[k] for k in range(n) if sv[k] and tau[k]),
                      Scalar.zero())
            assert val == tau[i].conj()
            av = H.antipode_vec(unit_vec(n, i))
            val = sum((av[k] * tau[k] for k in range(n) if av[k] and tau[k]),
                      Scalar.zero())
            assert val == tau[i]


def test_haar_missing():
    # Breaking the comultiplication of CZ2 so that the invariance equations
    # force tau = 0 leaves nothing to normalize.
    H = cz2()
    H.coalgebra.comult[1] = {(0, 1): Scalar.one()}
    with pytest.raises(InputError, match="no normalizable two-sided"):
        haar(H)


def test_canonical_pairing_validates():
    for make in (cz2, cs3, ck4):
        H = make()
        P = canonical_pairing(dual_hopf(H), H)
        rep = validate_pairing(P)
        assert rep.ok, rep.failed()


def test_zero_pairing_fails_unit_laws():
    H = cz2()
    P = HopfPairing(dual_hopf(H), H,
                    [[Scalar.zero()] * 2 for _ in range(2)])
    rep = validate_pairing(P)
    assert not rep["unit_pairs_to_counit"].passed


def test_group_table_validation():
    with pytest.raises(InputError, match="not a group"):
        group_algebra([[0, 1], [1, 1]])
    with pytest.raises(InputError, match="not a group"):
        group_algebra([[1, 0], [0, 1]])


def test_antipode_is_algebra_and_coalgebra_antihomomorphism():
    for make in GROUP_FIXTURES:
        H = make()
        n = H.dim
        for i in range(n):
            for j in range(n):
                prod = vzero(n)
                for k, v in H.algebra.mult[i][j].items():
                    prod[k] = prod[k] + v
                lhs = H.antipode_vec(prod)
                rhs = H.mul_vec(H.antipode_vec(unit_vec(n, j)),
                                H.antipode_vec(unit_vec(n, i)))
                assert lhs == rhs
        for i in range(n):
            lhs = H.comult_vec(H.antipode_vec(unit_vec(n, i)))
            rhs = {}
            for (j, k), v in H.comult[i].items():
                sj = H.antipode_vec(unit_vec(n, j))
                sk = H.antipode_vec(unit_vec(n, k))
                for a, va in enumerate(sk):
                    if va:
                        for b, vb in enumerate(sj):
                            if vb:
                                key = (a, b)
                                cur = rhs.get(key, Scalar.zero())
                                rhs[key] = cur + v * va * vb
            keys = set(lhs) | set(rhs)
            zero = Scalar.zero()
            assert all(lhs.get(t, zero) == rhs.get(t, zero) for t in keys)


def test_sweedler_algebra_is_a_non_kac_hopf_star_algebra():
    from hopfgal.fixtures import sweedler4

    H = sweedler4()
    rep = validate_hopf(H)
    assert rep.ok, rep.failed()
    assert not H.is_kac()
    # S^2 = Ad(g): on x it is -1, S^4 = id
    x = unit_vec(4, 2)
    s2 = H.antipode_vec(H.antipode_vec(x))
    assert s2 == [Scalar.zero(), Scalar.zero(), Scalar.from_int(-1),
                  Scalar.zero()]
    s4 = H.antipode_vec(H.antipode_vec(s2))
    assert s4 == [v * Scalar.from_int(-1) for v in s2]


def test_sweedler_dual_and_variants():
    from hopfgal.fixtures import sweedler4
    from hopfgal.hopf import hopf_equal as _eq

    H = sweedler4()
    D = dual_hopf(H)
    assert validate_hopf(D).ok, validate_hopf(D).failed()
    assert _eq(dual_hopf(D), H)
    h_op, h_cop, h_opcop = variants(H)
    for v in (h_op, h_cop, h_opcop):
        rep = validate_hopf(v)
        assert rep.ok, rep.failed()
    # the op/cop variants genuinely use the inverse antipode here
    assert h_op.antipode != H.antipode


def test_sweedler_has_no_normalizable_integral():
    from hopfgal.fixtures import sweedler4

    with pytest.raises(InputError, match="no normalizable"):
        haar(sweedler4())


def test_haar_is_a_faithful_tracial_state():
    from hopfgal.algebra import analyze_state
    from hopfgal.hopf import haar_state

    for make in GROUP_FIXTURES:
        carrier = haar_state(make())
        st = analyze_state(carrier)
        assert st.tracial and st.hermitian and st.faithful and st.positive
