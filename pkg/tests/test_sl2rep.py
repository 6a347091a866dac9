"""Weight bases, sl2 actions, Casimir and Gaudin operators."""

import random

import numpy as np
import pytest

from kzmodp import SparsePoly, WeightVector, basis, casimir_apply, casimir_matrix
from kzmodp.sl2rep import (
    casimir_index_action,
    conformal_block_test,
    diagonal_action_matrix,
    gaudin_matrix,
    random_weight_vector,
    validate_weights,
    weight_space_dimension_oracle,
)


def test_basis_size_matches_generating_function():
    for m in ((1, 1), (2, 2), (1, 1, 1), (3, 1, 2), (2, 2, 2, 1)):
        for k in range(sum(m) + 1):
            assert len(basis(m, k)) == weight_space_dimension_oracle(m, k)


def test_basis_entries_are_valid_and_sorted():
    m = (2, 1, 3)
    for k in range(sum(m) + 1):
        bas = basis(m, k)
        assert bas == sorted(bas)
        for J in bas:
            assert sum(J) == k
            assert all(0 <= j <= ms for j, ms in zip(J, m))


def test_validate_weights_rejects_bad_input():
    with pytest.raises(ValueError):
        validate_weights((0, 1), 1)
    with pytest.raises(ValueError):
        validate_weights((1, 1), 3)
    with pytest.raises(ValueError):
        basis((1, 1), -1)


def test_sl2_bracket_ef_minus_fe_is_h():
    rng = random.Random(100)
    for p, m in ((5, (2, 2)), (7, (1, 1, 1)), (11, (3, 1))):
        for k in range(1, sum(m)):
            scalar = (sum(m) - 2 * k) % p
            for _ in range(8):
                w = random_weight_vector(rng, p, m, k)
                ef = w.act_f().act_e() - w.act_e().act_f()
                assert ef == w.scale(scalar)


def test_sl2_bracket_h_with_e_and_f():
    rng = random.Random(101)
    for p, m in ((5, (2, 2)), (7, (2, 1, 1))):
        for k in range(1, sum(m)):
            for _ in range(5):
                w = random_weight_vector(rng, p, m, k)
                assert w.act_e().act_h() - w.act_h().act_e() == w.act_e().scale(2)
                assert w.act_f().act_h() - w.act_h().act_f() == w.act_f().scale(p - 2)


def test_actions_are_linear():
    rng = random.Random(102)
    p, m, k = 7, (2, 2), 2
    for _ in range(10):
        a = random_weight_vector(rng, p, m, k)
        b = random_weight_vector(rng, p, m, k)
        c = rng.randrange(1, p)
        assert (a + b).act_e() == a.act_e() + b.act_e()
        assert a.scale(c).act_f() == a.act_f().scale(c)


def test_casimir_is_symmetric_under_slot_swap():
    # the (i, j) operator only sees slots i and j; applying it twice with
    # matrices must agree with the direct coordinate action
    rng = random.Random(103)
    p, m, k = 5, (2, 1, 2), 2
    bas = basis(m, k)
    for i in range(3):
        for j in range(i + 1, 3):
            mat = casimir_matrix(p, m, k, i, j)
            for _ in range(5):
                w = random_weight_vector(rng, p, m, k)
                direct = casimir_apply(w, i, j)
                for row, J in enumerate(bas):
                    expected = SparsePoly.zero(p, 0, len(m))
                    for col, Jc in enumerate(bas):
                        c = int(mat[row, col])
                        if c and Jc in w.coords:
                            expected = expected + w.coords[Jc].scale(c)
                    assert direct.coord(J) == expected


def test_casimir_commutes_with_diagonal_e():
    # e is a sum over slots, the Casimir acts in two slots: they commute
    # as operators between adjacent weight spaces
    for p, m, k in ((5, (2, 2), 2), (7, (1, 1, 1), 2)):
        E = diagonal_action_matrix(p, m, k, "e")
        for i in range(len(m)):
            for j in range(i + 1, len(m)):
                om_k = casimir_matrix(p, m, k, i, j)
                om_k1 = casimir_matrix(p, m, k - 1, i, j)
                assert ((E @ om_k - om_k1 @ E) % p == 0).all()


def test_gaudin_matrices_sum_to_scalar():
    # sum_i H_i = sum_{i<j} Omega^(ij) (1/(z_i-z_j) + 1/(z_j-z_i)) = 0
    p, m, k = 7, (2, 1, 1), 2
    z = (1, 3, 6)
    total = sum(gaudin_matrix(p, m, k, i, z) for i in range(3)) % p
    assert (total == 0).all()


def test_gaudin_requires_distinct_z():
    with pytest.raises(ValueError):
        gaudin_matrix(5, (1, 1), 1, 0, (2, 2))


def test_ze_apply_matches_manual_sum():
    rng = random.Random(104)
    p, m, k = 5, (2, 2), 2
    n = len(m)
    for _ in range(10):
        w = random_weight_vector(rng, p, m, k)
        manual = WeightVector.zero(p, m, k - 1)
        for s in range(n):
            only_s = {}
            for J, poly in w.coords.items():
                if J[s]:
                    c = (J[s] * (m[s] - J[s] + 1)) % p
                    tgt = J[:s] + (J[s] - 1,) + J[s + 1 :]
                    add = (poly * SparsePoly.var_z(p, 0, n, s)).scale(c)
                    cur = only_s.get(tgt)
                    only_s[tgt] = add if cur is None else cur + add
            manual = manual + WeightVector(
                p, m, k - 1, {J: q for J, q in only_s.items() if q}
            )
        assert w.ze_apply() == manual


def test_conformal_block_test_examples():
    p, m = 5, (1, 1)
    # e.(f v (x) v - v (x) f v) = 0 and one ze application gives (z1-z2) v(x)v
    w = WeightVector(
        p,
        m,
        1,
        {
            (1, 0): SparsePoly.constant(p, 0, 2, 1),
            (0, 1): SparsePoly.constant(p, 0, 2, p - 1),
        },
    )
    assert w.act_e().is_zero()
    assert not conformal_block_test(w, 1)
    assert conformal_block_test(w, 2)


def test_weight_vector_serialization_round_trip():
    rng = random.Random(105)
    for _ in range(10):
        w = random_weight_vector(rng, 7, (2, 1, 1), 2)
        assert WeightVector.from_dict(w.to_dict()) == w


def test_casimir_index_action_validates_slots():
    with pytest.raises(ValueError):
        casimir_index_action((1, 1), 1, 1, 1, 5)
    with pytest.raises(ValueError):
        casimir_index_action((1, 1), 1, 1, 0, 5)
