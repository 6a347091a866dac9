"""Grid integrals over F_p^k, power sums and the value-class partition."""

import random
from fractions import Fraction
from itertools import permutations, product

import pytest

from kzmodp import (
    PreconditionError,
    ProblemSpec,
    SparsePoly,
    check_integral_theorem,
    exponent_data,
    gamma_decomposition_check,
    gamma_partition,
    integrate_fpk,
    power_sum,
    primitive_root,
    taylor_solution,
)


def test_power_sum_brute_force_all_small_primes():
    for p in (2, 3, 5, 7, 11, 13):
        for i in range(3 * (p - 1) + 1):
            assert power_sum(p, i) == sum(pow(t, i, p) for t in range(p)) % p
    with pytest.raises(ValueError):
        power_sum(5, -1)


def test_power_sum_zero_exponent_is_zero():
    # i = 0 sums p ones, not the -1 of the divisibility rule
    for p in (3, 5, 13):
        assert power_sum(p, 0) == 0
        assert power_sum(p, p - 1) == p - 1


def test_primitive_root_generates():
    for p in (3, 5, 7, 11, 13, 17):
        g = primitive_root(p)
        assert sorted(pow(g, e, p) for e in range(p - 1)) == list(range(1, p))
    assert primitive_root(5) == 2
    with pytest.raises(ValueError):
        primitive_root(8)


def test_integrate_two_paths_agree():
    rng = random.Random(400)
    for p, k in ((3, 1), (5, 1), (5, 2), (7, 2), (3, 3)):
        for _ in range(30):
            poly = SparsePoly.zero(p, k, 0)
            for _ in range(rng.randrange(1, 6)):
                mono = SparsePoly.constant(p, k, 0, rng.randrange(1, p))
                for i in range(k):
                    mono = mono * SparsePoly.var_t(p, k, 0, i) ** rng.randrange(2 * p)
                poly = poly + mono
            assert integrate_fpk(poly, "grid") == integrate_fpk(poly, "powersum")


def test_integrate_rejects_z_variables_and_bad_method():
    f = SparsePoly.var_z(5, 1, 1, 0)
    with pytest.raises(ValueError):
        integrate_fpk(f)
    g = SparsePoly.var_t(5, 1, 0, 0)
    with pytest.raises(ValueError):
        integrate_fpk(g, method="magic")


def test_integral_theorem_k1_exhaustive_small():
    for p in (5, 7):
        for q in (0, 1):
            spec = ProblemSpec(p=p, kappa=Fraction(2), m=(1, 1, 1), k=1, q=(q,))
            exps = exponent_data(spec)
            sol = taylor_solution(spec, exps)
            for x in permutations(range(p), 3):
                rep = check_integral_theorem(spec, exps, x, sol)
                assert rep.passed and rep.status == "pass"


def test_integral_theorem_k2():
    spec = ProblemSpec(p=7, kappa=Fraction(4), m=(2, 2), k=2)
    exps = exponent_data(spec)
    sol = taylor_solution(spec, exps)
    for x in ((0, 1), (2, 5), (6, 3)):
        rep = check_integral_theorem(spec, exps, x, sol)
        assert rep.passed and rep.status == "pass"


def test_integral_theorem_preconditions():
    spec = ProblemSpec(p=5, kappa=Fraction(2), m=(1, 1, 1), k=1, l=(2,))
    with pytest.raises(PreconditionError):
        check_integral_theorem(spec, x=(0, 1, 2))
    spec2 = ProblemSpec(p=5, kappa=Fraction(2), m=(1, 1, 1), k=1)
    with pytest.raises(PreconditionError):
        check_integral_theorem(spec2, x=(0, 1, 1))


def test_integral_theorem_degree_gate_is_inapplicable_not_false():
    # push a t-degree past 2p - 2 with a lifted exponent choice
    spec = ProblemSpec(p=3, kappa=Fraction(2), m=(1, 1, 1), k=1)
    base = exponent_data(spec)
    exps = exponent_data(spec, override={"M": tuple(v + 3 for v in base.M)})
    rep = check_integral_theorem(spec, exps, (0, 1, 2))
    assert rep.passed and rep.status == "inapplicable"


def test_gamma_hypothesis_gates():
    with pytest.raises(PreconditionError):
        gamma_partition(ProblemSpec(p=7, kappa=Fraction(3), m=(2, 2), k=2), (0, 1))
    with pytest.raises(PreconditionError):
        gamma_partition(ProblemSpec(p=7, kappa=Fraction(2), m=(2, 2), k=2), (0, 1))
    with pytest.raises(PreconditionError):
        gamma_partition(ProblemSpec(p=7, kappa=Fraction(4), m=(2, 1), k=2), (0, 1))
    with pytest.raises(PreconditionError):
        # kappa' = 2 divides p - 1 = 10 but 10/2 = 5 odd is fine; use p = 5
        # where (p-1)/2 = 2 is even instead
        gamma_partition(ProblemSpec(p=5, kappa=Fraction(4), m=(2, 2), k=2), (0, 1))


def test_gamma_partition_covers_grid():
    spec = ProblemSpec(p=7, kappa=Fraction(4), m=(2, 2), k=2)
    part = gamma_partition(spec, (0, 1))
    sizes = part.cell_sizes()
    assert sum(sizes) == 7 ** 2
    assert len(sizes) == part.kprime + 1
    seen = set()
    for cell in part.cells:
        assert not (cell & seen)
        seen |= cell
    assert seen == set(product(range(7), repeat=2))


def test_gamma_cells_invariant_under_cyclic_t_rotation():
    # for k=3 the 3-cycles form the alternating group; phi is symmetric
    # under them, so every nonzero cell must be preserved
    spec = ProblemSpec(p=7, kappa=Fraction(4), m=(2, 2), k=3)
    part = gamma_partition(spec, (0, 1))
    for cell in part.cells[1:]:
        rotated = {(t[1], t[2], t[0]) for t in cell}
        assert rotated == cell


def test_gamma_decomposition_matches_full_integral():
    spec = ProblemSpec(p=7, kappa=Fraction(4), m=(2, 2), k=2)
    for x in ((0, 1), (1, 3), (2, 6), (4, 5)):
        rep = gamma_decomposition_check(spec, x)
        assert rep.passed
    with pytest.raises(PreconditionError):
        gamma_decomposition_check(spec, (1, 1))
