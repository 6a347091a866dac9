"""Discrete integration over F_p^k and the value-class partition of the grid.

The integral of a polynomial over a subset of F_p^k is the plain sum of its
values.  Over the full grid the sum factors monomial-wise through the power
sums sum_{t in F_p} t^i, which vanish unless i is a positive multiple of
p - 1 (then they equal -1); the brute-force grid enumeration is kept as the
ground truth and the power-sum path as the fast path.
"""

from dataclasses import dataclass
from itertools import product

from .ffpoly import SparsePoly, inverse_mod, is_prime
from .sl2rep import basis
from .verify import CheckReport, PreconditionError


def power_sum(p, i):
    """sum_{t in F_p} t^i; equals -1 iff i >= 1 and (p-1) | i, else 0.

    The i = 0 sum is p copies of 1 and therefore 0 in F_p, even though
    (p-1) | 0; this case is pinned down explicitly.
    """
    if i < 0:
        raise ValueError("exponent must be nonnegative")
    if i >= 1 and i % (p - 1) == 0:
        return p - 1
    return 0


def primitive_root(p):
    """Smallest positive generator of the cyclic group F_p^x."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if p == 2:
        return 1
    factors = []
    r = p - 1
    d = 2
    while d * d <= r:
        if r % d == 0:
            factors.append(d)
            while r % d == 0:
                r //= d
        d += 1
    if r > 1:
        factors.append(r)
    for a in range(2, p):
        if all(pow(a, (p - 1) // f, p) != 1 for f in factors):
            return a
    raise AssertionError("no generator found for p=%d" % p)


def _require_t_only(F):
    if F.n and any(F.max_exponents()[F.k :]):
        raise ValueError("integrand still involves z-variables")


def integrate_fpk(F, method="powersum"):
    """Sum F over all of F_p^k; F must have every z-variable evaluated.

    method "powersum" reduces monomial-wise via power_sum; method "grid"
    enumerates all p^k points.  The two agree on every valid input.
    """
    _require_t_only(F)
    p, k = F.p, F.k
    if method == "powersum":
        total = 0
        for (te, _ze), c in F.iter_terms():
            prod = c
            for e in te:
                prod = (prod * power_sum(p, e)) % p
                if not prod:
                    break
            total += prod
        return total % p
    if method == "grid":
        zfill = (0,) * F.n
        total = 0
        for point in product(range(p), repeat=k):
            total += F.eval(point, zfill)
        return total % p
    raise ValueError("unknown method %r" % (method,))


def check_integral_theorem(spec, exps=None, x=None, solution=None):
    """The grid integral reproduces the (p-1,...,p-1) Taylor coefficients.

    With F = (master polynomial) x (weight functions) evaluated at z = x,
    the identity reads I^{(p-1,...,p-1)}(x, q) = (-1)^k * sum over F_p^k of
    F, coordinate by coordinate, provided deg_{t_i} F < 2p - 2 for every i.
    A violated degree bound makes the theorem inapplicable, not false.
    """
    from .construct import (
        exponent_data,
        taylor_solution,
        weighted_master_t_part,
        z_prefactor,
    )

    if exps is None:
        exps = exponent_data(spec)
    p, k, n = spec.p, spec.k, spec.n
    if spec.l != (1,) * k:
        raise PreconditionError("the integral identity needs l = (1,...,1)")
    x = tuple(v % p for v in x)
    if len(x) != n or len(set(x)) != n:
        raise PreconditionError("x must be n distinct residues")
    if solution is None:
        solution = taylor_solution(spec, exps)
    pref = z_prefactor(spec, exps).eval((), x)
    sign = p - 1 if k % 2 else 1

    tparts = {J: weighted_master_t_part(spec, exps, J, x=x) for J in basis(spec.m, k)}
    degs = [max(tp.deg_t(i) for tp in tparts.values()) for i in range(k)]
    if any(d >= 2 * p - 2 for d in degs):
        return CheckReport(
            "integral",
            True,
            "inapplicable",
            None,
            {"x": list(x), "deg_t": degs, "bound": 2 * p - 2},
        )

    for J, tp in tparts.items():
        grid = integrate_fpk(tp, method="grid")
        if grid != integrate_fpk(tp, method="powersum"):
            return CheckReport(
                "integral",
                False,
                "fail",
                {"coordinate": list(J), "reason": "grid/powersum disagree"},
                {"x": list(x)},
            )
        left = solution.coord(J).eval((), x)
        right = (sign * pref * grid) % p
        if left != right:
            return CheckReport(
                "integral",
                False,
                "fail",
                {"coordinate": list(J), "taylor": left, "grid": right},
                {"x": list(x)},
            )
    return CheckReport("integral", True, "pass", None, {"x": list(x)})


@dataclass
class GammaPartition:
    """Partition of F_p^k by the value class of phi^((p-1)/kappa')."""

    p: int
    k: int
    kprime: int
    generator: int
    cells: list  # cells[l] = set of t-tuples; cells[0] is the zero locus

    def cell_sizes(self):
        return [len(c) for c in self.cells]


def _gamma_hypotheses(spec):
    kappa = spec.kappa
    if kappa.denominator != 1 or kappa.numerator % 2:
        raise PreconditionError("kappa must be an even positive integer")
    kprime = kappa.numerator // 2
    if kprime % 2:
        raise PreconditionError("kappa/2 must be even")
    if any(ms % 2 for ms in spec.m):
        raise PreconditionError("every m_s must be even")
    if (spec.p - 1) % kprime:
        raise PreconditionError("kappa/2 must divide p - 1")
    if ((spec.p - 1) // kprime) % 2 == 0:
        raise PreconditionError("(p - 1)/(kappa/2) must be odd")
    return kprime, tuple(ms // 2 for ms in spec.m)


def _phi_value(spec, kprime, mprime, t, x):
    p = spec.p
    v = 1
    for i in range(spec.k):
        for j in range(i + 1, spec.k):
            v = (v * pow(t[i] - t[j], kprime - 1, p)) % p
    for i in range(spec.k):
        for s in range(spec.n):
            v = (v * pow((t[i] - x[s]) % p, mprime[s], p)) % p
    return v


def gamma_partition(spec, x):
    """Split F_p^k by the class of phi(t, x) among the kappa'-th power cosets."""
    kprime, mprime = _gamma_hypotheses(spec)
    p, k = spec.p, spec.k
    x = tuple(v % p for v in x)
    a = primitive_root(p)
    e = (p - 1) // kprime
    class_of = {pow(a, ell * e, p): ell for ell in range(1, kprime + 1)}
    cells = [set() for _ in range(kprime + 1)]
    for t in product(range(p), repeat=k):
        v = _phi_value(spec, kprime, mprime, t, x)
        if v == 0:
            cells[0].add(t)
        else:
            cells[class_of[pow(v, e, p)]].add(t)
    return GammaPartition(p=p, k=k, kprime=kprime, generator=a, cells=cells)


def _weight_times_vandermonde(spec, J, t, x):
    """W_J(t, x) * prod_{i<j} (t_i - t_j) at a point with all t_i - x_s != 0."""
    from .construct import weight_assignments

    p = spec.p
    total = 0
    for sigma in weight_assignments(J, spec.k):
        prod = 1
        for i in range(spec.k):
            prod = (prod * inverse_mod(t[i] - x[sigma[i]], p)) % p
        total += prod
    for i in range(spec.k):
        for j in range(i + 1, spec.k):
            total = (total * (t[i] - t[j])) % p
    return total % p


def gamma_decomposition_check(spec, x):
    """The grid integral of Phi W_J splits over the gamma cells.

    Uses the exponent choice M0 = p - (p-1)/kappa', M_s = m_s' (p-1)/kappa'
    so that the master polynomial is phi^((p-1)/kappa') times the t-block
    Vandermonde (up to the z-prefactor); the full-grid sum then equals
    sum_{l=1}^{kappa'/2} 2 a^{l(p-1)/kappa'} int_{gamma_l} W_J Vand(t).
    """
    from .construct import exponent_data, weighted_master_t_part, z_prefactor

    kprime, mprime = _gamma_hypotheses(spec)
    p, k = spec.p, spec.k
    x = tuple(v % p for v in x)
    if len(set(x)) != spec.n:
        raise PreconditionError("x must have distinct coordinates")
    e = (p - 1) // kprime
    override = {
        "M": tuple(ms * e for ms in mprime),
        "M0": p - e,
    }
    exps = exponent_data(spec, override=override)
    part = gamma_partition(spec, x)
    a = part.generator
    pref = z_prefactor(spec, exps).eval((), x)
    for J in basis(spec.m, k):
        tp = weighted_master_t_part(spec, exps, J, x=x)
        lhs = (pref * integrate_fpk(tp, method="grid")) % p
        rhs = 0
        for ell in range(1, kprime // 2 + 1):
            cell_sum = 0
            for t in part.cells[ell]:
                cell_sum += _weight_times_vandermonde(spec, J, t, x)
            rhs += 2 * pow(a, ell * e, p) * (cell_sum % p)
        rhs = (pref * rhs) % p
        if lhs != rhs:
            return CheckReport(
                "gamma_decomposition",
                False,
                "fail",
                {"coordinate": list(J), "lhs": lhs, "rhs": rhs},
                {"x": list(x)},
            )
    return CheckReport(
        "gamma_decomposition",
        True,
        "pass",
        None,
        {"x": list(x), "cell_sizes": part.cell_sizes(), "generator": part.generator},
    )
