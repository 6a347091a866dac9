"""Construction of polynomial KZ solutions over F_p.

The master polynomial is

    Phi(t, z) = prod_{i<j} (z_i - z_j)^M[i,j]
              * prod_{i<j} (t_i - t_j)^M0
              * prod_{s,i} (t_i - z_s)^M[s]

with positive integer exponents congruent mod p to m_i m_j / (2 kappa),
2 / kappa and -m_s / kappa respectively.  For a multi-index J the product
Phi * W_J with the symmetrized weight function W_J is computed without
rational functions: it equals the sum, over all assignments of the k
t-variables to z-slots hitting slot s exactly j_s times, of Phi with the
matching (t_i - z_s) exponent lowered by one.  The candidate solution is
the vector of coefficients of prod_i (t_i - q_i)^(l_i p - 1).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .ffpoly import (
    SparsePoly,
    inverse_mod,
    is_prime,
    linear_t_diff,
    linear_t_minus_z,
    linear_z_diff,
)
from .sl2rep import WeightVector, basis, validate_weights


@dataclass(frozen=True)
class ProblemSpec:
    """Parameters (p, kappa, m, k, q, l) of one construction instance."""

    p: int
    kappa: Fraction
    m: tuple
    k: int
    q: tuple = ()
    l: tuple = ()

    def __post_init__(self):
        if self.p <= 2 or not is_prime(self.p):
            raise ValueError("p must be an odd prime")
        kappa = Fraction(self.kappa)
        object.__setattr__(self, "kappa", kappa)
        if kappa == 0:
            raise ValueError("kappa must be nonzero")
        if kappa.numerator % self.p == 0:
            raise ValueError("p must not divide the numerator of kappa")
        object.__setattr__(self, "m", tuple(self.m))
        validate_weights(self.m, self.k)
        if self.k < 1:
            raise ValueError("k must be >= 1")
        q = tuple(x % self.p for x in (self.q or (0,) * self.k))
        l = tuple(self.l or (1,) * self.k)
        if len(q) != self.k or len(l) != self.k:
            raise ValueError("q and l must have length k")
        if any(li < 1 for li in l):
            raise ValueError("l entries must be positive")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "l", l)

    @property
    def n(self):
        return len(self.m)

    def kappa_inverse(self):
        """K = 1/kappa reduced mod p."""
        a, b = self.kappa.numerator, self.kappa.denominator
        return (b * inverse_mod(a, self.p)) % self.p

    def to_dict(self):
        return {
            "p": self.p,
            "kappa": "%d/%d" % (self.kappa.numerator, self.kappa.denominator),
            "m": list(self.m),
            "k": self.k,
            "q": list(self.q),
            "l": list(self.l),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            p=d["p"],
            kappa=Fraction(d["kappa"]),
            m=tuple(d["m"]),
            k=d["k"],
            q=tuple(d.get("q") or ()),
            l=tuple(d.get("l") or ()),
        )


@dataclass(frozen=True)
class ExponentData:
    """Positive integer exponents (M_s, M_{i,j}, M0) and K = 1/kappa mod p."""

    M: tuple
    M_pair: dict = field(compare=False)
    M0: int = 0
    K: int = 0

    def pair(self, i, j):
        return self.M_pair[(min(i, j), max(i, j))]

    def to_dict(self):
        return {
            "M": list(self.M),
            "M_pair": {"%d,%d" % key: v for key, v in sorted(self.M_pair.items())},
            "M0": self.M0,
            "K": self.K,
        }

    @classmethod
    def from_dict(cls, d):
        pair = {
            tuple(int(x) for x in key.split(",")): v for key, v in d["M_pair"].items()
        }
        return cls(M=tuple(d["M"]), M_pair=pair, M0=d["M0"], K=d["K"])


def _lift_positive(residue, p):
    residue %= p
    return residue if residue else p


def exponent_data(spec, override=None):
    """Resolve the exponent congruences; least positive residues by default.

    A residue class of 0 lifts to p itself.  Explicit overrides (dict with
    any of the keys "M", "M_pair", "M0") are validated against the
    congruences and positivity before being accepted.
    """
    p, n = spec.p, spec.n
    K = spec.kappa_inverse()
    inv2 = inverse_mod(2, p)
    M = tuple(_lift_positive(-ms * K, p) for ms in spec.m)
    pairs = {
        (i, j): _lift_positive(spec.m[i] * spec.m[j] * K * inv2, p)
        for i in range(n)
        for j in range(i + 1, n)
    }
    M0 = _lift_positive(2 * K, p)
    if override:
        if "M" in override:
            cand = tuple(override["M"])
            if len(cand) != n or any(
                c < 1 or (c - m) % p for c, m in zip(cand, M)
            ):
                raise ValueError("M override violates a congruence or positivity")
            M = cand
        if "M_pair" in override:
            cand = {tuple(key): v for key, v in override["M_pair"].items()}
            for key, v in cand.items():
                if key not in pairs or v < 1 or (v - pairs[key]) % p:
                    raise ValueError("M_pair override violates a congruence")
            pairs.update(cand)
        if "M0" in override:
            v = override["M0"]
            if v < 1 or (v - M0) % p:
                raise ValueError("M0 override violates a congruence")
            M0 = v
    return ExponentData(M=M, M_pair=pairs, M0=M0, K=K)


@lru_cache(maxsize=64)
def _z_prefactor_cached(p, n, pairs):
    out = SparsePoly.constant(p, 0, n, 1)
    for (i, j), e in pairs:
        out = out * (linear_z_diff(p, 0, n, i, j) ** e)
    return out


def z_prefactor(spec, exps):
    """prod_{i<j} (z_i - z_j)^M[i,j] in the z-only ambient."""
    return _z_prefactor_cached(
        spec.p, spec.n, tuple(sorted(exps.M_pair.items()))
    )


def master_polynomial(spec, exps):
    """The full master polynomial in the (p, k, n) ambient."""
    p, k, n = spec.p, spec.k, spec.n
    out = z_prefactor(spec, exps).lift_t(k)
    for i in range(k):
        for j in range(i + 1, k):
            out = out * (linear_t_diff(p, k, n, i, j) ** exps.M0)
    for i in range(k):
        for s in range(n):
            out = out * (linear_t_minus_z(p, k, n, i, s) ** exps.M[s])
    return out


def weight_assignments(J, k):
    """Distinct maps sigma: {1..k} -> slots with |sigma^{-1}(s)| = j_s.

    There are k!/(j_1! ... j_n!) of them, matching the orbit count of the
    symmetrized weight function; summing over them avoids the 1/(j_s!)
    normalization, which is ill-defined mod p once some j_s >= p.
    """
    pattern = []
    for s, js in enumerate(J):
        pattern.extend([s] * js)
    if len(pattern) != k:
        raise ValueError("|J| must equal k")
    return sorted(set(permutations(pattern)))


def weighted_master_t_part(spec, exps, J, x=None):
    """Phi * W_J without the z-prefactor, in the (p, k, n) ambient.

    With x given, every z-variable is evaluated at x first and the result
    is a polynomial in t alone (still in the same ambient).  No modular
    inverse is ever used: each assignment term lowers one (t_i - z_s)
    exponent by 1, which requires every M_s >= 1.
    """
    p, k, n = spec.p, spec.k, spec.n
    J = tuple(J)
    if len(J) != n or sum(J) != k or any(
        j < 0 or j > ms for j, ms in zip(J, spec.m)
    ):
        raise ValueError("index %r outside I_k" % (J,))
    if any(ms < 1 for ms in exps.M):
        raise ValueError("every M_s must be >= 1 for a polynomial product")

    def factor(i, s, e):
        f = linear_t_minus_z(p, k, n, i, s)
        if x is not None:
            f = f.eval_z(x)
        return f ** e

    # base[i][s] = prod_{s'} (t_i - z_s')^(M_s' - delta_{s,s'})
    base = []
    for i in range(k):
        full = SparsePoly.constant(p, k, n, 1)
        pieces = [factor(i, s, exps.M[s]) for s in range(n)]
        for piece in pieces:
            full = full * piece
        lowered = []
        for s in range(n):
            prod = factor(i, s, exps.M[s] - 1)
            for s2 in range(n):
                if s2 != s:
                    prod = prod * pieces[s2]
            lowered.append(prod)
        base.append(lowered)

    total = SparsePoly.zero(p, k, n)
    for sigma in weight_assignments(J, k):
        term = SparsePoly.constant(p, k, n, 1)
        for i in range(k):
            term = term * base[i][sigma[i]]
        total = total + term
    for i in range(k):
        for j in range(i + 1, k):
            total = total * (linear_t_diff(p, k, n, i, j) ** exps.M0)
    return total


def master_times_weight(spec, exps, J):
    """The polynomial Phi * W_J, z-prefactor included."""
    return weighted_master_t_part(spec, exps, J) * z_prefactor(spec, exps).lift_t(
        spec.k
    )


def taylor_solution(spec, exps=None):
    """The candidate solution: coefficients of prod_i (t_i - q_i)^(l_i p - 1).

    Per index J the t-dependent part is shifted by q, the target Taylor
    coefficient extracted, and the z-prefactor multiplied in last.
    """
    if exps is None:
        exps = exponent_data(spec)
    p = spec.p
    target = tuple(li * p - 1 for li in spec.l)
    pref = z_prefactor(spec, exps)
    coords = {}
    for J in basis(spec.m, spec.k):
        tp = weighted_master_t_part(spec, exps, J)
        c = tp.shift_t(spec.q).coeff_t(target).drop_t()
        if c:
            coords[J] = c * pref
    return WeightVector(p, spec.m, spec.k, coords)


def homogeneous_components(w):
    """Split a WeightVector by total z-degree; the parts sum back to w."""
    by_deg = {}
    for J, poly in w.coords.items():
        for d, part in poly.z_degree_parts().items():
            by_deg.setdefault(d, {})[J] = part
    return [
        WeightVector(w.p, w.m, w.k, by_deg[d]) for d in sorted(by_deg)
    ]
