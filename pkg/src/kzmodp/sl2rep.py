"""Tensor products of irreducible sl2-modules over F_p.

A weight vector is a formal combination sum_J I_J(z) f_J v_m where J runs
over the multi-index set {J : |J| = k, j_s <= m_s} and each coordinate
I_J is a polynomial in z only.  The e/f/h actions, the two-slot Casimir
operator, the Gaudin Hamiltonians and the z-weighted raising operator all
act through the standard formulas on the f_J v_m basis:

    e.f^j v_m = j (m - j + 1) f^(j-1) v_m
    f.f^j v_m = f^(j+1) v_m   (zero past the module bottom)
    h.f^j v_m = (m - 2j) f^j v_m
"""

from itertools import product

import numpy as np

from .ffpoly import SparsePoly, inverse_mod


def validate_weights(m, k):
    if not m or any(ms < 1 for ms in m):
        raise ValueError("highest weights must be positive integers, got %r" % (m,))
    if k < 0 or k > sum(m):
        raise ValueError("k=%d out of range for |m|=%d" % (k, sum(m)))


def basis(m, k):
    """All multi-indices J with |J| = k, j_s <= m_s, in lexicographic order."""
    validate_weights(m, k)
    n = len(m)
    out = []

    def rec(prefix, remaining, s):
        if s == n:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        lo = max(0, remaining - sum(m[s + 1 :]))
        hi = min(m[s], remaining)
        for j in range(lo, hi + 1):
            rec(prefix + [j], remaining - j, s + 1)

    rec([], k, 0)
    return out


def _bump(J, s, d):
    return J[:s] + (J[s] + d,) + J[s + 1 :]


class WeightVector:
    """Map from multi-index J to a polynomial in z; a candidate solution."""

    __slots__ = ("p", "m", "k", "coords")

    def __init__(self, p, m, k, coords=None):
        validate_weights(m, k)
        self.p = p
        self.m = tuple(m)
        self.k = k
        self.coords = {}
        n = len(m)
        for J, poly in (coords or {}).items():
            J = tuple(J)
            if len(J) != n or sum(J) != k or any(j < 0 or j > ms for j, ms in zip(J, m)):
                raise ValueError("index %r outside I_k for m=%r, k=%d" % (J, m, k))
            if (poly.p, poly.k, poly.n) != (p, 0, n):
                raise ValueError("coordinate ambient must be (p, 0, n)")
            if poly:
                self.coords[J] = poly

    @property
    def n(self):
        return len(self.m)

    @classmethod
    def zero(cls, p, m, k):
        return cls(p, m, k)

    def coord(self, J):
        J = tuple(J)
        return self.coords.get(J, SparsePoly.zero(self.p, 0, self.n))

    def is_zero(self):
        return not self.coords

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return (self.p, self.m, self.k) == (other.p, other.m, other.k) and (
            self.coords == other.coords
        )

    def __add__(self, other):
        if (self.p, self.m, self.k) != (other.p, other.m, other.k):
            raise ValueError("weight vector ambient mismatch")
        out = dict(self.coords)
        for J, poly in other.coords.items():
            s = out.get(J)
            v = poly if s is None else s + poly
            if v:
                out[J] = v
            elif J in out:
                del out[J]
        return WeightVector(self.p, self.m, self.k, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return WeightVector(
            self.p, self.m, self.k, {J: poly.scale(c) for J, poly in self.coords.items()}
        )

    def mul_poly(self, g):
        """Multiply every coordinate by a z-only polynomial g."""
        return WeightVector(
            self.p, self.m, self.k, {J: poly * g for J, poly in self.coords.items()}
        )

    # -- sl2 actions -----------------------------------------------------

    def act_e(self):
        if self.k == 0:
            raise ValueError("act_e needs k >= 1")
        out = {}
        p, m = self.p, self.m
        for J, poly in self.coords.items():
            for s, js in enumerate(J):
                if js:
                    c = (js * (m[s] - js + 1)) % p
                    if c:
                        tgt = _bump(J, s, -1)
                        add = poly.scale(c)
                        cur = out.get(tgt)
                        v = add if cur is None else cur + add
                        if v:
                            out[tgt] = v
                        elif tgt in out:
                            del out[tgt]
        return WeightVector(p, m, self.k - 1, out)

    def act_f(self):
        # terms raised past the bottom of a factor L_{m_s} are dropped
        if self.k == sum(self.m):
            return WeightVector(self.p, self.m, self.k, {})
        out = {}
        for J, poly in self.coords.items():
            for s in range(self.n):
                if J[s] < self.m[s]:
                    tgt = _bump(J, s, 1)
                    cur = out.get(tgt)
                    v = poly if cur is None else cur + poly
                    if v:
                        out[tgt] = v
                    elif tgt in out:
                        del out[tgt]
        return WeightVector(self.p, self.m, self.k + 1, out)

    def act_h(self):
        return self.scale(sum(self.m) - 2 * self.k)

    def ze_apply(self):
        """Apply sum_s z_s * (e in slot s); lowers |J| by 1, raises z-degree by 1."""
        if self.k == 0:
            raise ValueError("ze_apply needs k >= 1")
        p, m, n = self.p, self.m, self.n
        out = {}
        for J, poly in self.coords.items():
            for s, js in enumerate(J):
                if js:
                    c = (js * (m[s] - js + 1)) % p
                    if c:
                        zs = SparsePoly.var_z(p, 0, n, s)
                        add = (poly * zs).scale(c)
                        tgt = _bump(J, s, -1)
                        cur = out.get(tgt)
                        v = add if cur is None else cur + add
                        if v:
                            out[tgt] = v
                        elif tgt in out:
                            del out[tgt]
        return WeightVector(p, m, self.k - 1, out)

    # -- serialization ---------------------------------------------------

    def to_dict(self):
        order = basis(self.m, self.k)
        return {
            "p": self.p,
            "m": list(self.m),
            "k": self.k,
            "coords": [
                {"J": list(J), "poly": self.coords[J].to_dict()}
                for J in order
                if J in self.coords
            ],
        }

    @classmethod
    def from_dict(cls, d):
        coords = {
            tuple(entry["J"]): SparsePoly.from_dict(entry["poly"])
            for entry in d["coords"]
        }
        return cls(d["p"], tuple(d["m"]), d["k"], coords)

    def __repr__(self):
        return "WeightVector(p=%d, m=%r, k=%d, %d nonzero coords)" % (
            self.p,
            self.m,
            self.k,
            len(self.coords),
        )


def casimir_index_action(m, k, i, j, p):
    """Action of the two-slot Casimir e(x)f + f(x)e + h(x)h/2 in slots i, j.

    Returns {J: [(J', coeff), ...]} on the basis of the weight-k subspace.
    """
    validate_weights(m, k)
    if not 0 <= i < j < len(m):
        raise ValueError("need 0 <= i < j < n")
    inv2 = inverse_mod(2, p)
    action = {}
    for J in basis(m, k):
        img = []
        # e in slot i, f in slot j
        if J[i] >= 1 and J[j] < m[j]:
            c = (J[i] * (m[i] - J[i] + 1)) % p
            if c:
                img.append((_bump(_bump(J, i, -1), j, 1), c))
        # f in slot i, e in slot j
        if J[j] >= 1 and J[i] < m[i]:
            c = (J[j] * (m[j] - J[j] + 1)) % p
            if c:
                img.append((_bump(_bump(J, i, 1), j, -1), c))
        # h(x)h/2
        c = ((m[i] - 2 * J[i]) * (m[j] - 2 * J[j]) * inv2) % p
        if c:
            img.append((J, c))
        action[J] = img
    return action


def casimir_apply(w, i, j):
    """Apply the Casimir operator in tensor slots i < j to a WeightVector."""
    action = casimir_index_action(w.m, w.k, i, j, w.p)
    out = {}
    for J, poly in w.coords.items():
        for tgt, c in action[J]:
            add = poly.scale(c)
            cur = out.get(tgt)
            v = add if cur is None else cur + add
            if v:
                out[tgt] = v
            elif tgt in out:
                del out[tgt]
    return WeightVector(w.p, w.m, w.k, out)


def casimir_matrix(p, m, k, i, j):
    """Matrix of the (i,j) Casimir on basis(m, k); entries in [0, p)."""
    bas = basis(m, k)
    idx = {J: a for a, J in enumerate(bas)}
    action = casimir_index_action(m, k, i, j, p)
    mat = np.zeros((len(bas), len(bas)), dtype=np.int64)
    for J, img in action.items():
        for tgt, c in img:
            mat[idx[tgt], idx[J]] = (mat[idx[tgt], idx[J]] + c) % p
    return mat


def gaudin_matrix(p, m, k, i, zpoint):
    """H_i(z) = sum_{j != i} Casimir(i,j) / (z_i - z_j) as an exact matrix."""
    n = len(m)
    zpoint = [z % p for z in zpoint]
    if len(zpoint) != n:
        raise ValueError("need one z-coordinate per tensor slot")
    if len(set(zpoint)) != n:
        raise ValueError("z-coordinates must be pairwise distinct in F_p")
    dim = len(basis(m, k))
    mat = np.zeros((dim, dim), dtype=np.int64)
    for j in range(n):
        if j == i:
            continue
        a, b = min(i, j), max(i, j)
        w = inverse_mod(zpoint[i] - zpoint[j], p)
        mat = (mat + w * casimir_matrix(p, m, k, a, b)) % p
    return mat


def diagonal_action_matrix(p, m, k, which):
    """Matrix of the diagonal action of e, f or h from basis(m,k).

    e maps the weight-k space to weight-(k-1), f to weight-(k+1), h to
    itself; the returned shape reflects that.
    """
    src = basis(m, k)
    if which == "h":
        lam = (sum(m) - 2 * k) % p
        return (lam * np.eye(len(src), dtype=np.int64)) % p
    if which == "e":
        if k == 0:
            return np.zeros((0, len(src)), dtype=np.int64)
        tgt = basis(m, k - 1)
    elif which == "f":
        if k == sum(m):
            return np.zeros((0, len(src)), dtype=np.int64)
        tgt = basis(m, k + 1)
    else:
        raise ValueError("which must be 'e', 'f' or 'h'")
    idx = {J: a for a, J in enumerate(tgt)}
    mat = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for col, J in enumerate(src):
        for s in range(len(m)):
            if which == "e" and J[s] >= 1:
                c = (J[s] * (m[s] - J[s] + 1)) % p
                mat[idx[_bump(J, s, -1)], col] = (
                    mat[idx[_bump(J, s, -1)], col] + c
                ) % p
            elif which == "f" and J[s] < m[s]:
                mat[idx[_bump(J, s, 1)], col] = (mat[idx[_bump(J, s, 1)], col] + 1) % p
    return mat


def conformal_block_test(w, ell):
    """True iff e.w = 0 and the ell-th power of the ze operator kills w."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if w.is_zero():
        return True
    if w.k >= 1 and not w.act_e().is_zero():
        return False
    cur = w
    for _ in range(ell):
        if cur.k == 0:
            # e annihilates the top weight space, so one more step is zero
            return True
        cur = cur.ze_apply()
    return cur.is_zero()


def weight_space_dimension_oracle(m, k):
    """Coefficient of x^k in prod_s (1 + x + ... + x^{m_s}); brute force."""
    coeffs = [1]
    for ms in m:
        new = [0] * (len(coeffs) + ms)
        for a, c in enumerate(coeffs):
            for b in range(ms + 1):
                new[a + b] += c
        coeffs = new
    return coeffs[k] if k < len(coeffs) else 0


def random_weight_vector(rng, p, m, k, max_terms=3, max_deg=2):
    """Small random WeightVector for property tests; deterministic given rng."""
    n = len(m)
    coords = {}
    for J in basis(m, k):
        if rng.random() < 0.7:
            terms = []
            for _ in range(rng.randint(1, max_terms)):
                ze = tuple(rng.randint(0, max_deg) for _ in range(n))
                terms.append((((), ze), rng.randint(1, p - 1)))
            poly = SparsePoly(p, 0, n, terms)
            if poly:
                coords[J] = poly
    return WeightVector(p, m, k, coords)
