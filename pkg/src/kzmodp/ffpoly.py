"""Exact sparse multivariate polynomial arithmetic over F_p.

Polynomials live in F_p[t_1..t_k, z_1..z_n] for a fixed ambient (p, k, n).
Exponent vectors are packed into a single integer key (t-block in the high
bits, so integer order on keys equals lexicographic order on the
concatenated exponent tuples).  Coefficients are canonical residues in
[1, p); zero terms are never stored, so equality is structural.

p must be an odd machine-word prime; the ambient may hold at most 15
variables total (packing limit).
"""

from collections import defaultdict
from math import comb

import numpy as np

# products with more key pairs than this go through the vectorized path
_MUL_FAST_CUTOFF = 30000


def merge_packed(keys, coeffs, p):
    """Combine duplicate packed keys mod p; returns sorted nonzero arrays."""
    if keys.size == 0:
        return keys, coeffs
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    coeffs = coeffs[order]
    starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
    sums = np.add.reduceat(coeffs, starts) % p
    keys = keys[starts]
    nz = sums != 0
    return keys[nz], sums[nz]


class AmbientMismatchError(ValueError):
    """Operands belong to different (p, k, n) ambients."""


class ExponentOverflowError(OverflowError):
    """A product would overflow the packed per-variable exponent width."""


def _packing_bits(nvars):
    if nvars < 1 or nvars > 15:
        raise ValueError("ambient must have between 1 and 15 variables")
    return min(12, 60 // nvars)


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def inverse_mod(a, p):
    a %= p
    if a == 0:
        raise ZeroDivisionError("no inverse of 0 mod %d" % p)
    return pow(a, p - 2, p)


class SparsePoly:
    """Immutable sparse polynomial over F_p in t- and z-variables."""

    __slots__ = ("p", "k", "n", "terms", "_bits", "_mask", "_maxexps")

    def __init__(self, p, k, n, terms=None, _packed=None):
        """terms: iterable of ((t_exps, z_exps), coeff); _packed: internal."""
        if p <= 2 or not is_prime(p):
            raise ValueError("p must be an odd prime, got %r" % (p,))
        if k < 0 or n < 0 or k + n < 1:
            raise ValueError("bad ambient (k=%r, n=%r)" % (k, n))
        self.p = p
        self.k = k
        self.n = n
        self._bits = _packing_bits(k + n)
        self._mask = (1 << self._bits) - 1
        self._maxexps = None
        if _packed is not None:
            self.terms = _packed
        else:
            acc = defaultdict(int)
            for (te, ze), c in terms or ():
                acc[self._pack(te, ze)] += c
            self.terms = {m: c % p for m, c in acc.items() if c % p}

    # -- packing ---------------------------------------------------------

    def _pack(self, texps, zexps):
        if len(texps) != self.k or len(zexps) != self.n:
            raise ValueError("exponent vectors do not match ambient")
        key = 0
        for e in texps:
            if e < 0 or e > self._mask:
                raise ExponentOverflowError("exponent %d out of range" % e)
            key = (key << self._bits) | e
        for e in zexps:
            if e < 0 or e > self._mask:
                raise ExponentOverflowError("exponent %d out of range" % e)
            key = (key << self._bits) | e
        return key

    def _unpack(self, key):
        nv = self.k + self.n
        exps = [0] * nv
        for v in range(nv - 1, -1, -1):
            exps[v] = key & self._mask
            key >>= self._bits
        return tuple(exps[: self.k]), tuple(exps[self.k :])

    def _var_key(self, v):
        # packed key of the monomial consisting of variable v alone
        return 1 << (self._bits * (self.k + self.n - 1 - v))

    def max_exponents(self):
        """Componentwise maximum exponent over all terms (t-block first)."""
        if self._maxexps is None:
            nv = self.k + self.n
            mx = [0] * nv
            b, mask = self._bits, self._mask
            for key in self.terms:
                for v in range(nv - 1, -1, -1):
                    e = key & mask
                    if e > mx[v]:
                        mx[v] = e
                    key >>= b
            self._maxexps = tuple(mx)
        return self._maxexps

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, p, k, n):
        return cls(p, k, n, _packed={})

    @classmethod
    def constant(cls, p, k, n, c):
        c %= p
        return cls(p, k, n, _packed=({0: c} if c else {}))

    @classmethod
    def var_t(cls, p, k, n, i):
        if not 0 <= i < k:
            raise ValueError("t-index %d out of range" % i)
        out = cls.zero(p, k, n)
        return cls(p, k, n, _packed={out._var_key(i): 1})

    @classmethod
    def var_z(cls, p, k, n, s):
        if not 0 <= s < n:
            raise ValueError("z-index %d out of range" % s)
        out = cls.zero(p, k, n)
        return cls(p, k, n, _packed={out._var_key(k + s): 1})

    # -- basics ----------------------------------------------------------

    def _check_ambient(self, other):
        if (self.p, self.k, self.n) != (other.p, other.k, other.n):
            raise AmbientMismatchError(
                "ambient mismatch: (%d,%d,%d) vs (%d,%d,%d)"
                % (self.p, self.k, self.n, other.p, other.k, other.n)
            )

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (
            (self.p, self.k, self.n) == (other.p, other.k, other.n)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, self.k, self.n, frozenset(self.terms.items())))

    def __add__(self, other):
        self._check_ambient(other)
        p = self.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            elif m in out:
                del out[m]
        return SparsePoly(p, self.k, self.n, _packed=out)

    def __neg__(self):
        p = self.p
        return SparsePoly(
            p, self.k, self.n, _packed={m: p - c for m, c in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c %= self.p
        if c == 0:
            return SparsePoly.zero(self.p, self.k, self.n)
        if c == 1:
            return self
        p = self.p
        return SparsePoly(
            p, self.k, self.n, _packed={m: (cc * c) % p for m, cc in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check_ambient(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        if not a:
            return SparsePoly.zero(self.p, self.k, self.n)
        mxa = self.max_exponents()
        mxb = other.max_exponents()
        if any(ea + eb > self._mask for ea, eb in zip(mxa, mxb)):
            raise ExponentOverflowError(
                "product degree exceeds packed width %d" % self._mask
            )
        p = self.p
        if len(a) * len(b) > _MUL_FAST_CUTOFF:
            ka = np.fromiter(a.keys(), dtype=np.int64, count=len(a))
            ca = np.fromiter(a.values(), dtype=np.int64, count=len(a))
            kb = np.fromiter(b.keys(), dtype=np.int64, count=len(b))
            cb = np.fromiter(b.values(), dtype=np.int64, count=len(b))
            keys, coeffs = merge_packed(
                (ka[:, None] + kb[None, :]).ravel(),
                (ca[:, None] * cb[None, :]).ravel(),
                p,
            )
            return SparsePoly(
                p,
                self.k,
                self.n,
                _packed=dict(zip(keys.tolist(), coeffs.tolist())),
            )
        out = defaultdict(int)
        for ma, ca in a.items():
            for mb, cb in b.items():
                out[ma + mb] += ca * cb
        return SparsePoly(
            p, self.k, self.n, _packed={m: c % p for m, c in out.items() if c % p}
        )

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result = SparsePoly.constant(self.p, self.k, self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base_needed = e > 1
            e >>= 1
            if base_needed and e:
                base = base * base
        return result

    # -- calculus & structure -------------------------------------------

    def partial_t(self, i):
        if not 0 <= i < self.k:
            raise ValueError("unknown t-variable %d" % i)
        return self._partial(i)

    def partial_z(self, s):
        if not 0 <= s < self.n:
            raise ValueError("unknown z-variable %d" % s)
        return self._partial(self.k + s)

    def _partial(self, v):
        p = self.p
        unit = self._var_key(v)
        sh = self._bits * (self.k + self.n - 1 - v)
        mask = self._mask
        out = {}
        for m, c in self.terms.items():
            e = (m >> sh) & mask
            if e:
                cc = (c * e) % p
                if cc:
                    out[m - unit] = cc
        return SparsePoly(p, self.k, self.n, _packed=out)

    def shift_t(self, q):
        """Substitute t_i -> t_i + q_i for q in F_p^k; exact."""
        if len(q) != self.k:
            raise ValueError("shift vector length %d != k=%d" % (len(q), self.k))
        p = self.p
        q = [x % p for x in q]
        live = [i for i in range(self.k) if q[i]]
        if not live:
            return self
        out = defaultdict(int)
        for m, c in self.terms.items():
            te, ze = self._unpack(m)
            expansions = [(m, c)]
            for i in live:
                a = te[i]
                if a == 0:
                    continue
                unit = self._var_key(i)
                qi = q[i]
                nxt = []
                # (t_i + q_i)^a = sum_b C(a,b) q_i^(a-b) t_i^b
                pw = 1
                coeffs = []
                for b in range(a, -1, -1):
                    coeffs.append((b, (comb(a, b) * pw) % p))
                    pw = (pw * qi) % p
                for key, cc in expansions:
                    base = key - a * unit
                    for b, w in coeffs:
                        if w:
                            nxt.append((base + b * unit, (cc * w) % p))
                expansions = nxt
            for key, cc in expansions:
                out[key] += cc
        return SparsePoly(
            p, self.k, self.n, _packed={m: c % p for m, c in out.items() if c % p}
        )

    def coeff_t(self, exps):
        """Coefficient of prod t_i^exps[i]; result has zero t-block."""
        if len(exps) != self.k:
            raise ValueError("exponent vector length %d != k=%d" % (len(exps), self.k))
        zbits = self._bits * self.n
        zmask = (1 << zbits) - 1
        target = 0
        for e in exps:
            if e < 0:
                raise ValueError("negative exponent")
            target = (target << self._bits) | e
        out = {}
        for m, c in self.terms.items():
            if m >> zbits == target:
                out[m & zmask] = c
        return SparsePoly(self.p, self.k, self.n, _packed=out)

    def drop_t(self):
        """Reinterpret a t-free polynomial in the z-only ambient (p, 0, n)."""
        if self.n == 0:
            raise ValueError("no z-block to keep")
        out = SparsePoly.zero(self.p, 0, self.n)
        packed = {}
        for m, c in self.terms.items():
            te, ze = self._unpack(m)
            if any(te):
                raise ValueError("polynomial still involves t-variables")
            packed[out._pack((), ze)] = c
        return SparsePoly(self.p, 0, self.n, _packed=packed)

    def lift_t(self, k):
        """Embed a z-only polynomial into the ambient (p, k, n)."""
        if self.k != 0:
            raise ValueError("lift_t expects a z-only polynomial")
        out = SparsePoly.zero(self.p, k, self.n)
        packed = {}
        for m, c in self.terms.items():
            _, ze = self._unpack(m)
            packed[out._pack((0,) * k, ze)] = c
        return SparsePoly(self.p, k, self.n, _packed=packed)

    def eval(self, tvals, zvals):
        """Exact value in F_p at a full assignment of all variables."""
        if len(tvals) != self.k or len(zvals) != self.n:
            raise ValueError("assignment does not cover all ambient variables")
        p = self.p
        vals = [v % p for v in tvals] + [v % p for v in zvals]
        total = 0
        b, mask, nv = self._bits, self._mask, self.k + self.n
        for m, c in self.terms.items():
            prod = c
            for v in range(nv - 1, -1, -1):
                e = m & mask
                if e:
                    prod = (prod * pow(vals[v], e, p)) % p
                m >>= b
            total += prod
        return total % p

    def eval_z(self, zvals):
        """Substitute numeric values for every z-variable; result is t-only."""
        if len(zvals) != self.n:
            raise ValueError("need a value for every z-variable")
        p = self.p
        zvals = [v % p for v in zvals]
        zbits = self._bits * self.n
        zmask = (1 << zbits) - 1
        b, mask = self._bits, self._mask
        out = defaultdict(int)
        for m, c in self.terms.items():
            zkey = m & zmask
            for s in range(self.n - 1, -1, -1):
                e = zkey & mask
                if e:
                    c = (c * pow(zvals[s], e, p)) % p
                zkey >>= b
            if c:
                out[m & ~zmask] += c
        return SparsePoly(
            p, self.k, self.n, _packed={m: c % p for m, c in out.items() if c % p}
        )

    def subs_z(self, i, j):
        """Substitute z_i -> z_j (i != j); exact relabelling."""
        if i == j or not (0 <= i < self.n and 0 <= j < self.n):
            raise ValueError("bad substitution z_%d -> z_%d" % (i, j))
        p = self.p
        sh_i = self._bits * (self.n - 1 - i)
        unit_j = 1 << (self._bits * (self.n - 1 - j))
        mask = self._mask
        mx = self.max_exponents()
        if mx[self.k + i] + mx[self.k + j] > mask:
            raise ExponentOverflowError("substitution overflows packed width")
        out = defaultdict(int)
        for m, c in self.terms.items():
            e = (m >> sh_i) & mask
            out[m - (e << sh_i) + e * unit_j] += c
        return SparsePoly(
            p, self.k, self.n, _packed={m: c % p for m, c in out.items() if c % p}
        )

    def divide_z_diff(self, i, j):
        """Exact quotient by (z_i - z_j); raises if not divisible.

        Uses a(z) - a|_{z_i=z_j} = (z_i - z_j) * q with
        q = sum_a f_a * sum_{u+v=a-1} z_i^u z_j^v.
        """
        rem = self.subs_z(i, j)
        if not rem.is_zero():
            raise ValueError("polynomial is not divisible by (z_%d - z_%d)" % (i, j))
        p = self.p
        sh_i = self._bits * (self.n - 1 - i)
        unit_i = 1 << sh_i
        unit_j = 1 << (self._bits * (self.n - 1 - j))
        mask = self._mask
        out = defaultdict(int)
        for m, c in self.terms.items():
            a = (m >> sh_i) & mask
            if a == 0:
                continue
            base = m - a * unit_i + (a - 1) * unit_j
            for u in range(a):
                out[base + u * unit_i - u * unit_j] += c
        return SparsePoly(
            p, self.k, self.n, _packed={m: c % p for m, c in out.items() if c % p}
        )

    # -- degrees & views -------------------------------------------------

    def deg_t(self, i):
        return self.max_exponents()[i] if self.terms else -1

    def deg_z(self, s):
        return self.max_exponents()[self.k + s] if self.terms else -1

    def iter_terms(self):
        """Yield ((t_exps, z_exps), coeff) in canonical (lex) order."""
        for m in sorted(self.terms):
            te, ze = self._unpack(m)
            yield (te, ze), self.terms[m]

    def z_degree_parts(self):
        """Split into parts homogeneous in total z-degree; returns {deg: poly}."""
        parts = defaultdict(dict)
        b, mask = self._bits, self._mask
        if len(self.terms) > 4096:
            keys = np.fromiter(self.terms.keys(), dtype=np.int64, count=len(self.terms))
            degs = np.zeros(len(keys), dtype=np.int64)
            for s in range(self.n):
                degs += (keys >> np.int64(b * s)) & np.int64(mask)
            coeffs = np.fromiter(
                self.terms.values(), dtype=np.int64, count=len(self.terms)
            )
            for d in np.unique(degs):
                sel = degs == d
                parts[int(d)] = dict(
                    zip(keys[sel].tolist(), coeffs[sel].tolist())
                )
            return {
                d: SparsePoly(self.p, self.k, self.n, _packed=t)
                for d, t in parts.items()
            }
        zbits = b * self.n
        for m, c in self.terms.items():
            zkey = m & ((1 << zbits) - 1)
            d = 0
            while zkey:
                d += zkey & mask
                zkey >>= b
            parts[d][m] = c
        return {
            d: SparsePoly(self.p, self.k, self.n, _packed=t) for d, t in parts.items()
        }

    # -- serialization ---------------------------------------------------

    def to_dict(self):
        return {
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "terms": [
                {"c": c, "t": list(te), "z": list(ze)}
                for (te, ze), c in self.iter_terms()
            ],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            d["p"],
            d["k"],
            d["n"],
            terms=[((tuple(t["t"]), tuple(t["z"])), t["c"]) for t in d["terms"]],
        )

    def __repr__(self):
        if not self.terms:
            return "SparsePoly(p=%d, 0)" % self.p
        bits = []
        for (te, ze), c in self.iter_terms():
            s = str(c)
            for i, e in enumerate(te):
                if e:
                    s += "*t%d^%d" % (i + 1, e)
            for i, e in enumerate(ze):
                if e:
                    s += "*z%d^%d" % (i + 1, e)
            bits.append(s)
        return "SparsePoly(p=%d, %s)" % (self.p, " + ".join(bits))


def linear_t_minus_z(p, k, n, i, s):
    """The binomial t_i - z_s."""
    return SparsePoly.var_t(p, k, n, i) - SparsePoly.var_z(p, k, n, s)


def linear_t_diff(p, k, n, i, j):
    """The binomial t_i - t_j."""
    return SparsePoly.var_t(p, k, n, i) - SparsePoly.var_t(p, k, n, j)


def linear_z_diff(p, k, n, i, j):
    """The binomial z_i - z_j."""
    return SparsePoly.var_z(p, k, n, i) - SparsePoly.var_z(p, k, n, j)
