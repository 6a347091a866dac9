"""Independent exact checkers for identities satisfied by candidate solutions.

All checks are polynomial identities over F_p.  Rational-function identities
are handled without a rational-function type: a sum of the form
sum_j A_j / (z_i - z_j) that must equal a polynomial forces every A_j to
vanish on the hyperplane z_i = z_j (the linear factors are coprime primes of
F_p[z], so the poles cannot cancel), and then each A_j / (z_i - z_j) is an
exact polynomial quotient.  This keeps every check linear in the number of
terms instead of multiplying the large cleared products together.
"""

from dataclasses import dataclass, field

import numpy as np

from .ffpoly import SparsePoly
from .sl2rep import (
    WeightVector,
    _bump,
    basis,
    casimir_index_action,
    diagonal_action_matrix,
    gaudin_matrix,
)


class PreconditionError(ValueError):
    """A theorem's hypothesis is not met; no verdict is possible."""


@dataclass
class CheckReport:
    """Outcome of one identity check.

    status is one of "pass", "fail", "inapplicable" (hypothesis unmet by
    design, e.g. a degree bound), or "anomaly" (documented small-p exclusion
    that is exercised anyway).  witness is present iff the check failed.
    """

    name: str
    passed: bool
    status: str = "pass"
    witness: dict = None
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.passed and self.witness is not None:
            raise ValueError("witness only accompanies a failed check")
        if not self.passed and self.witness is None:
            raise ValueError("failed check needs a witness")

    def to_dict(self):
        out = {"name": self.name, "passed": self.passed, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.data:
            out["data"] = self.data
        return out


def _ok(name, **data):
    return CheckReport(name, True, "pass", None, data)


def _bad(name, witness, **data):
    return CheckReport(name, False, "fail", witness, data)


def _poly_witness(poly):
    return {"residual": poly.to_dict()}


def _subs_residual_terms(kb_s, es_s, group_sums, starts, bits, n, j):
    """Explicit terms of a nonzero substitution residual, for a witness."""
    mask = (1 << bits) - 1
    out = []
    for g in np.flatnonzero(group_sums)[:5]:
        key = int(kb_s[starts[g]])
        exps = [0] * n
        for v in range(n - 1, -1, -1):
            exps[v] = key & mask
            key >>= bits
        exps[j] += int(es_s[starts[g]])
        out.append({"c": int(group_sums[g]), "z": exps})
    return out


def check_kz(w, spec, exps=None):
    """Verify the KZ system d w / d z_i = K sum_{j != i} C_ij w / (z_i - z_j).

    C_ij is the two-slot Casimir operator and K = 1/kappa mod p.  The right
    side is assembled from exact quotients of the Casimir images by
    (z_i - z_j): such an image must vanish on z_i = z_j (the linear factors
    are coprime primes, so the poles cannot cancel), and a nonzero
    restriction is already a failure.  All term manipulation is vectorized
    on the packed monomial keys.
    """
    from .construct import exponent_data
    from .ffpoly import ExponentOverflowError, merge_packed

    if exps is None:
        exps = exponent_data(spec)
    K = exps.K
    p, n, k = w.p, w.n, w.k
    if not w.coords:
        return _ok("kz", equations=n)
    sample = next(iter(w.coords.values()))
    bits, mask = sample._bits, sample._mask
    sh = [bits * (n - 1 - s) for s in range(n)]
    arrs = {
        J: (
            np.fromiter(poly.terms.keys(), dtype=np.int64, count=len(poly.terms)),
            np.fromiter(poly.terms.values(), dtype=np.int64, count=len(poly.terms)),
        )
        for J, poly in w.coords.items()
    }

    # per unordered pair: exact quotients of the Casimir image by (z_a - z_b)
    quotients = {}
    for a in range(n):
        for b in range(a + 1, n):
            action = casimir_index_action(w.m, k, a, b, p)
            image = {}
            for J, (keys, coeffs) in arrs.items():
                for tgt, c in action[J]:
                    image.setdefault(tgt, []).append((keys, (coeffs * c) % p))
            quot = {}
            for tgt, pieces in image.items():
                keys = np.concatenate([x[0] for x in pieces])
                coeffs = np.concatenate([x[1] for x in pieces])
                keys, coeffs = merge_packed(keys, coeffs, p)
                if keys.size == 0:
                    continue
                ea = (keys >> sh[a]) & mask
                eb = (keys >> sh[b]) & mask
                kbase = keys - (ea << sh[a]) - (eb << sh[b])
                esum = ea + eb
                order = np.lexsort((esum, kbase))
                kb_s, es_s, c_s = kbase[order], esum[order], coeffs[order]
                starts = np.flatnonzero(
                    np.r_[True, (kb_s[1:] != kb_s[:-1]) | (es_s[1:] != es_s[:-1])]
                )
                gsum = np.add.reduceat(c_s, starts) % p
                if gsum.any():
                    return _bad(
                        "kz",
                        {
                            "equation": a,
                            "pair": [a, b],
                            "coordinate": list(tgt),
                            "residual": {
                                "restriction": "z_%d = z_%d" % (a, b),
                                "terms": _subs_residual_terms(
                                    kb_s, es_s, gsum, starts, bits, n, b
                                ),
                            },
                        },
                    )
                sel = ea > 0
                kq, cq, aq, ebq = keys[sel], coeffs[sel], ea[sel], eb[sel]
                if kq.size and int((ebq + aq - 1).max()) > mask:
                    raise ExponentOverflowError(
                        "quotient overflows packed exponent width"
                    )
                base = kq - (aq << sh[a]) + ((aq - 1) << sh[b])
                total = int(aq.sum())
                ends = np.cumsum(aq)
                u = np.arange(total, dtype=np.int64) - np.repeat(ends - aq, aq)
                qkeys = np.repeat(base, aq) + (u << sh[a]) - (u << sh[b])
                quot[tgt] = merge_packed(qkeys, np.repeat(cq, aq), p)
            quotients[(a, b)] = quot

    for i in range(n):
        parts = {}
        for J, (keys, coeffs) in arrs.items():
            e = (keys >> sh[i]) & mask
            sel = e > 0
            if sel.any():
                parts.setdefault(J, []).append(
                    (
                        keys[sel] - (np.int64(1) << np.int64(sh[i])),
                        (coeffs[sel] * e[sel]) % p,
                    )
                )
        for j in range(n):
            if j == i:
                continue
            a, b = min(i, j), max(i, j)
            # quotient is by (z_a - z_b) = sign * (z_i - z_j)
            mult = (-K if i < j else K) % p
            for tgt, (qk, qc) in quotients[(a, b)].items():
                parts.setdefault(tgt, []).append((qk, (qc * mult) % p))
        for J, pieces in parts.items():
            keys = np.concatenate([x[0] for x in pieces])
            coeffs = np.concatenate([x[1] for x in pieces])
            keys, coeffs = merge_packed(keys, coeffs, p)
            if keys.size:
                residual = SparsePoly(
                    p, 0, n, _packed=dict(zip(keys.tolist(), coeffs.tolist()))
                )
                return _bad(
                    "kz",
                    {
                        "equation": i,
                        "coordinate": list(J),
                        "residual": residual.to_dict(),
                    },
                )
    return _ok("kz", equations=n)


def check_singular(w, spec=None):
    """Verify the singular-vector relations directly on coordinates.

    For every J with |J| = k-1 the combination
    sum_s (j_s + 1)(m_s - j_s) I_{J+1_s} must vanish.  This loop is an
    independent code path from the e-action used elsewhere.
    """
    p, m, k = w.p, w.m, w.k
    if k == 0:
        return _ok("singular", relations=0)
    count = 0
    for J in basis(m, k - 1):
        acc = SparsePoly.zero(p, 0, w.n)
        for s in range(w.n):
            if J[s] + 1 <= m[s]:
                c = ((J[s] + 1) * (m[s] - J[s])) % p
                if c:
                    acc = acc + w.coord(_bump(J, s, 1)).scale(c)
        count += 1
        if acc:
            return _bad(
                "singular", {"relation": list(J), "residual": acc.to_dict()}
            )
    return _ok("singular", relations=count)


def check_resonance_linear(w, exps):
    """Verify z_1 M_1 I_1 + ... + z_n M_n I_n = 0 for a k=1 solution.

    Requires M_1 + ... + M_n = -1 mod p; violating the hypothesis is an
    error, not a failed check.
    """
    if w.k != 1:
        raise PreconditionError("linear resonance is a k=1 statement")
    p, n = w.p, w.n
    if (sum(exps.M) + 1) % p:
        raise PreconditionError(
            "resonance hypothesis sum(M) = -1 mod %d not met" % p
        )
    acc = SparsePoly.zero(p, 0, n)
    for s in range(n):
        unit = tuple(1 if r == s else 0 for r in range(n))
        term = w.coord(unit) * SparsePoly.var_z(p, 0, n, s)
        acc = acc + term.scale(exps.M[s])
    if acc:
        return _bad("resonance_linear", _poly_witness(acc))
    return _ok("resonance_linear")


def check_ze_resonance(w, exps, ell):
    """Verify that the ell-th power of the ze operator annihilates w.

    The exponent ell must satisfy (ell-1)K - sum(M_s) - (k-1)M0 = 1 mod p.
    """
    if ell < 1:
        raise PreconditionError("ell must be a positive integer")
    p = w.p
    if ((ell - 1) * exps.K - sum(exps.M) - (w.k - 1) * exps.M0 - 1) % p:
        raise PreconditionError("resonance exponent condition not met for ell=%d" % ell)
    cur = w
    for _ in range(ell):
        if cur.is_zero():
            break
        if cur.k == 0:
            # e annihilates the top weight space, so the next step is zero
            cur = WeightVector.zero(p, w.m, 0)
            break
        cur = cur.ze_apply()
    if not cur.is_zero():
        J = next(iter(cur.coords))
        return _bad(
            "ze_resonance",
            {"coordinate": list(J), "residual": cur.coords[J].to_dict()},
            ell=ell,
        )
    return _ok("ze_resonance", ell=ell)


def check_flatness(p, m, k, zpoint):
    """Commutativity of Gaudin matrices and their invariance properties.

    Checks [H_i, H_j] = 0 for all pairs at the given z-point and that each
    H_i commutes with the diagonal e, f, h actions (as maps between adjacent
    weight spaces).
    """
    n = len(m)
    mats = [gaudin_matrix(p, m, k, i, zpoint) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            comm = (mats[i] @ mats[j] - mats[j] @ mats[i]) % p
            if comm.any():
                return _bad(
                    "flatness",
                    {"pair": [i, j], "residual": comm.tolist()},
                    zpoint=list(zpoint),
                )
    for which in ("e", "f", "h"):
        if which == "e":
            if k == 0:
                continue
            act = diagonal_action_matrix(p, m, k, "e")
            other = [gaudin_matrix(p, m, k - 1, i, zpoint) for i in range(n)]
        elif which == "f":
            if k == sum(m):
                continue
            act = diagonal_action_matrix(p, m, k, "f")
            other = [gaudin_matrix(p, m, k + 1, i, zpoint) for i in range(n)]
        else:
            act = diagonal_action_matrix(p, m, k, "h")
            other = mats
        for i in range(n):
            comm = (act @ mats[i] - other[i] @ act) % p
            if comm.any():
                return _bad(
                    "flatness",
                    {
                        "diagonal": which,
                        "hamiltonian": i,
                        "residual": comm.tolist(),
                    },
                    zpoint=list(zpoint),
                )
    return _ok("flatness", zpoint=list(zpoint))


def _master_k1(spec, exps):
    """The k=1 master polynomial and its lowered variants Phi_s."""
    from .construct import master_polynomial
    from .ffpoly import linear_t_minus_z, linear_z_diff

    p, n = spec.p, spec.n
    phi = master_polynomial(spec, exps)
    lowered = []
    for s in range(n):
        # Phi_s = Phi with the (t - z_s) exponent dropped by one
        f = SparsePoly.constant(p, 1, n, 1)
        for (i, j), e in sorted(exps.M_pair.items()):
            f = f * (linear_z_diff(p, 1, n, i, j) ** e)
        for r in range(n):
            exp = exps.M[r] - 1 if r == s else exps.M[r]
            f = f * (linear_t_minus_z(p, 1, n, 0, r) ** exp)
        lowered.append(f)
    return phi, lowered


def check_cohomology_k1(spec, exps):
    """The three k=1 cohomological identities behind the construction.

    (a)  d/dt Phi = sum_s M_s Phi_s  where Phi_s = Phi / (t - z_s);
    (b)  for each i, the KZ operator applied to the vector (Phi_s)_s equals
         d/dt of the vector whose only entry is -Phi_i at place i;
    (c)  d/dt (t Phi) = (1 + sum_s M_s) Phi + sum_s z_s M_s Phi_s.
    """
    if spec.k != 1:
        raise PreconditionError("cohomological identities are k=1 statements")
    if any(ms < 1 for ms in exps.M):
        raise PreconditionError("every M_s must be >= 1 for exact division")
    p, n = spec.p, spec.n
    K = exps.K
    phi, lowered = _master_k1(spec, exps)

    lhs = phi.partial_t(0)
    rhs = SparsePoly.zero(p, 1, n)
    for s in range(n):
        rhs = rhs + lowered[s].scale(exps.M[s])
    diff = lhs - rhs
    if diff:
        return _bad("cohomology_k1", {"identity": "a", "residual": diff.to_dict()})

    # identity (b): per i, using exact quotients of Casimir images
    action = {
        (i, j): casimir_index_action(spec.m, 1, i, j, p)
        for i in range(n)
        for j in range(i + 1, n)
    }
    units = [tuple(1 if r == s else 0 for r in range(n)) for s in range(n)]
    for i in range(n):
        rhs_vec = [SparsePoly.zero(p, 1, n) for _ in range(n)]
        for j in range(n):
            if j == i:
                continue
            a, b = min(i, j), max(i, j)
            img = [SparsePoly.zero(p, 1, n) for _ in range(n)]
            for s in range(n):
                for tgt, c in action[(a, b)][units[s]]:
                    r = tgt.index(1)
                    img[r] = img[r] + lowered[s].scale(c)
            for s in range(n):
                if not img[s]:
                    continue
                rem = img[s].subs_z(i, j)
                if rem:
                    return _bad(
                        "cohomology_k1",
                        {
                            "identity": "b",
                            "equation": i,
                            "pair": [i, j],
                            "residual": rem.to_dict(),
                        },
                    )
                q = (img[s] if i < j else -img[s]).divide_z_diff(a, b)
                rhs_vec[s] = rhs_vec[s] + q
        for s in range(n):
            lhs_s = lowered[s].partial_z(i) - rhs_vec[s].scale(K)
            target = -lowered[i].partial_t(0) if s == i else SparsePoly.zero(p, 1, n)
            diff = lhs_s - target
            if diff:
                return _bad(
                    "cohomology_k1",
                    {
                        "identity": "b",
                        "equation": i,
                        "coordinate": s,
                        "residual": diff.to_dict(),
                    },
                )

    t_var = SparsePoly.var_t(p, 1, n, 0)
    lhs = (t_var * phi).partial_t(0)
    rhs = phi.scale(1 + sum(exps.M))
    for s in range(n):
        rhs = rhs + (lowered[s] * SparsePoly.var_z(p, 1, n, s)).scale(exps.M[s])
    diff = lhs - rhs
    if diff:
        return _bad("cohomology_k1", {"identity": "c", "residual": diff.to_dict()})
    return _ok("cohomology_k1", identities=["a", "b", "c"])
