"""Point sums on superelliptic curves and a skew surface over F_p.

A curve y^d = prod_s (t - x_s)^{e_s} is enumerated by brute force; the
discrete integral of a rational function h is the sum of h over all affine
points where h is defined (the relevant h vanish at infinity, so the affine
sum is the full integral).  The point sums of 1/(t - x_j) reproduce, up to
sign, Taylor coefficients of products of the curve's defining factors; each
theorem checker recomputes those coefficients from scratch with plain
univariate arithmetic.
"""

from dataclasses import dataclass
from itertools import product

from .ffpoly import inverse_mod, is_prime
from .verify import CheckReport, PreconditionError


@dataclass(frozen=True)
class CurveSpec:
    """The superelliptic curve y^d = prod_s (t - x_s)^{e_s} over F_p."""

    p: int
    d: int
    x: tuple
    e: tuple

    def __post_init__(self):
        if not is_prime(self.p) or self.p <= 2:
            raise ValueError("p must be an odd prime")
        if self.d < 2:
            raise ValueError("cover degree must be at least 2")
        x = tuple(v % self.p for v in self.x)
        if not x:
            raise ValueError("at least one branch point required")
        if len(set(x)) != len(x):
            raise ValueError("branch points must be distinct")
        e = tuple(self.e)
        if len(e) != len(x) or any(ei < 1 for ei in e):
            raise ValueError("one positive multiplicity per branch point")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "e", e)


@dataclass(frozen=True)
class SurfaceSpec:
    """The surface y^2 = (t1-t2)(t1-x1)(t2-x1)(t1-x2)(t2-x2) over F_p."""

    p: int
    x1: int
    x2: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p <= 2:
            raise ValueError("p must be an odd prime")
        object.__setattr__(self, "x1", self.x1 % self.p)
        object.__setattr__(self, "x2", self.x2 % self.p)
        if self.x1 == self.x2:
            raise ValueError("x1 and x2 must be distinct")


def _dth_roots(p, d):
    """roots[v] = list of y in F_p with y^d = v."""
    roots = {v: [] for v in range(p)}
    for y in range(p):
        roots[pow(y, d, p)].append(y)
    return roots


def affine_points(c):
    """All affine points of the curve or surface, as tuples ending in y."""
    p = c.p
    if isinstance(c, SurfaceSpec):
        roots = _dth_roots(p, 2)
        pts = []
        for t1, t2 in product(range(p), repeat=2):
            v = (
                (t1 - t2)
                * (t1 - c.x1)
                * (t2 - c.x1)
                * (t1 - c.x2)
                * (t2 - c.x2)
            ) % p
            for y in roots[v]:
                pts.append((t1, t2, y))
        return pts
    roots = _dth_roots(p, c.d)
    pts = []
    for t in range(p):
        v = 1
        for xs, es in zip(c.x, c.e):
            v = (v * pow((t - xs) % p, es, p)) % p
        for y in roots[v]:
            pts.append((t, y))
    return pts


def curve_integral(c, j):
    """Sum of 1/(t - x_j) over all affine points where it is defined."""
    if not 0 <= j < len(c.x):
        raise ValueError("branch index out of range")
    p, xj = c.p, c.x[j]
    total = 0
    for t, _y in affine_points(c):
        if t != xj:
            total += inverse_mod(t - xj, p)
    return total % p


def surface_integral(s, ja, jb):
    """Sum of (t1-t2)/((t1-x_{ja})(t2-x_{jb})) over the surface points."""
    p = s.p
    xa = s.x1 if ja == 0 else s.x2
    xb = s.x1 if jb == 0 else s.x2
    total = 0
    for t1, t2, _y in affine_points(s):
        if t1 != xa and t2 != xb:
            total += (t1 - t2) * inverse_mod(t1 - xa, p) * inverse_mod(t2 - xb, p)
    return total % p


# -- univariate coefficient helpers ---------------------------------------


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return out


def _linear_power(p, x0, e):
    """Coefficient list of (t - x0)^e over F_p, constant term first."""
    out = [1]
    base = [(-x0) % p, 1]
    while e:
        if e & 1:
            out = _poly_mul(out, base, p)
        e >>= 1
        if e:
            base = _poly_mul(base, base, p)
    return out


def _taylor_vector(p, x, exps):
    """c_j = coeff of t^{p-1} in prod_s (t - x_s)^{exps_s} with exps_j lowered."""
    full = [_linear_power(p, xs, es) for xs, es in zip(x, exps)]
    out = []
    for j in range(len(x)):
        poly = [1]
        for s in range(len(x)):
            f = (
                _linear_power(p, x[s], exps[s] - 1) if s == j else full[s]
            )
            poly = _poly_mul(poly, f, p)
        out.append(poly[p - 1] if p - 1 < len(poly) else 0)
    return out


_CURVE_KINDS = ("elliptic", "quartic", "cubic3", "genus2")


def check_curve_theorem(kind, p, x):
    """Point sums of 1/(t - x_j) against the matching Taylor coefficients.

    Kinds: "elliptic" (y^2 = cubic, n=3), "quartic" (y^2 = quartic, n=4),
    "cubic3" (y^3 = cubic, needs 3 | p-1), "genus2" (y^3 with a double
    branch point, needs 3 | p-1; two coefficient vectors enter the sum).
    The p=3 elliptic case genuinely violates the identity and is run with
    status "anomaly" instead of being scored.
    """
    x = tuple(v % p for v in x)
    if len(set(x)) != len(x):
        raise PreconditionError("branch points must be distinct")
    anomaly = False
    if kind == "elliptic":
        if len(x) != 3:
            raise PreconditionError("elliptic kind needs 3 branch points")
        if p < 5:
            anomaly = True
        curve = CurveSpec(p, 2, x, (1, 1, 1))
        expected = [(-c) % p for c in _taylor_vector(p, x, ((p - 1) // 2,) * 3)]
    elif kind == "quartic":
        if len(x) != 4:
            raise PreconditionError("quartic kind needs 4 branch points")
        if p <= 3:
            raise PreconditionError("quartic kind needs p > 3")
        curve = CurveSpec(p, 2, x, (1, 1, 1, 1))
        expected = [(-c) % p for c in _taylor_vector(p, x, ((p - 1) // 2,) * 4)]
    elif kind == "cubic3":
        if len(x) != 3:
            raise PreconditionError("cubic3 kind needs 3 branch points")
        if (p - 1) % 3:
            raise PreconditionError("cubic3 kind needs 3 | p - 1")
        curve = CurveSpec(p, 3, x, (1, 1, 1))
        expected = [
            (-c) % p for c in _taylor_vector(p, x, (2 * (p - 1) // 3,) * 3)
        ]
    elif kind == "genus2":
        if len(x) != 3:
            raise PreconditionError("genus2 kind needs 3 branch points")
        if (p - 1) % 3:
            raise PreconditionError("genus2 kind needs 3 | p - 1")
        curve = CurveSpec(p, 3, x, (1, 1, 2))
        e3 = (p - 1) // 3
        b = _taylor_vector(p, x, (e3, e3, 2 * e3))
        c = _taylor_vector(p, x, (2 * e3, 2 * e3, e3))
        expected = [(-bi - ci) % p for bi, ci in zip(b, c)]
    else:
        raise PreconditionError("unknown curve kind %r" % (kind,))

    actual = [curve_integral(curve, j) for j in range(len(x))]
    if anomaly:
        return CheckReport(
            "curve_%s" % kind,
            True,
            "anomaly",
            None,
            {"p": p, "x": list(x), "integral": actual, "expected": expected},
        )
    if actual != expected:
        return CheckReport(
            "curve_%s" % kind,
            False,
            "fail",
            {"p": p, "x": list(x), "integral": actual, "expected": expected},
        )
    return CheckReport("curve_%s" % kind, True, "pass", None, {"p": p, "x": list(x)})


def check_surface_theorem(p, x1, x2):
    """The three surface point sums equal the weight-space coefficients.

    The coefficients c_J come from the two-variable construction with
    m = (2, 2), kappa = 4 and the symmetric exponent choice (p-1)/2,
    (p+1)/2; the theorem needs p = 3 mod 4.  The p=3 case violates the
    identity and is reported with status "anomaly".
    """
    from fractions import Fraction

    from .construct import ProblemSpec, exponent_data, weighted_master_t_part

    if p % 4 != 3:
        raise PreconditionError("surface theorem needs p = 3 mod 4")
    surf = SurfaceSpec(p, x1, x2)
    spec = ProblemSpec(p=p, kappa=Fraction(4), m=(2, 2), k=2)
    exps = exponent_data(
        spec,
        override={
            "M": ((p - 1) // 2, (p - 1) // 2),
            "M0": (p + 1) // 2,
            "M_pair": {(0, 1): (p + 1) // 2},
        },
    )
    x = (surf.x1, surf.x2)
    coeffs = {}
    for J in ((2, 0), (1, 1), (0, 2)):
        tp = weighted_master_t_part(spec, exps, J, x=x)
        c = tp.coeff_t((p - 1, p - 1))
        coeffs[J] = c.eval((0, 0), (0, 0)) if c else 0
    integrals = {
        (2, 0): surface_integral(surf, 0, 0),
        (1, 1): (surface_integral(surf, 0, 1) + surface_integral(surf, 1, 0)) % p,
        (0, 2): surface_integral(surf, 1, 1),
    }
    mismatch = {J: (coeffs[J], integrals[J]) for J in coeffs if coeffs[J] != integrals[J]}
    if p == 3:
        return CheckReport(
            "surface",
            True,
            "anomaly",
            None,
            {
                "p": p,
                "x": list(x),
                "coefficients": {str(J): v for J, v in coeffs.items()},
                "integrals": {str(J): v for J, v in integrals.items()},
            },
        )
    if mismatch:
        return CheckReport(
            "surface",
            False,
            "fail",
            {"p": p, "x": list(x), "mismatch": {str(J): v for J, v in mismatch.items()}},
        )
    return CheckReport("surface", True, "pass", None, {"p": p, "x": list(x)})
