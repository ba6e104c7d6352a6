"""Independent reference values for the Rust test suite.

Builds the R-matrices directly from the tabulated Ĝ, Ĉ and shifts with
sparse exact-rational matrices, and evaluates:

* QYBE residuals at fixed rational points (zero / nonzero),
* the rational values of the shift c allowed by the QYBE,
* the unitarity factor R(s) R(-s) for the sphere,
* the curvature / Casimir ratio c* for real Grassmann pairs.

Writes crates/core/tests/data/oracle.json. Run from the repository root:

    python3 oracles/oracle.py
"""

from fractions import Fraction as Q
import itertools
import json
import os

import sympy
from sympy.polys.fields import field
from sympy.polys.domains import QQ

# ---------------------------------------------------------------- sparse algebra


def mat_mul(a, b, zero):
    """Product of two {(r, c): x} matrices."""
    by_row = {}
    for (r, c), x in b.items():
        by_row.setdefault(r, []).append((c, x))
    out = {}
    for (r, k), x in a.items():
        for c, y in by_row.get(k, ()):
            out[(r, c)] = out.get((r, c), zero) + x * y
    return {k: v for k, v in out.items() if v != 0}


def mat_add(a, b, scale=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + scale * v
    return {k: v for k, v in out.items() if v != 0}


def mat_scale(a, s):
    return {k: v * s for k, v in a.items() if v * s != 0}


def identity(n, one=1):
    return {(i, i): one for i in range(n)}


def kron(a, na, b, nb):
    return {(ra * nb + rb, ca * nb + cb): x * y for (ra, ca), x in a.items() for (rb, cb), y in b.items()}


def embed_two(r, d, legs):
    """Two-leg operator on legs (i, j) of a three-leg space of leg dim d."""
    out = {}
    for (row, col), x in r.items():
        i_out, j_out = divmod(row, d)
        i_in, j_in = divmod(col, d)
        for other in range(d):
            idx_out = [0, 0, 0]
            idx_in = [0, 0, 0]
            rest = 3 - legs[0] - legs[1]
            idx_out[legs[0]], idx_out[legs[1]], idx_out[rest] = i_out, j_out, other
            idx_in[legs[0]], idx_in[legs[1]], idx_in[rest] = i_in, j_in, other
            key = ((idx_out[0] * d + idx_out[1]) * d + idx_out[2], (idx_in[0] * d + idx_in[1]) * d + idx_in[2])
            out[key] = x
    return out


# ---------------------------------------------------------------- tables

# left regular representation of the units 1, i, j, k on coordinates (1, i, j, k)
QUAT = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def left_regular(unit, units):
    m = {}
    for col, x in enumerate(units):
        sign, prod = QUAT[(unit, x)]
        m[(units.index(prod), col)] = Q(sign)
    return m


def elementary(n, i, j):
    return {(i, j): Q(1)}


def sphere_gc(n):
    g, c = {}, {}
    for i in range(n):
        for j in range(n):
            g = mat_add(g, kron(elementary(n, i, j), n, elementary(n, i, j), n), -1)
            c = mat_add(c, kron(elementary(n, i, j), n, elementary(n, j, i), n))
    return g, c


def projective_gc(n, units):
    """Ĝ = -Σ_u uE_ij ⊗ uE_ij, Ĉ = E_ij⊗E_ji - Σ_{u≠1} uE_ij ⊗ uE_ji, realified."""
    d = len(units)
    dim = n * d
    g, c = {}, {}
    for u in units:
        lu = left_regular(u, units)
        for i in range(n):
            for j in range(n):
                x = kron(elementary(n, i, j), n, lu, d)
                y_same = kron(elementary(n, i, j), n, lu, d)
                y_swap = kron(elementary(n, j, i), n, lu, d)
                g = mat_add(g, kron(x, dim, y_same, dim), -1)
                c = mat_add(c, kron(x, dim, y_swap, dim), 1 if u == "1" else -1)
    return g, c, dim


# ---------------------------------------------------------------- QYBE


def r_numeric(g, c, d, arg, h, shift):
    a = h / (arg + shift * h)
    b = h / arg
    return mat_add(mat_add(identity(d * d, Q(1)), mat_scale(g, a)), mat_scale(c, b))


def qybe_residual_zero(g, c, d, shift, point):
    u, v, h = point
    r12 = embed_two(r_numeric(g, c, d, u, h, shift), d, (0, 1))
    r13 = embed_two(r_numeric(g, c, d, u + v, h, shift), d, (0, 2))
    r23 = embed_two(r_numeric(g, c, d, v, h, shift), d, (1, 2))
    left = mat_mul(mat_mul(r12, r13, Q(0)), r23, Q(0))
    right = mat_mul(mat_mul(r23, r13, Q(0)), r12, Q(0))
    return mat_add(left, right, -1) == {}


POINTS = [(Q(3, 2), Q(-5, 7), Q(2, 3)), (Q(-11, 4), Q(13, 5), Q(7, 9)), (Q(5), Q(2, 11), Q(-3, 8))]


def qybe_verdict(g, c, d, shift):
    return "pass" if all(qybe_residual_zero(g, c, d, shift, p) for p in POINTS) else "fail"


def fit_shift(g, c, d, points):
    """Rational shifts c for which the residual vanishes at every point."""
    K, cs = field("c", QQ)
    cond = None
    for u, v, h in points:
        to = lambda x: K(sympy.Rational(x.numerator, x.denominator))
        u, v, h = to(u), to(v), to(h)
        gk = {k: to(x) for k, x in g.items()}
        ck = {k: to(x) for k, x in c.items()}

        def r(arg):
            a = h / (arg + cs * h)
            b = h / arg
            m = {k: K(1) for k in identity(d * d)}
            return mat_add(mat_add(m, mat_scale(gk, a)), mat_scale(ck, b))

        r12 = embed_two(r(u), d, (0, 1))
        r13 = embed_two(r(u + v), d, (0, 2))
        r23 = embed_two(r(v), d, (1, 2))
        res = mat_add(mat_mul(mat_mul(r12, r13, K(0)), r23, K(0)), mat_mul(mat_mul(r23, r13, K(0)), r12, K(0)), -1)
        for x in res.values():
            num = sympy.Poly(x.numer.as_expr(), sympy.Symbol("c"))
            cond = num if cond is None else sympy.gcd(cond, num)
    if cond is None:
        return None
    roots = [r for r in sympy.roots(cond, filter="Q").keys() if r.is_rational]
    return sorted(str(r) for r in roots)


# ---------------------------------------------------------------- unitarity


def sphere_unitarity(n):
    s, h = sympy.symbols("s h")
    g, c = sphere_gc(n)
    shift = sympy.Rational(n - 2, 2)

    def r(arg):
        a = h / (arg + shift * h)
        b = h / arg
        m = {k: sympy.Integer(1) for k in identity(n * n)}
        m = mat_add(m, {k: a * sympy.Rational(v.numerator, v.denominator) for k, v in g.items()})
        return mat_add(m, {k: b * sympy.Rational(v.numerator, v.denominator) for k, v in c.items()})

    prod = mat_mul(r(s), r(-s), sympy.Integer(0))
    prod = {k: sympy.cancel(v) for k, v in prod.items()}
    prod = {k: v for k, v in prod.items() if v != 0}
    diag = {prod.get((i, i), 0) for i in range(n * n)}
    off = [k for k in prod if k[0] != k[1]]
    assert not off and len(diag) == 1, "not proportional to the identity"
    f = diag.pop()
    assert sympy.simplify(f - (1 - h**2 / s**2)) == 0
    return "1 - h^2/s^2"


# ---------------------------------------------------------------- curvature


def dense_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def bracket(a, b):
    ab, ba = dense_mul(a, b), dense_mul(b, a)
    n = len(a)
    return [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]


def solve_coords(basis, x):
    """Coordinates of x in an orthogonal-support basis of E_ab - E_ba matrices."""
    out = []
    for b in basis:
        (a, c) = next((i, j) for i in range(len(b)) for j in range(len(b)) if b[i][j] == 1)
        out.append(x[a][c])
    return out


def grassmann_cstar(p, q):
    n = p + q

    def gen(a, b):
        m = [[Q(0)] * n for _ in range(n)]
        m[a][b], m[b][a] = Q(1), Q(-1)
        return m

    # m: mixed index pairs, ordered by (row in P, column in Q); k: the rest
    m_basis = [gen(a, b) for a in range(p) for b in range(p, n)]
    k_basis = [gen(a, b) for a in range(n) for b in range(a + 1, n) if (a < p) == (b < p)]
    kappa = lambda x, y: sum(dense_mul(x, y)[i][i] for i in range(n)) / 2
    dm = len(m_basis)
    gm = sympy.Matrix(dm, dm, lambda i, j: kappa(m_basis[i], m_basis[j]))
    gk = sympy.Matrix(len(k_basis), len(k_basis), lambda i, j: kappa(k_basis[i], k_basis[j]))
    gm_inv, gk_inv = gm.inv(), gk.inv()
    # R[k][l][j][i]: coordinate on e_i of -[[e_k, e_l], e_j]
    R = {}
    for k, l, j in itertools.product(range(dm), repeat=3):
        img = bracket(bracket(m_basis[k], m_basis[l]), m_basis[j])
        for i, x in enumerate(solve_coords(m_basis, img)):
            R[(k, l, j, i)] = -x
    T = sympy.zeros(dm * dm, dm * dm)
    for i, j, k, l in itertools.product(range(dm), repeat=4):
        T[i * dm + k, j * dm + l] = sum(gm_inv[k, mm] * R[(mm, l, j, i)] for mm in range(dm))
    ads = []
    for x in k_basis:
        ad = sympy.zeros(dm, dm)
        for col, y in enumerate(m_basis):
            for row, coef in enumerate(solve_coords(m_basis, bracket(x, y))):
                ad[row, col] = coef
        ads.append(ad)
    t_hat = sympy.zeros(dm * dm, dm * dm)
    for a, b in itertools.product(range(len(k_basis)), repeat=2):
        if gk_inv[a, b] != 0:
            t_hat += gk_inv[a, b] * sympy.kronecker_product(ads[a], ads[b])
    idx = next((i, j) for i in range(dm * dm) for j in range(dm * dm) if t_hat[i, j] != 0)
    ratio = T[idx] / t_hat[idx]
    assert T - ratio * t_hat == sympy.zeros(dm * dm, dm * dm), "not proportional"
    return str(ratio)


# ---------------------------------------------------------------- main


def main():
    out = {"qybe": [], "fit": [], "unitarity": [], "curvature_casimir": []}
    for n in (2, 3, 4):
        g, c = sphere_gc(n)
        for k in (1, 0, -1):
            out["qybe"].append({"entry": "sphere", "params": {"n": n, "k": k}, "verdict": qybe_verdict(g, c, n, Q(k * (n - 2), 2))})
        out["fit"].append({"entry": "sphere", "params": {"n": n}, "c": fit_shift(g, c, n, POINTS[:2])})
    for n, units, shift, entry in [(1, ["1", "i"], 1, "cpn"), (2, ["1", "i"], 2, "cpn"), (1, ["1", "i", "j", "k"], 4, "hpn")]:
        g, c, d = projective_gc(n, units)
        out["qybe"].append({"entry": entry, "params": {"n": n}, "verdict": qybe_verdict(g, c, d, Q(shift))})
        out["fit"].append({"entry": entry, "params": {"n": n}, "c": fit_shift(g, c, d, POINTS[:2])})
    for n in (2, 3, 4):
        out["unitarity"].append({"entry": "sphere", "params": {"n": n, "k": 1}, "f": sphere_unitarity(n)})
    for p, q in [(2, 1), (3, 1), (2, 2)]:
        out["curvature_casimir"].append({"p": p, "q": q, "c_star": grassmann_cstar(p, q)})
    path = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tests", "data", "oracle.json")
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(out, fh, indent=2)
        fh.write("\n")
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
