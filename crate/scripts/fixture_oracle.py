#!/usr/bin/env python3
"""Independent oracle for the bundled Cremona map fixtures.

Transcribes the example maps into sympy, checks their stated base-point
multiplicities, and computes inverse maps by exact linear elimination:
the inverse of a plane Cremona map gamma of degree d is the (projectively
unique) triple g of degree-d forms with g(gamma) proportional to (x, y, z).

Writes MapDocument JSON files into crates/core/fixtures/.

Usage: python3 scripts/fixture_oracle.py [--write]
"""

import json
import sys
from fractions import Fraction
from pathlib import Path

import sympy as sp
from sympy.polys.matrices import DomainMatrix

x, y, z = sp.symbols("x y z")
GENS = (x, y, z)

MAPS = {
    "bir4_t1": [
        "(3*x**3-6*x**2*z+80*x*y**2-107*x*y*z+3*x*z**2-9*y**3-98*y**2*z+107*y*z**2)*x",
        "-3*(-x**2+10*x*y-12*x*z-y**2-12*y*z+13*z**2)*x*y",
        "3*(-y+z)*(12*x**2-3*x*y-12*x*z-y**2+y*z)*y",
    ],
    "bir4_t1_inv": [
        "-(-36*x**2-243*x*y+42*x*z-396*y**2+116*y*z)*(-36*x*y+39*x*z-99*y**2+107*y*z)",
        "(-36*x*y+39*x*z-99*y**2+107*y*z)*(36*x*y-42*x*z+99*y**2-125*y*z+10*z**2)",
        "-108*x**3*z-1296*x**2*y**2+1539*x**2*y*z-1152*x**2*z**2-7128*x*y**3+10809*x*y**2*z"
        "-6195*x*y*z**2-30*x*z**3-9801*y**4+15840*y**3*z-8317*y**2*z**2-90*y*z**3",
    ],
    "bir4_t0": [
        "-(12*x**3-217*x*y**2+308*x*y*z-30*y**3+308*y**2*z)*x",
        "6*(-2*x**2-19*x*y+28*x*z-2*y**2+28*y*z)*x*y",
        "6*(-23*x**2*y+42*x**2*z-5*x*y**2+42*x*y*z-2*y**3)*y",
    ],
    "bir4_t0_inv": [
        "-7*(6*x+11*y)**2*(-3*y+2*z)*(-6*x-17*y+4*z)",
        "14*(-6*x-17*y+4*z)*(6*x+11*y)*(-3*y+2*z)**2",
        "216*x**3*z-2484*x**2*y**2+4896*x**2*y*z-1368*x**2*z**2-9648*x*y**3+16710*x*y**2*z"
        "-5544*x*y*z**2+96*x*z**3-9555*y**4+15942*y**3*z-5854*y**2*z**2+240*y*z**3",
    ],
    "bir5_t1": [
        "10*x**2*y**2*z+9*x*y**3*z-18*y**3*x**2+5*y**4*x+9*y**5+5*x**5-10*x*y**2*z**2"
        "+15*x**3*z**2-15*x**4*z-5*x**2*z**3-5*y**4*z",
        "y*(7*y**2*x*z+2*y**4-9*y**2*x**2+5*x**4-10*x**3*z+5*x**2*z**2)",
        "y**2*(4*y**3+4*y*x*z-5*x**2*z-8*y*x**2+5*x**3)",
    ],
    "bir5_t0": [
        "-60*y**3*x**2-5*y**4*x+30*y**5+5*x**5+30*x*y**3*z",
        "12*y**5-29*y**3*x**2+5*y*x**4+12*x*y**3*z",
        "6*y**5-5*y**4*x-12*y**3*x**2+5*y**2*x**3+6*x*y**3*z",
    ],
    "bir6_family1_t1": [
        "27*x**6-216*y**6-81*x**2*y*z**3+135*x**3*y*z**2-108*x**2*y**2*z**2-368*x*y**3*z**2"
        "-27*x**4*y*z+108*x**3*y**2*z+520*x*y**4*z-27*x**3*z**3+81*x**4*z**2-81*x**5*z"
        "+324*y**5*z-27*x**5*y-260*x*y**5",
        "3*x*y*(-z+y)*(-4*y**3+22*y**2*z-18*x*y**2+9*x*z**2-18*x**2*z+9*x**3)",
        "9*y**2*(-z+y)*(6*y**3+4*x*y**2-7*y*x*z-3*x**2*y+3*x**3-3*x**2*z)",
    ],
    "bir6_family1_t0": [
        "27*x**6-540*y**6-430*x*y**3*z**2+54*x**4*y*z+216*x**3*y**2*z-702*x**2*y**3*z"
        "+644*x*y**4*z+648*y**5*z-108*x**5*y+513*x**2*y**4-322*x*y**5",
        "3*y*(-z+y)*(36*y**4+20*x*y**3-20*y**2*x*z-45*x**2*y**2+9*x**4)",
        "9*y**2*(-z+y)*(6*y**3+2*x*y**2-5*y*x*z-6*x**2*y+3*x**3)",
    ],
    "bir6_family2_t1": [
        "-2*x**6-8*y**6-4*x*y**2*z**3+8*x**2*y**2*z**2-4*x**3*y**2*z+5*x**2*y**3*z"
        "-8*x*y**4*z-2*x**2*z**4+8*x**3*z**3-12*x**4*z**2-2*y**4*z**2+8*x**5*z"
        "-5*x**3*y**3+13*x**2*y**4+5*x*y**5",
        "-2*y*(-x*z+x**2+x*y-y**2)*(-x*z+x**2-y**2)*(-z+x-y)",
        "-y**2*(-2*x*z+2*x**2-x*y-2*y**2)*(-x*z+x**2+x*y-y**2)",
    ],
    "bir6_family2_t0": [
        "-3*x**6-20*y**6-20*x*y**4*z+20*x**3*y**3+23*x**2*y**4",
        "-y*(8*y**5+8*y**3*x*z+3*x**5-11*x**3*y**2-8*x**2*y**3)",
        "-y**2*(4*y**4+4*x*z*y**2+3*x**4-4*x**3*y-7*x**2*y**2)",
    ],
}

SIMPLE5 = [((1, 1, 1), 1), ((1, -1, 1), 1), ((2, 1, 1), 1)]
SIMPLE6 = [((1, 1, 1), 1), ((-1, 1, 1), 1), ((2, 1, 1), 1)]

POINTS = {
    "bir4_t1": [((0, 0, 1), 2), ((1, 0, 1), 2), ((0, 1, 1), 2),
                ((1, -2, 1), 1), ((-2, 1, 1), 1), ((2, 3, 1), 1)],
    "bir4_t0": [((0, 0, 1), 3), ((1, -2, 1), 1), ((-2, 1, 1), 1), ((2, 3, 1), 1)],
    "bir5_t1": [((0, 0, 1), 2), ((1, 0, 1), 3)] + SIMPLE5,
    "bir5_t0": [((0, 0, 1), 4)] + SIMPLE5,
    "bir6_family1_t1": [((0, 0, 1), 3), ((1, 0, 1), 3), ((1, 1, 1), 2), ((-1, 1, 1), 2),
                        ((2, 1, 1), 2), ((2, -3, 1), 1)],
    "bir6_family1_t0": [((0, 0, 1), 4), ((1, 1, 1), 2), ((-1, 1, 1), 2), ((2, 1, 1), 2),
                        ((2, -3, 1), 1)],
    "bir6_family2_t1": [((0, 0, 1), 2), ((1, 0, 1), 4)] + SIMPLE6,
    "bir6_family2_t0": [((0, 0, 1), 5)] + SIMPLE6,
}

HTYPES = {
    "bir4_t1": [3, 3, 0],
    "bir4_t0": [6, 0, 1],
    "bir5_t1": [3, 3, 1, 0],
    "bir5_t0": [8, 0, 0, 1],
    "bir6_family1_t1": [1, 4, 2, 0, 0],
    "bir6_family1_t0": [3, 4, 0, 1, 0],
    "bir6_family2_t1": [3, 4, 0, 1, 0],
    "bir6_family2_t0": [10, 0, 0, 0, 1],
}


def poly(expr):
    return sp.Poly(sp.expand(sp.sympify(expr)), *GENS, domain=sp.QQ)


def multiplicity(p, pt):
    """Order of vanishing via Taylor expansion at an affine chart."""
    d = p.total_degree()
    a, b, c = pt
    assert c != 0
    expr = p.as_expr().subs({x: sp.Rational(a, c) + x, y: sp.Rational(b, c) + y, z: 1})
    q = sp.Poly(sp.expand(expr), x, y)
    return min(i + j for (i, j) in q.monoms()) if not q.is_zero else d + 1


def powers(forms, d):
    tables = []
    for f in forms:
        row = [sp.Poly(1, *GENS, domain=sp.QQ)]
        for _ in range(d):
            row.append(row[-1] * f)
        tables.append(row)
    return tables


def compose(outer, inner):
    d = max(o.total_degree() for o in outer)
    pw = powers(inner, d)
    out = []
    for o in outer:
        acc = sp.Poly(0, *GENS, domain=sp.QQ)
        for (a, b, c), coef in o.terms():
            acc += pw[0][a] * pw[1][b] * pw[2][c] * coef
        out.append(acc)
    return out


def is_identity(comp):
    f1, f2, f3 = comp
    X, Y, Z = (sp.Poly(v, *GENS, domain=sp.QQ) for v in GENS)
    return all(e.is_zero for e in (f1 * Y - f2 * X, f1 * Z - f3 * X, f2 * Z - f3 * Y))


def monomials(d):
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def inverse(fs):
    """Solve g(f) ∝ (x,y,z) for a triple g of degree-d forms, exactly."""
    d = fs[0].total_degree()
    mons = monomials(d)
    pw = powers(fs, d)
    images = [pw[0][a] * pw[1][b] * pw[2][c] for (a, b, c) in mons]
    n = len(mons)
    # unknowns: coefficients of g1, g2, g3 (3n). Equations: coefficients of
    # g1(f)*y - g2(f)*x, g1(f)*z - g3(f)*x, g2(f)*z - g3(f)*y.
    rows = {}
    X, Y, Z = (sp.Poly(v, *GENS) for v in GENS)
    pairs = [(0, Y, 1, X), (0, Z, 2, X), (1, Z, 2, Y)]
    for eq, (i, vi, j, vj) in enumerate(pairs):
        for k, im in enumerate(images):
            for monom, coef in (im * vi).terms():
                rows.setdefault((eq, monom), {})
                rows[(eq, monom)][i * n + k] = rows[(eq, monom)].get(i * n + k, 0) + coef
            for monom, coef in (im * vj).terms():
                rows.setdefault((eq, monom), {})
                rows[(eq, monom)][j * n + k] = rows[(eq, monom)].get(j * n + k, 0) - coef
    keys = sorted(rows)
    dense = [[sp.Rational(rows[key].get(col, 0)) for col in range(3 * n)] for key in keys]
    mat = DomainMatrix.from_list_sympy(len(dense), 3 * n, dense).convert_to(sp.QQ)
    null = mat.nullspace()
    assert null.shape[0] == 1, f"nullspace dimension {null.shape[0]}"
    vec = [sp.Rational(v) for v in null.to_Matrix().row(0)]
    den = sp.ilcm(*[v.q for v in vec])
    vec = [v * den for v in vec]
    g = sp.gcd_list([v for v in vec if v != 0])
    vec = [v / g for v in vec]
    out = []
    for i in range(3):
        e = sum(vec[i * n + k] * x**a * y**b * z**c for k, (a, b, c) in enumerate(mons))
        out.append(poly(e))
    return out


def grlex_key(exp):
    return (sum(exp), exp)


def to_doc(fs, name, meta):
    d = max(c.total_degree() for c in fs)
    forms = []
    for c in fs:
        terms = sorted(c.terms(), key=lambda t: grlex_key(t[0]), reverse=True)
        forms.append([{"exp": list(e), "coef": str(Fraction(int(v.p), int(v.q)))
                       if v.q != 1 else f"{v.p}"} for e, v in terms])
    doc = {"schema": "cremona.map/v1", "degree": d, "f": forms}
    doc.update(meta)
    return doc


def main():
    write = "--write" in sys.argv
    out_dir = Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"
    maps = {k: [poly(e) for e in v] for k, v in MAPS.items()}
    for name, fs in maps.items():
        degs = {c.total_degree() for c in fs}
        assert len(degs) == 1, (name, degs)
        jac = sp.Matrix([[sp.diff(c.as_expr(), v) for v in GENS] for c in fs]).det()
        assert sp.expand(jac) != 0, name
        for pt, m in POINTS.get(name, []):
            got = min(multiplicity(c, pt) for c in fs)
            assert got == m, (name, pt, m, got)
        print(f"{name}: degree {degs.pop()}, jacobian nonzero, multiplicities ok")

    for base in ("bir4_t1", "bir4_t0"):
        f, g = maps[base], maps[base + "_inv"]
        assert is_identity(compose(f, g)) and is_identity(compose(g, f)), base
        print(f"{base}: transcribed inverse verified")
        g2 = inverse(f)
        # projective equality with the transcribed inverse
        for a in range(3):
            for b in range(3):
                assert sp.expand(g2[a].as_expr() * g[b].as_expr()
                                 - g2[b].as_expr() * g[a].as_expr()) == 0
        print(f"{base}: eliminated inverse equals transcribed inverse")

    computed = {}
    for base in ("bir5_t1", "bir5_t0", "bir6_family1_t1", "bir6_family1_t0",
                 "bir6_family2_t1", "bir6_family2_t0"):
        g = inverse(maps[base])
        assert is_identity(compose(maps[base], g)) and is_identity(compose(g, maps[base]))
        computed[base + "_inv"] = g
        print(f"{base}: inverse computed and verified")

    if write:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, fs in maps.items():
            meta = {"name": name, "source": "transcribed"}
            if name in HTYPES:
                meta["htype"] = HTYPES[name]
            if name.endswith("_inv"):
                meta["inverse_of"] = name[:-4]
            meta["points"] = [{"point": [str(c) for c in pt], "mult": m}
                              for pt, m in POINTS.get(name, [])]
            (out_dir / f"{name}.json").write_text(json.dumps(to_doc(fs, name, meta), indent=2) + "\n")
        for name, fs in computed.items():
            meta = {"name": name, "source": "computed", "inverse_of": name[:-4], "points": []}
            (out_dir / f"{name}.json").write_text(json.dumps(to_doc(fs, name, meta), indent=2) + "\n")
        print(f"wrote {len(maps) + len(computed)} fixtures to {out_dir}")


if __name__ == "__main__":
    main()
