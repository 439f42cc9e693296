"""Maurer-Cartan residuals in g ⊗ A computed with sympy on labels.

Elements are {(g label, A label): coeff}.  A is given by its labels,
degrees and multiplication table on labels; its differential is zero in
every algebra used here.  Sign rule: [x⊗a, y⊗b] = (-1)^{|a||y|} [x,y]⊗ab.
"""
import sympy


def algebra_tables(A):
    mult = {}
    for (i, j), v in A.mult.items():
        mult[(A.labels[i], A.labels[j])] = {A.labels[k]: sympy.Rational(c.numerator, c.denominator)
                                            for k, c in v.items()}
    return dict(zip(A.labels, A.degrees)), mult


def residual(g, A, X):
    """dX + ½[X,X] as a dict of sympy expressions."""
    adeg, mult = algebra_tables(A)
    gdeg = dict(zip(g.labels, g.degrees))
    gd = {g.labels[i]: {g.labels[j]: c for j, c in v.items()} for i, v in g.d.items()}
    gb = {(g.labels[i], g.labels[j]): {g.labels[k]: c for k, c in v.items()} for (i, j), v in g.bracket.items()}
    out = {}

    def acc(key, val):
        out[key] = sympy.expand(out.get(key, 0) + val)

    for (x, a), c in X.items():
        for y, e in gd.get(x, {}).items():
            acc((y, a), c * sympy.Rational(e.numerator, e.denominator))
    for (x, a), c1 in X.items():
        for (y, b), c2 in X.items():
            br = gb.get((x, y))
            ab = mult.get((a, b))
            if a == "1":
                ab = {b: 1}
            elif b == "1":
                ab = {a: 1}
            if not br or not ab:
                continue
            s = -1 if (adeg[a] * gdeg[y]) % 2 else 1
            for z, e in br.items():
                for m, f in ab.items():
                    acc((z, m), sympy.Rational(1, 2) * s * c1 * c2 * sympy.Rational(e.numerator, e.denominator) * f)
    return {k: v for k, v in out.items() if v != 0}


def is_mc(g, A, X):
    return not residual(g, A, X)


def lift_exists(g, ext, X_over_B):
    """Search all corrections c ∈ (g ⊗ I)^1 for an MC lift of the naive lift.

    Returns (exists, solution dict or None).
    """
    A = ext.source
    keep = [A.labels[i] for i in ext.keep]
    base = {(x, keep[ext.quotient.labels.index(b)]): c for (x, b), c in X_over_B.items()}
    unknowns = {}
    for x, n in zip(g.labels, g.degrees):
        for j in ext.ideal:
            if n + A.degrees[j] == 1:
                unknowns[(x, A.labels[j])] = sympy.Symbol(f"c_{len(unknowns)}")
    X = dict(base)
    for k, s in unknowns.items():
        X[k] = X.get(k, 0) + s
    eqs = list(residual(g, A, X).values())
    if not eqs:
        return True, {}
    if not unknowns:
        return False, None
    sols = sympy.solve(eqs, list(unknowns.values()), dict=True)
    return bool(sols), (sols[0] if sols else None)
