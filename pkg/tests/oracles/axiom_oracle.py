"""Brute-force dgla axiom evaluation on labelled structure constants.

Written against plain dicts keyed by basis labels, without any package
helpers, so it can judge the package's validator.  Conditions checked over
all basis tuples (a, b, c):

    degree      |da| = |a| + 1, |[a,b]| = |a| + |b|
    d² = 0
    [a,b] = -(-1)^{|a||b|} [b,a]
    (-1)^{|a||c|}[a,[b,c]] + (-1)^{|b||a|}[b,[c,a]] + (-1)^{|c||b|}[c,[a,b]] = 0
    d[a,b] = [da,b] + (-1)^{|a|}[a,db]
"""
from fractions import Fraction


def _sign(n):
    return -1 if n % 2 else 1


def _add(acc, vec, s=1):
    for k, c in vec.items():
        acc[k] = acc.get(k, 0) + s * c
    return acc


def _clean(vec):
    return {k: c for k, c in vec.items() if c != 0}


def _lin(f, vec):
    """Extend a map on basis labels linearly."""
    out = {}
    for k, c in vec.items():
        _add(out, f(k), c)
    return out


def failures(labels, degrees, d, bracket):
    """``d``: {a: {b: c}}, ``bracket``: {(a, b): {c: coeff}} on labels.

    Returns the set of (axiom, witness) pairs that fail.
    """
    deg = dict(zip(labels, degrees))
    D = lambda a: d.get(a, {})
    B = lambda a, b: bracket.get((a, b), {})

    def br(x, y):
        out = {}
        for a, s in x.items():
            for b, t in y.items():
                _add(out, B(a, b), s * t)
        return out

    bad = set()
    for a in labels:
        if any(c and deg[b] != deg[a] + 1 for b, c in D(a).items()):
            bad.add(("DegreeViolation", (a,)))
    for (a, b), v in bracket.items():
        if any(c and deg[k] != deg[a] + deg[b] for k, c in v.items()):
            bad.add(("DegreeViolation", (a, b)))
    for a in labels:
        if _clean(_lin(D, D(a))):
            bad.add(("DifferentialSquare", (a,)))
    for a in labels:
        for b in labels:
            res = _add(dict(B(a, b)), B(b, a), _sign(deg[a] * deg[b]))
            if _clean(res):
                bad.add(("Antisymmetry", (a, b)))
    for a in labels:
        for b in labels:
            for c in labels:
                res = {}
                _add(res, br({a: 1}, B(b, c)), _sign(deg[a] * deg[c]))
                _add(res, br({b: 1}, B(c, a)), _sign(deg[b] * deg[a]))
                _add(res, br({c: 1}, B(a, b)), _sign(deg[c] * deg[b]))
                if _clean(res):
                    bad.add(("Jacobi", (a, b, c)))
    for a in labels:
        for b in labels:
            lhs = _lin(D, B(a, b))
            rhs = br(D(a), {b: 1})
            _add(rhs, br({a: 1}, D(b)), _sign(deg[a]))
            if _clean(_add(lhs, rhs, -1)):
                bad.add(("Leibniz", (a, b)))
    return bad


def from_dgla(g):
    """Relabel a package Dgla into the plain-dict form used above."""
    lab = g.labels
    d = {lab[i]: {lab[j]: Fraction(c) for j, c in v.items()} for i, v in g.d.items()}
    br = {(lab[i], lab[j]): {lab[k]: Fraction(c) for k, c in v.items()} for (i, j), v in g.bracket.items()}
    return list(lab), list(g.degrees), d, br
