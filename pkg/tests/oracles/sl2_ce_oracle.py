"""Brute-force Lie algebra cohomology H^n(L, L) for L = sl2 over Q.

Independent of the package: classical Chevalley-Eilenberg coboundary on
alternating cochains Hom(Lambda^n L, L), written with sympy matrices.

    (delta c)(x_0..x_n) = sum_i (-1)^i [x_i, c(..x_i^..)]
                          + sum_{i<j} (-1)^{i+j} c([x_i,x_j], ..x_i^..x_j^..)

Run directly to print dim H^n(sl2, sl2) for n = 0..3.
"""
from itertools import combinations

import sympy

# basis e, h, f
STRUCT = {
    (0, 1): {0: -2},  # [e,h] = -2e
    (0, 2): {1: 1},   # [e,f] = h
    (1, 2): {2: -2},  # [h,f] = -2f
}
DIM = 3


def bracket(a, b):
    out = [0] * DIM
    for i in range(DIM):
        for j in range(DIM):
            if a[i] == 0 or b[j] == 0 or i == j:
                continue
            if (i, j) in STRUCT:
                sign, key = 1, (i, j)
            else:
                sign, key = -1, (j, i)
            for k, c in STRUCT[key].items():
                out[k] += sign * a[i] * b[j] * c
    return out


def unit(i):
    v = [0] * DIM
    v[i] = 1
    return v


def cochain_basis(n):
    return [(s, k) for s in combinations(range(DIM), n) for k in range(DIM)]


def evaluate(coeffs, n, args):
    """Evaluate the cochain with coefficient dict {(sorted tuple, k): c} on
    basis-index arguments (possibly unsorted / repeated)."""
    if len(set(args)) < len(args):
        return [0] * DIM
    perm = sorted(range(n), key=lambda i: args[i])
    inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
    sign = -1 if inversions % 2 else 1
    key = tuple(sorted(args))
    out = [0] * DIM
    for k in range(DIM):
        out[k] += sign * coeffs.get((key, k), 0)
    return out


def evaluate_on_vectors(coeffs, n, vecs):
    out = [0] * DIM
    def rec(pos, idx, scale):
        if scale == 0:
            return
        if pos == n:
            val = evaluate(coeffs, n, idx)
            for k in range(DIM):
                out[k] += scale * val[k]
            return
        for i in range(DIM):
            if vecs[pos][i]:
                rec(pos + 1, idx + [i], scale * vecs[pos][i])
    rec(0, [], 1)
    return out


def coboundary_matrix(n):
    src = cochain_basis(n)
    tgt = cochain_basis(n + 1)
    M = sympy.zeros(len(tgt), len(src))
    for col, (s, k) in enumerate(src):
        c = {(s, k): 1}
        for row, (t, kk) in enumerate(tgt):
            xs = list(t)
            total = [0] * DIM
            for i in range(n + 1):
                rest = xs[:i] + xs[i + 1:]
                val = bracket(unit(xs[i]), evaluate(c, n, rest))
                for m in range(DIM):
                    total[m] += (-1) ** i * val[m]
            for i in range(n + 1):
                for j in range(i + 1, n + 1):
                    br = bracket(unit(xs[i]), unit(xs[j]))
                    rest = [unit(x) for p, x in enumerate(xs) if p not in (i, j)]
                    val = evaluate_on_vectors(c, n, [br] + rest)
                    for m in range(DIM):
                        total[m] += (-1) ** (i + j) * val[m]
            M[row, col] = total[kk]
    return M


def cohomology_dims(top=3):
    mats = {n: coboundary_matrix(n) for n in range(top + 1)}
    dims = {}
    for n in range(top + 1):
        dim_c = len(cochain_basis(n))
        rank_out = mats[n].rank() if mats[n].shape[0] else 0
        rank_in = mats[n - 1].rank() if n > 0 else 0
        dims[n] = dim_c - rank_out - rank_in
    return dims


if __name__ == "__main__":
    for n, d in cohomology_dims().items():
        print(f"H^{n}(sl2, sl2) = {d}")
