"""Maurer-Cartan and gauge functors, obstruction lifting, contractions,
the Kuranishi recursion and the semi-universal sub-dgla.

Elements of ``g ⊗ A`` are sparse dicts {(g index, A index): Fraction}.
The tensor dgla uses ``[x⊗a, y⊗b] = (-1)^{|a||y|} [x,y]⊗ab`` and
``d(x⊗a) = dx⊗a + (-1)^{|x|} x⊗da``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Mapping

from .artin import ArtinAlgebra, SmallExtension, dual_numbers, monomials_up_to
from .dgla import (Dgla, DglaMorphism, _require_valid, add_into, cohomology,
                   format_combination, induced_map_on_H)
from .errors import NotConcentrated, NotMC, NotSmallExtension
from .linalg import (Matrix, Q, Subspace, complement, format_rational, image_basis, inverse,
                     kernel_basis, rank, solve)

Splitter = Callable[[int, Subspace, Subspace], Subspace]


def _canonical(n: int, U: Subspace, V: Subspace) -> Subspace:
    return complement(U, V)


# ------------------------------------------------------------ tensor dgla
def tensor_bracket(g: Dgla, A: ArtinAlgebra, X: Mapping, Y: Mapping) -> dict:
    out: dict = {}
    for (i, a), c1 in X.items():
        for (j, b), c2 in Y.items():
            br = g.bracket.get((i, j))
            if not br:
                continue
            ab = A.times(a, b)
            if not ab:
                continue
            s = -1 if (A.degrees[a] * g.degrees[j]) % 2 else 1
            for k, x in br.items():
                for l, y in ab.items():
                    add_into(out, {(k, l): s * c1 * c2 * x * y})
    return out


def tensor_d(g: Dgla, A: ArtinAlgebra, X: Mapping) -> dict:
    out: dict = {}
    for (i, a), c in X.items():
        for k, x in g.d.get(i, {}).items():
            add_into(out, {(k, a): c * x})
        s = -1 if g.degrees[i] % 2 else 1
        for l, y in A.d.get(a, {}).items():
            add_into(out, {(i, l): s * c * y})
    return out


def tensor_degree(g: Dgla, A: ArtinAlgebra, key) -> int:
    return g.degrees[key[0]] + A.degrees[key[1]]


def format_tensor(g: Dgla, A: ArtinAlgebra, X: Mapping) -> str:
    keys = sorted(X, key=lambda k: (k[1], k[0]))
    labels = {k: (g.labels[k[0]] if A.labels[k[1]] == "1" else f"{A.labels[k[1]]}·{g.labels[k[0]]}")
              for k in keys}
    return format_combination({labels[k]: X[k] for k in keys}, order=[labels[k] for k in keys])


@dataclass(frozen=True, eq=False)
class MCElement:
    dgla: Dgla
    algebra: ArtinAlgebra
    coeffs: Mapping  # (g index, A index) -> Fraction, A index in the maximal ideal

    @classmethod
    def from_labels(cls, g: Dgla, A: ArtinAlgebra, terms: Mapping) -> MCElement:
        """``terms``: {g label: {A label: coeff}}."""
        out = {}
        for gl, inner in terms.items():
            for al, c in inner.items():
                if Q(c):
                    out[(g.index(gl), A.index(al))] = Q(c)
        return cls(g, A, out)

    def __post_init__(self):
        for (i, a), c in self.coeffs.items():
            if c and a == 0:
                raise ValueError("coefficients must lie in the maximal ideal")
            if c and tensor_degree(self.dgla, self.algebra, (i, a)) != 1:
                raise ValueError(f"{self.dgla.labels[i]}⊗{self.algebra.labels[a]} is not of degree 1")

    def __str__(self):
        return format_tensor(self.dgla, self.algebra, self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, MCElement) and other.dgla is self.dgla and other.algebra is self.algebra
                and {k: v for k, v in self.coeffs.items() if v} == {k: v for k, v in other.coeffs.items() if v})


def mc_residual(g: Dgla, A: ArtinAlgebra, X: Mapping) -> dict:
    res = tensor_d(g, A, X)
    add_into(res, tensor_bracket(g, A, X, X), Fraction(1, 2))
    return res


def mc_check(x: MCElement) -> dict:
    """``dx + ½[x,x]``; zero iff x satisfies the Maurer-Cartan equation."""
    return mc_residual(x.dgla, x.algebra, x.coeffs)


def is_mc(x: MCElement) -> bool:
    return not mc_check(x)


def gauge_act(a: Mapping, x: MCElement) -> MCElement:
    """``e^a·x = Σ ad_a^n(x)/n! - Σ ad_a^n(da)/(n+1)!`` (finite by nilpotency)."""
    g, A = x.dgla, x.algebra
    for key, c in a.items():
        if c and (key[1] == 0 or tensor_degree(g, A, key) != 0):
            raise ValueError("gauge parameter must be of degree 0 with coefficients in m_A")
    out = dict(x.coeffs)
    term = dict(x.coeffs)
    n = 0
    while term:
        n += 1
        term = {k: v / n for k, v in tensor_bracket(g, A, a, term).items()}
        add_into(out, term)
    term = tensor_d(g, A, a)
    n = 0
    while term:
        add_into(out, term, Fraction(-1, factorial(n + 1)))
        term = tensor_bracket(g, A, a, term)
        n += 1
    return MCElement(g, A, out)


# ---------------------------------------------------------------- tangent
@dataclass(frozen=True)
class TangentSpace:
    dim: int
    representatives: tuple   # vectors in g^1
    labels: tuple            # human-readable representatives


def tangent_space(g: Dgla) -> TangentSpace:
    """First-order MC elements modulo first-order gauge, over k[ε]/(ε²)."""
    A = dual_numbers()
    one, two = g.indices(1), g.indices(2)
    cols = []
    for i in one:
        res = mc_residual(g, A, {(i, 1): Fraction(1)})
        cols.append([res.get((k, 1), Fraction(0)) for k in two])
    n1 = len(one)
    Z = kernel_basis(Matrix.from_columns(cols, len(two))) if n1 else Subspace.zero(0)
    moves = []
    for i in g.indices(0):
        y = gauge_act({(i, 1): Fraction(1)}, MCElement(g, A, {}))
        moves.append([y.coeffs.get((k, 1), Fraction(0)) for k in one])
    B = Subspace.span(moves, n1)
    T = complement(B, Z)
    labels = tuple(g.format_element(g.from_dense(v, 1)) for v in T.basis)
    return TangentSpace(T.dim, T.basis, labels)


# ---------------------------------------------------------- obstructions
@dataclass(frozen=True, eq=False)
class LiftResult:
    dgla: Dgla
    lift: MCElement | None
    obstruction: Mapping         # I basis index -> coordinates in H^(2-|e|)
    obstruction_cocycle: Mapping  # the cocycle ob in g ⊗ I
    extension: SmallExtension

    @property
    def obstructed(self) -> bool:
        return any(any(v) for v in self.obstruction.values())

    def class_element(self) -> dict:
        """The obstruction class written with the canonical representatives."""
        g, A = self.dgla, self.extension.source
        out: dict = {}
        for j, coords in self.obstruction.items():
            H = cohomology(g, 2 - A.degrees[j])
            for c, rep in zip(coords, H.representatives):
                for i, x in g.from_dense(rep, H.degree).items():
                    add_into(out, {(i, j): c * x})
        return out


def obstruction_lift(g: Dgla, ext: SmallExtension, x: MCElement, shift: Mapping | None = None) -> LiftResult:
    """Lift an MC element along ``A → A/I`` or return its obstruction class.

    ``shift`` (an element of ``g ⊗ I`` of degree 1) changes the
    set-theoretic lift; the class does not depend on it.
    """
    A, B = ext.source, ext.quotient
    if x.algebra is not B and x.algebra.labels != B.labels:
        raise NotSmallExtension("element does not live over the quotient algebra")
    if mc_check(x):
        raise NotMC("element does not satisfy the Maurer-Cartan equation")
    X = {(i, ext.keep[a]): c for (i, a), c in x.coeffs.items() if c}
    if shift:
        for key in shift:
            if key[1] not in ext.ideal:
                raise ValueError("shift must lie in g ⊗ I")
        add_into(X, shift)
    ob = mc_residual(g, A, X)
    if any(a not in ext.ideal for _, a in ob):
        raise AssertionError("residual of a lift must lie in g ⊗ I")
    classes, correction, solvable = {}, {}, True
    for j in ext.ideal:
        n = 2 - A.degrees[j]
        vec = g.to_dense({i: c for (i, a), c in ob.items() if a == j}, n)
        H = cohomology(g, n)
        coords = H.coordinates(vec)
        classes[j] = coords
        if any(coords):
            solvable = False
            continue
        if any(vec):
            y = solve(g.d_matrix(n - 1), tuple(-v for v in vec))
            for i, c in g.from_dense(y, n - 1).items():
                correction[(i, j)] = c
    if not solvable:
        return LiftResult(g, None, classes, ob, ext)
    add_into(X, correction)
    lifted = MCElement(g, A, X)
    assert not mc_check(lifted)
    return LiftResult(g, lifted, classes, ob, ext)


# ------------------------------------------------------------- contraction
@dataclass(frozen=True, eq=False)
class HomotopyData:
    dgla: Dgla
    H: Mapping   # degree -> Subspace (harmonic lift inside Z)
    B: Mapping
    C: Mapping   # complement of Z
    pi: Mapping  # degree -> Matrix on g^n
    h: Mapping   # degree -> Matrix g^n -> g^(n-1)

    def apply_h(self, x: Mapping, n: int) -> dict:
        if n not in self.h:
            return {}
        return self.dgla.from_dense(self.h[n] @ self.dgla.to_dense(x, n), n - 1)

    def apply_pi(self, x: Mapping, n: int) -> dict:
        if n not in self.pi:
            return {}
        return self.dgla.from_dense(self.pi[n] @ self.dgla.to_dense(x, n), n)

    def check(self) -> list[str]:
        """Side conditions: dh + hd = id - π, h² = 0, hπ = πh = 0."""
        g = self.dgla
        bad = []
        for n in g.support:
            dim = g.dim_in(n)
            I = Matrix.identity(dim)
            dh = g.d_matrix(n - 1) @ self.h[n] if g.dim_in(n - 1) else Matrix.zeros(dim, dim)
            hd = self.h[n + 1] @ g.d_matrix(n) if g.dim_in(n + 1) else Matrix.zeros(dim, dim)
            if not (dh + hd - (I - self.pi[n])).is_zero():
                bad.append(f"dh + hd ≠ id - π in degree {n}")
            if g.dim_in(n - 1) and g.dim_in(n - 2) and not (self.h[n - 1] @ self.h[n]).is_zero():
                bad.append(f"h² ≠ 0 in degree {n}")
            if g.dim_in(n - 1) and not (self.h[n] @ self.pi[n]).is_zero():
                bad.append(f"hπ ≠ 0 in degree {n}")
            if g.dim_in(n - 1) and not (self.pi[n - 1] @ self.h[n]).is_zero():
                bad.append(f"πh ≠ 0 in degree {n}")
            if not (self.pi[n] @ self.pi[n] - self.pi[n]).is_zero():
                bad.append(f"π² ≠ π in degree {n}")
        return bad


def homotopy_data(g: Dgla, splitter: Splitter = _canonical) -> HomotopyData:
    """Splittings ``g^n = H ⊕ B ⊕ C`` and the contraction h = (d|C)^{-1} on B."""
    Hs, Bs, Cs, pis, P_inv = {}, {}, {}, {}, {}
    for n in g.support:
        dim = g.dim_in(n)
        Z = kernel_basis(g.d_matrix(n))
        B = image_basis(g.d_matrix(n - 1)) if g.dim_in(n - 1) else Subspace.zero(dim)
        H = splitter(n, B, Z)
        C = splitter(n, Z, Subspace.full(dim))
        Hs[n], Bs[n], Cs[n] = H, B, C
        cols = list(H.basis) + list(B.basis) + list(C.basis)
        P = Matrix.from_columns(cols, dim)
        Pi = inverse(P)
        P_inv[n] = Pi
        diag = Matrix.from_rows([[int(i == j and i < H.dim) for j in range(dim)] for i in range(dim)], dim)
        pis[n] = P @ diag @ Pi
    hs = {}
    for n in g.support:
        dim = g.dim_in(n)
        prev = g.dim_in(n - 1)
        if not prev:
            hs[n] = Matrix.zeros(0, dim)
            continue
        B, C = Bs[n], Cs[n - 1]
        if not B.dim:
            hs[n] = Matrix.zeros(prev, dim)
            continue
        dC = [B.coordinates(g.d_matrix(n - 1) @ c) for c in C.basis]
        M = Matrix.from_columns(dC, B.dim)
        Minv = inverse(M)
        # rows of P^{-1} belonging to B
        start = Hs[n].dim
        beta = Matrix.from_rows([P_inv[n].row(start + k) for k in range(B.dim)], dim)
        Cmat = Matrix.from_columns(list(C.basis), prev)
        hs[n] = Cmat @ Minv @ beta
    return HomotopyData(g, Hs, Bs, Cs, pis, hs)


# --------------------------------------------------------------- Kuranishi
Poly = dict  # exponent tuple -> Fraction


def format_monomial(exps, names) -> str:
    parts = []
    for e, v in zip(exps, names):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "·".join(parts) if parts else "1"


def _mono_key(exps):
    return (-sum(exps), tuple(-e for e in exps))


def format_poly(p: Mapping, names) -> str:
    terms = sorted((e for e, c in p.items() if c), key=_mono_key)
    out = ""
    for k, e in enumerate(terms):
        c = p[e]
        mono = format_monomial(e, names)
        mag = abs(c)
        if mono == "1":
            body = format_rational(mag)
        else:
            body = mono if mag == 1 else f"{format_rational(mag)}·{mono}"
        if k == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out or "0"


def _vector_label(g: Dgla, vec, n: int) -> str:
    x = g.from_dense(vec, n)
    if len(x) == 1 and next(iter(x.values())) == 1:
        return g.labels[next(iter(x))]
    return f"({g.format_element(x)})"


@dataclass(frozen=True, eq=False)
class KuranishiResult:
    dgla: Dgla
    order: int
    variables: tuple           # names ξ1..ξm
    h1_basis: tuple            # vectors in g^1
    h2_basis: tuple            # vectors in g^2
    solution: Mapping          # exps -> element of g^1
    obstruction: tuple         # one polynomial per H² basis vector
    relations: tuple           # echelon basis of the span of the obstruction components
    base_basis: tuple          # standard monomials of the truncated base
    top_in_ideal: bool         # (ξ)^(N+1) ⊆ (Ob) as computed up to order N+1
    homotopy: HomotopyData = field(repr=False, default=None)

    @property
    def base_dim(self) -> int:
        return len(self.base_basis)

    @property
    def base(self) -> str:
        names = self.variables
        if not names:
            return "k"
        rels = [format_poly(r, names) for r in self.relations]
        if not self.top_in_ideal:
            N1 = self.order + 1
            rels.append(f"{names[0]}^{N1}" if len(names) == 1 else f"({','.join(names)})^{N1}")
        return f"k[{','.join(names)}]/({', '.join(rels)})"

    def obstruction_string(self) -> str:
        g = self.dgla
        parts = []
        for poly, rep in zip(self.obstruction, self.h2_basis):
            if not any(poly.values()):
                continue
            s = format_poly(poly, self.variables)
            if len([c for c in poly.values() if c]) > 1:
                s = f"({s})"
            parts.append(f"{s}·{_vector_label(g, rep, 2)}")
        return " + ".join(parts) if parts else "0"

    def solution_string(self) -> str:
        g = self.dgla
        by_basis: dict = {}
        for e, x in self.solution.items():
            for i, c in x.items():
                by_basis.setdefault(i, {})[e] = c
        parts = []
        for i in sorted(by_basis):
            poly = by_basis[i]
            s = format_poly(poly, self.variables)
            if len(poly) > 1:
                s = f"({s})"
            parts.append(f"{s}·{g.labels[i]}")
        return " + ".join(parts) if parts else "0"

    def obstruction_element(self) -> dict:
        """Ob(ξ) as {exps: element of g^2}."""
        out: dict = {}
        for poly, rep in zip(self.obstruction, self.h2_basis):
            vec = self.dgla.from_dense(rep, 2)
            for e, c in poly.items():
                add_into(out.setdefault(e, {}), vec, c)
        return {e: v for e, v in out.items() if v}


def _add_poly_vec(acc: dict, e, vec: Mapping, scale=1):
    cur = acc.setdefault(e, {})
    add_into(cur, vec, scale)
    if not cur:
        del acc[e]


def _bracket_series(g: Dgla, X: Mapping, Y: Mapping, N: int) -> dict:
    out: dict = {}
    for e1, x in X.items():
        for e2, y in Y.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            if sum(e) > N:
                continue
            b = g.br(x, y)
            if b:
                _add_poly_vec(out, e, b)
    return out


def kuranishi(g: Dgla, N: int, homotopy: HomotopyData | None = None) -> KuranishiResult:
    """Solve ``x = ξ - ½ h[x,x]`` to order N; ``Ob = ½ π[x,x]``."""
    if N < 1:
        raise ValueError("order must be at least 1")
    hd = homotopy or homotopy_data(g)
    H1 = hd.H.get(1, Subspace.zero(g.dim_in(1)))
    H2 = hd.H.get(2, Subspace.zero(g.dim_in(2)))
    m = H1.dim
    names = tuple(f"ξ{i + 1}" for i in range(m))
    orders: dict[int, dict] = {1: {}}
    for i, e in enumerate(H1.basis):
        exps = tuple(int(k == i) for k in range(m))
        orders[1][exps] = g.from_dense(e, 1)
    ob_vecs: dict = {}
    for k in range(2, N + 1):
        R: dict = {}
        for i in range(1, k):
            part = _bracket_series(g, orders[i], orders[k - i], N)
            for e, v in part.items():
                _add_poly_vec(R, e, v)
        orders[k] = {}
        for e, v in R.items():
            hv = hd.apply_h(v, 2)
            if hv:
                orders[k][e] = {i: -c / 2 for i, c in hv.items()}
            pv = hd.apply_pi(v, 2)
            if pv:
                ob_vecs[e] = {i: c / 2 for i, c in pv.items()}
    solution: dict = {}
    for k in range(1, N + 1):
        for e, v in orders[k].items():
            solution[e] = v
    obstruction = []
    coords = {e: H2.coordinates(g.to_dense(v, 2)) for e, v in ob_vecs.items()}
    for j in range(H2.dim):
        obstruction.append({e: c[j] for e, c in coords.items() if c[j]})
    relations, base_basis, top = _base_ring(obstruction, m, N)
    return KuranishiResult(g, N, names, H1.basis, H2.basis, solution, tuple(obstruction),
                           relations, base_basis, top, hd)


def _ideal_span(gens, m, N):
    monos = monomials_up_to(m, N)
    order = sorted(monos, key=_mono_key)      # leading = highest degree first
    pos = {e: i for i, e in enumerate(order)}
    rows = []
    for f in gens:
        for a in monos:
            row = [Fraction(0)] * len(order)
            for e, c in f.items():
                s = tuple(x + y for x, y in zip(a, e))
                if sum(s) <= N:
                    row[pos[s]] += c
            if any(row):
                rows.append(row)
    S = Subspace.span(rows, len(order))
    return S, order


def _base_ring(obstruction, m, N):
    if m == 0:
        return (), ((),), True
    gens = [p for p in obstruction if p]
    # echelon basis of the span of the components, highest monomials leading
    order = sorted(monomials_up_to(m, N), key=_mono_key)
    pos = {e: i for i, e in enumerate(order)}
    vecs = []
    for p in gens:
        v = [Fraction(0)] * len(order)
        for e, c in p.items():
            v[pos[e]] += c
        vecs.append(v)
    span = Subspace.span(vecs, len(order)) if vecs else Subspace.zero(len(order))
    relations = tuple({order[i]: c for i, c in enumerate(b) if c} for b in span.basis)
    J, order = _ideal_span(list(relations), m, N)
    piv = set(J.pivots)
    base_basis = tuple(sorted((order[i] for i in range(len(order)) if i not in piv), key=lambda e: (sum(e), [-x for x in e])))
    J1, order1 = _ideal_span(list(relations), m, N + 1)
    top = all(J1.contains([int(e == t) for e in order1])
              for t in order1 if sum(t) == N + 1)
    return relations, base_basis, top


def kuranishi_residual(res: KuranishiResult) -> dict:
    """``d x + ½[x,x] - Ob`` truncated at order N, as {exps: element of g^2}."""
    g, N = res.dgla, res.order
    out: dict = {}
    for e, v in res.solution.items():
        dv = g.apply_d(v)
        if dv:
            _add_poly_vec(out, e, dv)
    for e, v in _bracket_series(g, res.solution, res.solution, N).items():
        _add_poly_vec(out, e, v, Fraction(1, 2))
    for e, v in res.obstruction_element().items():
        _add_poly_vec(out, e, v, -1)
    return out


# ----------------------------------------------------- semi-universal model
@dataclass(frozen=True)
class SplittingData:
    Z1: Subspace
    B1: Subspace
    H1: Subspace
    E1: Subspace


@dataclass(frozen=True, eq=False)
class SemiUniversalModel:
    k: Dgla
    inclusion: DglaMorphism
    splitting: SplittingData
    k1_vectors: tuple  # the chosen basis of 𝔨¹ inside g¹


def negative_cohomology(g: Dgla) -> dict:
    return {n: cohomology(g, n) for n in g.support if n < 0 and cohomology(g, n).dim}


def _is_coordinate(v) -> int | None:
    nz = [i for i, c in enumerate(v) if c]
    if len(nz) == 1 and v[nz[0]] == 1:
        return nz[0]
    return None


def semi_universal_model(g: Dgla, splitter: Splitter = _canonical) -> SemiUniversalModel:
    """The sub-dgla 𝔨 with 𝔨^{≤0} = 0, 𝔨¹ = E¹ ⊕ H¹ and 𝔨^n = g^n for n > 1."""
    neg = negative_cohomology(g)
    if neg:
        raise NotConcentrated(f"H^{min(neg)} is nonzero")
    n1 = g.dim_in(1)
    Z1 = kernel_basis(g.d_matrix(1))
    B1 = image_basis(g.d_matrix(0)) if g.dim_in(0) else Subspace.zero(n1)
    H1 = splitter(1, B1, Z1)
    E1 = splitter(1, Z1, Subspace.full(n1))
    one = g.indices(1)
    vectors = list(E1.basis) + list(H1.basis)
    labels, degrees, images = [], [], {}
    taken = set(g.labels)
    for tag, space in (("e", E1), ("h", H1)):
        for k, v in enumerate(space.basis, start=1):
            c = _is_coordinate(v)
            lab = g.labels[one[c]] if c is not None else f"{tag}1_{k}"
            if c is None and lab in taken:
                lab = f"{tag}1_{k}'"
            labels.append(lab)
            degrees.append(1)
    high = [i for i in range(g.dim) if g.degrees[i] >= 2]
    for i in high:
        labels.append(g.labels[i])
        degrees.append(g.degrees[i])
    # images in g of the 𝔨 basis
    for idx, v in enumerate(vectors):
        images[idx] = g.from_dense(v, 1)
    for off, i in enumerate(high):
        images[len(vectors) + off] = {i: Fraction(1)}
    back = {i: len(vectors) + off for off, i in enumerate(high)}

    def pull(x: Mapping) -> dict:
        # x lies in g^{>=2}; re-index into 𝔨
        return {back[i]: c for i, c in x.items() if c}

    d, br = {}, {}
    for a in range(len(labels)):
        dx = g.apply_d(images[a])
        if dx:
            d[a] = pull(dx)
        for b in range(len(labels)):
            y = g.br(images[a], images[b])
            if y:
                br[(a, b)] = pull(y)
    k = Dgla(tuple(labels), tuple(degrees), d, br)
    inc = DglaMorphism(k, g, {a: v for a, v in images.items() if v})
    return SemiUniversalModel(k, inc, SplittingData(Z1, B1, H1, E1), tuple(vectors))


# ------------------------------------------------------- étale / prorep
def _window(degs, window, lo_floor=None):
    if window is not None:
        return range(window[0], window[1] + 1)
    if not degs:
        return range(0)
    lo, hi = min(degs) - 1, max(degs) + 1
    return range(lo, hi + 1)


def etale_check(f: DglaMorphism, window: tuple[int, int] | None = None) -> bool:
    """H^i(f) invertible for every i >= 1 in the window."""
    _require_valid(f)
    degs = set(f.source.support) | set(f.target.support)
    for n in _window(degs, window):
        if n < 1:
            continue
        M = induced_map_on_H(f, n, check=False)
        if M.rows != M.cols or rank(M) != M.rows:
            return False
    return True


def low_cohomology(g: Dgla, window: tuple[int, int] | None = None) -> dict:
    """Nonzero H^n for n <= 0: {n: list of representative strings}."""
    out = {}
    for n in _window(g.support, window):
        if n > 0:
            continue
        H = cohomology(g, n)
        if H.dim:
            out[n] = [g.format_element(g.from_dense(v, n)) for v in H.representatives]
    return out


def prorep_check(g: Dgla, window: tuple[int, int] | None = None) -> bool:
    return not low_cohomology(g, window)
