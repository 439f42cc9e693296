"""Group actions on dglas, Reynolds averaging and equivariant splittings.

Two kinds of linearly reductive symmetry are supported: finite groups given
by generator matrices per degree (averaged over the enumerated image), and
split tori given by integer weight vectors on basis elements.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .deformation import (KuranishiResult, SemiUniversalModel, homotopy_data,
                          kuranishi, semi_universal_model)
from .dgla import Dgla, Violation, add_into
from .errors import InvalidAction, NotAveragable, NotStable
from .linalg import Matrix, Subspace, complement, inverse, kernel_basis

MAX_GROUP_ORDER = 5000


@dataclass(frozen=True, eq=False)
class GroupAction:
    """``kind`` is ``"finite"`` or ``"torus"``.

    finite: ``generators`` names, ``matrices[name][degree]`` (a missing degree
    means the identity), ``relations`` as words of generator names.
    torus: ``rank`` and ``weights[label]`` integer vectors.
    """
    kind: str
    generators: tuple = ()
    matrices: Mapping = field(default_factory=dict)
    relations: tuple = ()
    rank: int = 0
    weights: Mapping = field(default_factory=dict)

    @classmethod
    def finite(cls, generators: Mapping, relations=()) -> GroupAction:
        gens = tuple(generators)
        mats = {s: {int(n): M if isinstance(M, Matrix) else Matrix.from_rows(M)
                    for n, M in per.items()} for s, per in generators.items()}
        return cls("finite", gens, mats, tuple(tuple(r) for r in relations))

    @classmethod
    def torus(cls, rank: int, weights: Mapping) -> GroupAction:
        return cls("torus", rank=rank, weights={l: tuple(w) for l, w in weights.items()})

    @classmethod
    def trivial(cls) -> GroupAction:
        return cls("finite")

    def matrix(self, s: str, g: Dgla, n: int) -> Matrix:
        M = self.matrices[s].get(n)
        return M if M is not None else Matrix.identity(g.dim_in(n))

    def weight(self, label: str) -> tuple:
        return self.weights.get(label, (0,) * self.rank)

    def on(self, g: Dgla, n: int) -> ComponentAction:
        if self.kind == "torus":
            return ComponentAction("torus", g.dim_in(n),
                                   weights=tuple(self.weight(g.labels[i]) for i in g.indices(n)))
        return ComponentAction("finite", g.dim_in(n),
                               generators=tuple(self.matrix(s, g, n) for s in self.generators))


@dataclass(frozen=True, eq=False)
class ComponentAction:
    """The action restricted to one graded component."""
    kind: str
    dim: int
    generators: tuple = ()   # finite: one Matrix per group generator
    weights: tuple = ()      # torus: one weight vector per basis element

    def elements(self) -> list[Matrix]:
        """All elements of the image group (closure of the generators)."""
        I = Matrix.identity(self.dim)
        seen = {I.entries: I}
        frontier = [I]
        while frontier:
            nxt = []
            for M in frontier:
                for S in self.generators:
                    P = S @ M
                    if P.entries not in seen:
                        seen[P.entries] = P
                        nxt.append(P)
                        if len(seen) > MAX_GROUP_ORDER:
                            raise NotAveragable("group image is too large or infinite")
            frontier = nxt
        return sorted(seen.values(), key=lambda M: M.entries)

    def is_stable(self, U: Subspace) -> bool:
        if self.kind == "torus":
            return all(weight_component(U, self.weights, w) + _others(U, self.weights, w) == U
                       for w in set(self.weights))
        return all(all(U.contains(S @ b) for b in U.basis) for S in self.generators)


def weight_component(U: Subspace, weights, w) -> Subspace:
    """U ∩ (span of basis vectors of weight w)."""
    n = U.ambient_dim
    coord = Subspace.span([[int(i == j) for i in range(n)] for j in range(n) if weights[j] == w], n)
    return U.intersection(coord)


def _others(U, weights, w):
    out = Subspace.zero(U.ambient_dim)
    for v in set(weights):
        if v != w:
            out = out + weight_component(U, weights, v)
    return out


def reynolds(act: ComponentAction) -> Matrix:
    """Projector onto the invariants: group average, or weight-0 projection."""
    n = act.dim
    if act.kind == "torus":
        return Matrix.from_rows([[int(i == j and not any(act.weights[i])) for j in range(n)]
                                 for i in range(n)], n)
    if act.kind != "finite":
        raise NotAveragable(f"unknown group kind {act.kind!r}")
    els = act.elements()
    total = Matrix.zeros(n, n)
    for M in els:
        total = total + M
    return total.scale(Fraction(1, len(els)))


def equivariant_complement(U: Subspace, V: Subspace, act: ComponentAction) -> Subspace:
    """A G-stable W with V = U ⊕ W."""
    if not U.is_subspace_of(V):
        complement(U, V)  # raises NotASubspace
    for S, name in ((U, "U"), (V, "V")):
        if not act.is_stable(S):
            raise NotStable(f"{name} is not stable under the action")
    n = U.ambient_dim
    if act.kind == "torus":
        basis = []
        for w in sorted(set(act.weights)):
            Uw = weight_component(U, act.weights, w)
            Vw = weight_component(V, act.weights, w)
            basis += list(complement(Uw, Vw).basis)
        return Subspace.span(basis, n)
    # projector onto U along the canonical complement in the whole space
    W0 = complement(U, Subspace.full(n))
    cols = list(U.basis) + list(W0.basis)
    if not cols:
        return Subspace.zero(n)
    P = Matrix.from_columns(cols, n)
    diag = Matrix.from_rows([[int(i == j and i < U.dim) for j in range(n)] for i in range(n)], n)
    p = P @ diag @ inverse(P)
    els = act.elements()
    avg = Matrix.zeros(n, n)
    for M in els:
        avg = avg + M @ p @ inverse(M)
    avg = avg.scale(Fraction(1, len(els)))
    return kernel_basis(avg).intersection(V)


# ------------------------------------------------------------- validation
def _word(act: GroupAction, g: Dgla, n: int, word) -> Matrix:
    M = Matrix.identity(g.dim_in(n))
    for s in word:
        M = M @ act.matrix(s, g, n)
    return M


def validate_action(g: Dgla, act: GroupAction) -> list[Violation]:
    report: list[Violation] = []
    lab = g.labels
    if act.kind == "torus":
        for l in act.weights:
            if l not in g._index:
                report.append(Violation("UnknownBasis", (l,)))
            elif len(act.weights[l]) != act.rank:
                report.append(Violation("WeightRank", (l,)))
        w = [act.weight(l) for l in lab]
        add = lambda a, b: tuple(x + y for x, y in zip(a, b))
        for i, img in g.d.items():
            for j, c in img.items():
                if c and w[j] != w[i]:
                    report.append(Violation("DifferentialViolation", (lab[i],), f"term {lab[j]} has another weight"))
                    break
        for (i, j), img in sorted(g.bracket.items()):
            for k, c in img.items():
                if c and w[k] != add(w[i], w[j]):
                    report.append(Violation("BracketViolation", (lab[i], lab[j]), f"term {lab[k]} has another weight"))
                    break
        return report
    if act.kind != "finite":
        return [Violation("UnknownKind", (act.kind,))]
    for s in act.generators:
        for n, M in act.matrices[s].items():
            if (M.rows, M.cols) != (g.dim_in(n), g.dim_in(n)):
                report.append(Violation("ShapeViolation", (s, str(n))))
                return report
        for n in g.support:
            try:
                inverse(act.matrix(s, g, n))
            except ZeroDivisionError:
                report.append(Violation("NotInvertible", (s, str(n))))
    for word in act.relations:
        for n in g.support:
            if _word(act, g, n, word) != Matrix.identity(g.dim_in(n)):
                report.append(Violation("RelationViolation", ("".join(word), str(n))))
                break
    for s in act.generators:
        rho = {n: act.matrix(s, g, n) for n in g.support}

        def apply(x):
            out: dict = {}
            for i, c in x.items():
                n = g.degrees[i]
                col = rho[n].column(g.position(i))
                add_into(out, g.from_dense(col, n), c)
            return out

        imgs = [apply({i: Fraction(1)}) for i in range(g.dim)]
        for i in range(g.dim):
            res = add_into(apply(g.d.get(i, {})), g.apply_d(imgs[i]), -1)
            if res:
                report.append(Violation("DifferentialViolation", (s, lab[i]), g.format_element(res)))
        for i in range(g.dim):
            for j in range(g.dim):
                res = add_into(apply(g.bracket.get((i, j), {})), g.br(imgs[i], imgs[j]), -1)
                if res:
                    report.append(Violation("BracketViolation", (s, lab[i], lab[j]), g.format_element(res)))
    return report


def _require(g: Dgla, act: GroupAction):
    report = validate_action(g, act)
    if report:
        raise InvalidAction("; ".join(str(v) for v in report[:5]))


def _splitter(g: Dgla, act: GroupAction):
    def split(n: int, U: Subspace, V: Subspace) -> Subspace:
        return equivariant_complement(U, V, act.on(g, n))
    return split


# -------------------------------------------------------- semi-universal
@dataclass(frozen=True, eq=False)
class EquivariantModel:
    model: SemiUniversalModel
    action: GroupAction       # induced action on 𝔨
    equivariant: bool         # inclusion commutes with every generator


def _restrict(act: GroupAction, g: Dgla, model: SemiUniversalModel) -> GroupAction:
    k = model.k
    if act.kind == "torus":
        weights = {}
        for a in range(k.dim):
            img = model.inclusion.images.get(a, {})
            ws = {act.weight(g.labels[i]) for i in img}
            if len(ws) > 1:
                raise NotStable("𝔨 basis vector is not a weight vector")
            weights[k.labels[a]] = ws.pop() if ws else (0,) * act.rank
        return GroupAction.torus(act.rank, weights)
    K1 = Subspace.span(model.k1_vectors, g.dim_in(1)) if model.k1_vectors else Subspace.zero(g.dim_in(1))
    mats = {}
    for s in act.generators:
        per = {n: M for n, M in act.matrices[s].items() if n >= 2}
        rho = act.matrix(s, g, 1)
        cols = []
        basis = list(model.k1_vectors)
        P = Matrix.from_columns(basis, g.dim_in(1)) if basis else None
        for v in basis:
            w = rho @ v
            if not K1.contains(w):
                raise NotStable("𝔨¹ is not stable under the action")
            cols.append(solve_in(P, w))
        if basis:
            per[1] = Matrix.from_columns(cols, len(basis))
        mats[s] = per
    return GroupAction("finite", act.generators, mats, act.relations)


def solve_in(P: Matrix, w) -> tuple:
    from .linalg import solve
    x = solve(P, w)
    if x is None:
        raise NotStable("vector outside the span")
    return x


def _inclusion_equivariant(g: Dgla, act: GroupAction, k: Dgla, kact: GroupAction, inc) -> bool:
    if act.kind == "torus":
        return all(kact.weight(k.labels[a]) == act.weight(g.labels[i])
                   for a, img in inc.images.items() for i in img)
    for s in act.generators:
        for n in k.support:
            lhs = inc.block(n) @ kact.matrix(s, k, n)
            rhs = act.matrix(s, g, n) @ inc.block(n)
            if lhs != rhs:
                return False
    return True


def equivariant_semi_universal(g: Dgla, act: GroupAction) -> EquivariantModel:
    _require(g, act)
    model = semi_universal_model(g, _splitter(g, act))
    kact = _restrict(act, g, model)
    return EquivariantModel(model, kact, _inclusion_equivariant(g, act, model.k, kact, model.inclusion))


# --------------------------------------------------------------- Kuranishi
@dataclass(frozen=True, eq=False)
class EquivariantKuranishi:
    result: KuranishiResult
    rho_h1: Mapping     # generator -> Matrix on H¹ coordinates (finite)
    rho_h2: Mapping
    checks: Mapping     # generator (or "weights") -> bool


def _coords_matrix(H: Subspace, rho: Matrix) -> Matrix:
    cols = [H.coordinates(rho @ v) for v in H.basis]
    if any(c is None for c in cols):
        raise NotStable("harmonic subspace is not stable")
    return Matrix.from_columns(cols, H.dim) if cols else Matrix.zeros(0, 0)


def substitute(poly: Mapping, M: Matrix, N: int) -> dict:
    """``p(Mξ)`` truncated at total degree N."""
    m = M.rows
    lin = [{tuple(int(k == j) for k in range(m)): M[i, j] for j in range(m) if M[i, j]} for i in range(m)]
    out: dict = {}
    for e, c in poly.items():
        term = {(0,) * m: Fraction(c)}
        for i, k in enumerate(e):
            for _ in range(k):
                nxt: dict = {}
                for a, x in term.items():
                    for b, y in lin[i].items():
                        s = tuple(p + q for p, q in zip(a, b))
                        if sum(s) <= N:
                            add_into(nxt, {s: x * y})
                term = nxt
        add_into(out, term)
    return out


def equivariant_kuranishi(g: Dgla, act: GroupAction, N: int) -> EquivariantKuranishi:
    _require(g, act)
    hd = homotopy_data(g, _splitter(g, act))
    res = kuranishi(g, N, hd)
    H1 = hd.H.get(1, Subspace.zero(g.dim_in(1)))
    H2 = hd.H.get(2, Subspace.zero(g.dim_in(2)))
    rho1, rho2, checks = {}, {}, {}
    if act.kind == "torus":
        w1 = [_vector_weight(g, act, v, 1) for v in H1.basis]
        w2 = [_vector_weight(g, act, v, 2) for v in H2.basis]
        ok = True
        for poly, wk in zip(res.obstruction, w2):
            for e in poly:
                tot = tuple(sum(k * w[r] for k, w in zip(e, w1)) for r in range(act.rank))
                ok &= tot == wk
        for e, x in res.solution.items():
            tot = tuple(sum(k * w[r] for k, w in zip(e, w1)) for r in range(act.rank))
            ok &= all(act.weight(g.labels[i]) == tot for i in x)
        checks["weights"] = ok
        return EquivariantKuranishi(res, {}, {}, checks)
    for s in act.generators:
        R1 = _coords_matrix(H1, act.matrix(s, g, 1))
        R2 = _coords_matrix(H2, act.matrix(s, g, 2))
        rho1[s], rho2[s] = R1, R2
        ok = True
        # Ob(R1 ξ) = R2 Ob(ξ)
        lhs = [substitute(p, R1, N) for p in res.obstruction]
        for j in range(H2.dim):
            rhs: dict = {}
            for k in range(H2.dim):
                if R2[j, k]:
                    add_into(rhs, res.obstruction[k], R2[j, k])
            ok &= not add_into(dict(lhs[j]), rhs, -1)
        # x(R1 ξ) = ρ x(ξ)
        rho = act.matrix(s, g, 1)
        by_basis: dict = {}
        for e, x in res.solution.items():
            for i, c in x.items():
                by_basis.setdefault(i, {})[e] = c
        one = g.indices(1)
        for pos, i in enumerate(one):
            lhs_p = substitute(by_basis.get(i, {}), R1, N)
            rhs_p: dict = {}
            for qpos, j in enumerate(one):
                if rho[pos, qpos]:
                    add_into(rhs_p, by_basis.get(j, {}), rho[pos, qpos])
            ok &= not add_into(lhs_p, rhs_p, -1)
        checks[s] = ok
    return EquivariantKuranishi(res, rho1, rho2, checks)


def _vector_weight(g: Dgla, act: GroupAction, v, n: int):
    ws = {act.weight(g.labels[i]) for i, c in zip(g.indices(n), v) if c}
    if len(ws) != 1:
        raise NotStable("representative is not a weight vector")
    return ws.pop()


def invariant_dims(g: Dgla, act: GroupAction, H: Subspace, n: int) -> int:
    """dim of the invariants of the action on a stable subspace of g^n."""
    R = reynolds(act.on(g, n))
    if not H.dim:
        return 0
    imgs = Subspace.span([R @ v for v in H.basis], H.ambient_dim)
    return imgs.dim
