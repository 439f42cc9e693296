"""Small dglas with known deformation behaviour, and group actions on them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .dgla import Dgla, add_into
from .equivariant import GroupAction
from .errors import WindowTooSmall
from .linalg import Matrix, Q


def abelian_dgla(basis: Iterable[tuple[str, int]], differential: Mapping | None = None) -> Dgla:
    """Zero bracket on a complex; ``differential`` is {label: {label: coeff}}."""
    return Dgla.build(basis, differential or {})


def obstruction_toy() -> Dgla:
    """x in degree 1, y in degree 2, d = 0 and [x,x] = 2y."""
    return Dgla.build([("x", 1), ("y", 2)], {}, {("x", "x"): {"y": 2}})


def split_toy() -> Dgla:
    """z, w in degree 0, x1, x2 in degree 1, dz = x1, zero bracket."""
    return Dgla.build([("z", 0), ("w", 0), ("x1", 1), ("x2", 1)], {"z": {"x1": 1}})


def permutation_toy() -> Dgla:
    """c | a1 a2 a3 | b s with d a_i = b and [a_i, a_i] = 2s."""
    basis = [("c", 0), ("a1", 1), ("a2", 1), ("a3", 1), ("b", 2), ("s", 2)]
    d = {f"a{i}": {"b": 1} for i in (1, 2, 3)}
    br = {(f"a{i}", f"a{i}"): {"s": 2} for i in (1, 2, 3)}
    return Dgla.build(basis, d, br)


# ---------------------------------------------------------- Lie algebras
@dataclass(frozen=True)
class LieAlgebraData:
    labels: tuple
    structure: Mapping  # (i, j) with i < j -> {k: c}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def bracket(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return dict(self.structure.get((i, j), {}))
        return {k: -c for k, c in self.structure.get((j, i), {}).items()}

    def br(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                add_into(out, self.bracket(i, j), a * b)
        return out

    def check(self) -> list[str]:
        bad = []
        n = self.dim
        for (i, j) in self.structure:
            if not i < j:
                bad.append(f"structure constants must be given for i < j, got ({i},{j})")
        for i, j, k in combinations(range(n), 3):
            res = self.br({i: 1}, self.bracket(j, k))
            add_into(res, self.br({j: 1}, self.bracket(k, i)))
            add_into(res, self.br({k: 1}, self.bracket(i, j)))
            if res:
                bad.append(f"Jacobi fails at ({self.labels[i]},{self.labels[j]},{self.labels[k]})")
        return bad


def lie_algebra(labels: Iterable[str], brackets: Mapping) -> LieAlgebraData:
    """``brackets``: {(a, b): {c: coeff}} on labels; orientation is normalised."""
    labels = tuple(labels)
    idx = {l: i for i, l in enumerate(labels)}
    struct = {}
    for (a, b), terms in brackets.items():
        i, j = idx[a], idx[b]
        vec = {idx[c]: Q(v) for c, v in terms.items() if Q(v)}
        if i > j:
            i, j, vec = j, i, {k: -v for k, v in vec.items()}
        if vec:
            struct[(i, j)] = vec
    return LieAlgebraData(labels, struct)


def sl2() -> LieAlgebraData:
    return lie_algebra(["e", "h", "f"], {("h", "e"): {"e": 2}, ("e", "f"): {"h": 1}, ("h", "f"): {"f": -2}})


def abelian_lie(n: int) -> LieAlgebraData:
    return LieAlgebraData(tuple(f"l{i + 1}" for i in range(n)), {})


def affine_line() -> LieAlgebraData:
    """The non-abelian 2-dimensional Lie algebra [a, b] = b."""
    return lie_algebra(["a", "b"], {("a", "b"): {"b": 1}})


def _alt_eval(f: Mapping, args: tuple) -> dict:
    """Value of an alternating map {sorted tuple: vector} on an argument tuple."""
    if len(set(args)) < len(args):
        return {}
    order = sorted(range(len(args)), key=lambda i: args[i])
    sign = _perm_sign(order)
    v = f.get(tuple(args[i] for i in order))
    return {k: sign * c for k, c in v.items()} if v else {}


def _perm_sign(p) -> int:
    p = list(p)
    s = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def _insert(f: Mapping, p: int, g: Mapping, q: int, n: int) -> dict:
    """``f ∘̄ g`` as {sorted tuple of arity p+q+1: vector}; f has arity p+1, g arity q+1."""
    out = {}
    arity = p + q + 1
    for T in combinations(range(n), arity):
        val: dict = {}
        for A in combinations(range(arity), q + 1):
            rest = [i for i in range(arity) if i not in A]
            sign = _perm_sign(list(A) + rest)
            inner = _alt_eval(g, tuple(T[i] for i in A))
            for k, c in inner.items():
                outv = _alt_eval(f, (k,) + tuple(T[i] for i in rest))
                add_into(val, outv, sign * c)
        if val:
            out[T] = val
    return out


def adjoint_dgla(L: LieAlgebraData, max_arity: int | None = None) -> Dgla:
    """``g^n = Hom(Λ^{n+1} L, L)`` for -1 <= n, n+1 <= max arity, with the
    Nijenhuis-Richardson bracket and ``d = [μ, -]``.
    """
    n = L.dim
    W = n if max_arity is None else max_arity
    if W < n:
        raise WindowTooSmall("arity truncation below dim L is not closed under the bracket")
    basis, elems, index = [], [], {}
    for ar in range(0, min(n, W) + 1):
        for S in combinations(range(n), ar):
            for k in range(n):
                lab = "∧".join(L.labels[i] for i in S) + "→" + L.labels[k]
                index[(S, k)] = len(elems)
                basis.append((lab, ar - 1))
                elems.append((ar - 1, {S: {k: Fraction(1)}}))

    def to_vec(f: Mapping) -> dict:
        out = {}
        for S, v in f.items():
            for k, c in v.items():
                if c:
                    out[index[(S, k)]] = c
        return out

    def nr(p, f, q, g) -> dict:
        a = _insert(f, p, g, q, n)
        b = _insert(g, q, f, p, n)
        s = -1 if (p * q) % 2 else 1
        out = {}
        for T in set(a) | set(b):
            v = dict(a.get(T, {}))
            add_into(v, b.get(T, {}), -s)
            if v:
                out[T] = v
        return out

    mu = {}
    for (i, j), v in L.structure.items():
        mu[(i, j)] = dict(v)
    br = {}
    d = {}
    for x, (p, f) in enumerate(elems):
        dv = to_vec(nr(1, mu, p, f)) if mu and p + 2 <= n else {}
        if dv:
            d[x] = dv
        for y, (q, g) in enumerate(elems):
            if not -1 <= p + q <= n - 1:
                continue
            v = to_vec(nr(p, f, q, g))
            if v:
                br[(x, y)] = v
    labels = tuple(l for l, _ in basis)
    degrees = tuple(dg for _, dg in basis)
    return Dgla(labels, degrees, d, br)


# ------------------------------------------------------------ group actions
def _diag(*entries):
    n = len(entries)
    return Matrix.from_rows([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)


def z2_on_obstruction_toy() -> GroupAction:
    """x ↦ -x, y ↦ y."""
    return GroupAction.finite({"s": {1: _diag(-1), 2: _diag(1)}}, relations=[["s", "s"]])


def z2_on_split_toy() -> GroupAction:
    """z ↦ z, w ↦ -w, x1 ↦ x1, x2 ↦ -x2."""
    return GroupAction.finite({"s": {0: _diag(1, -1), 1: _diag(1, -1)}}, relations=[["s", "s"]])


def s3_on_permutation_toy() -> GroupAction:
    """S3 permuting a1, a2, a3; c, b, s fixed."""
    s1 = Matrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    s2 = Matrix.from_rows([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    return GroupAction.finite({"s1": {1: s1}, "s2": {1: s2}},
                              relations=[["s1", "s1"], ["s2", "s2"], ["s1", "s2"] * 3])


EXAMPLES = {
    "obstruction-toy": obstruction_toy,
    "split-toy": split_toy,
    "permutation-toy": permutation_toy,
    "adjoint-sl2": lambda: adjoint_dgla(sl2()),
    "adjoint-abelian2": lambda: adjoint_dgla(abelian_lie(2)),
    "adjoint-aff2": lambda: adjoint_dgla(affine_line()),
}

EXAMPLE_ACTIONS = {
    "obstruction-toy": z2_on_obstruction_toy,
    "split-toy": z2_on_split_toy,
    "permutation-toy": s3_on_permutation_toy,
}
