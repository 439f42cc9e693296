"""Free graded Lie algebras (truncated by bracket length) and the free
resolution procedure that approximates a dgla by free ones.

Lie elements are computed inside the tensor algebra: a basis element is a
bracket tree over generator indices and is expanded to a word polynomial
with the graded commutator ``ab - (-1)^{|a||b|} ba``.  The basis in each
length is the standard bracketing of Lyndon words, plus ``[w,w]`` for odd
Lyndon ``w``, kept greedily when linearly independent and completed by
brackets ``[g, b]`` with lower-level basis elements.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .dgla import Dgla, DglaMorphism, Truncation, add_into, cohomology
from .errors import NegativeCohomology, WindowTooSmall
from .graded import GradedVectorSpace
from .linalg import Matrix, Q, kernel_basis, solve

INF = float("inf")


def lyndon_words(m: int, n: int):
    """Lyndon words over range(m) of length <= n, in lexicographic order."""
    if m == 0:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        k = len(w)
        while len(w) < n:
            w.append(w[len(w) - k])
        while w and w[-1] == m - 1:
            w.pop()


def _standard_tree(w: tuple):
    if len(w) == 1:
        return w[0]
    for i in range(1, len(w)):
        v = w[i:]
        if _is_lyndon(v):
            return (_standard_tree(w[:i]), _standard_tree(v))
    raise AssertionError("a Lyndon word always has a Lyndon suffix")


def _is_lyndon(w: tuple) -> bool:
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def tree_length(t) -> int:
    return 1 if isinstance(t, int) else tree_length(t[0]) + tree_length(t[1])


def tree_label(t, names) -> str:
    if isinstance(t, int):
        return names[t]
    return f"[{tree_label(t[0], names)},{tree_label(t[1], names)}]"


def parse_tree(label: str, index: Mapping[str, int]):
    """Inverse of tree_label for generator names free of ``[],``."""
    label = label.strip()
    if not label.startswith("["):
        return index[label]
    depth = 0
    for i, ch in enumerate(label):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "," and depth == 1:
            return (parse_tree(label[1:i], index), parse_tree(label[i + 1:-1], index))
    raise ValueError(f"malformed bracket {label!r}")


def _word_degree(w, degs) -> int:
    return sum(degs[a] for a in w)


def _commutator(p: Mapping, q: Mapping, degs) -> dict:
    out: dict = {}
    for u, a in p.items():
        du = _word_degree(u, degs)
        for v, b in q.items():
            s = -1 if (du * _word_degree(v, degs)) % 2 else 1
            add_into(out, {u + v: a * b}, 1)
            add_into(out, {v + u: a * b}, -s)
    return out


@dataclass
class _Level:
    """Sparse echelon form of the basis at one bracket length."""
    rows: list = field(default_factory=list)  # (pivot word, row poly, coords)

    def reduce(self, poly: Mapping):
        v = dict(poly)
        coords: dict = {}
        for piv, row, expr in self.rows:
            c = v.get(piv)
            if c:
                add_into(v, row, -c)
                add_into(coords, expr, c)
        return v, coords

    def insert(self, poly: Mapping, index: int) -> bool:
        v, coords = self.reduce(poly)
        if not v:
            return False
        piv = min(v)
        c = v[piv]
        row = {w: x / c for w, x in v.items()}
        expr = {k: -x / c for k, x in coords.items()}
        expr[index] = expr.get(index, 0) + 1 / Fraction(c)
        self.rows.append((piv, row, expr))
        return True

    def coordinates(self, poly: Mapping) -> dict:
        v, coords = self.reduce(poly)
        if v:
            raise ValueError("polynomial is not in the span of the basis")
        return coords


@dataclass(frozen=True, eq=False)
class FreeDgla:
    """A truncated free dgla together with its generator data."""
    dgla: Dgla
    generators: tuple          # (label, degree)
    trees: tuple               # basis trees, aligned with dgla.labels
    gen_differential: Mapping  # generator index -> {tree: coeff}

    def tree_index(self, t) -> int:
        return self.trees.index(t)


def free_dgla(V: GradedVectorSpace | Iterable[tuple[str, int]], max_length: int,
              max_degree: int | None = None,
              differential: Mapping[str, Mapping[str, object]] | None = None) -> FreeDgla:
    """Free graded Lie algebra on V, modulo brackets longer than ``max_length``.

    ``differential`` optionally gives d of generators as combinations of
    basis labels (e.g. ``{"Y1": {"[v1,v1]": 1, "v2": -2}}``); d is then
    extended as a derivation.  ``max_degree`` additionally kills degrees
    above it, which is an ideal only for non-negatively graded generators.
    """
    gens = V.basis() if isinstance(V, GradedVectorSpace) else [(l, int(n)) for l, n in V]
    names = [l for l, _ in gens]
    index = {l: i for i, l in enumerate(names)}
    dtrees = {}
    for g, terms in (differential or {}).items():
        dtrees[index[g]] = {parse_tree(t, index): Q(c) for t, c in terms.items() if Q(c)}
    return _build_free(tuple(gens), dtrees, max_length, max_degree)


def _build_free(gens: tuple, dtrees: Mapping, max_length: int, max_degree=None) -> FreeDgla:
    if max_length < 1:
        raise WindowTooSmall("bracket length bound must be at least 1")
    degs = [n for _, n in gens]
    names = [l for l, _ in gens]
    m = len(gens)
    if max_degree is not None and any(n < 0 for n in degs):
        raise ValueError("a degree cap is only an ideal for non-negative generators")

    def deg_of(t):
        return degs[t] if isinstance(t, int) else deg_of(t[0]) + deg_of(t[1])

    expand_cache: dict = {}

    def expand(t):
        if t not in expand_cache:
            if isinstance(t, int):
                expand_cache[t] = {(t,): Fraction(1)}
            else:
                expand_cache[t] = _commutator(expand(t[0]), expand(t[1]), degs)
        return expand_cache[t]

    def allowed(t):
        return max_degree is None or deg_of(t) <= max_degree

    trees: list = []
    level_of: list = []
    levels: dict[int, _Level] = {}
    lyndon = {}
    for w in lyndon_words(m, max_length):
        lyndon.setdefault(len(w), []).append(w)

    for ell in range(1, max_length + 1):
        lev = levels[ell] = _Level()
        cands = [_standard_tree(w) for w in lyndon.get(ell, [])]
        if ell % 2 == 0:
            for w in lyndon.get(ell // 2, []):
                t = _standard_tree(w)
                if deg_of(t) % 2:
                    cands.append((t, t))
        cands += [(g, t) for g in range(m) for t, l in zip(trees, level_of) if l == ell - 1]
        for t in cands:
            if allowed(t) and lev.insert(expand(t), len(trees)):
                trees.append(t)
                level_of.append(ell)

    # does anything survive at length max_length + 1?
    top = _Level()
    finite = not any(top.insert(expand((g, t)), 0)
                     for g in range(m) for t, l in zip(trees, level_of)
                     if l == max_length and allowed((g, t)))
    exact = _exact_degrees(degs, max_length, max_degree, finite)

    bracket: dict = {}
    clipped_br = set()
    for i, a in enumerate(trees):
        for j, b in enumerate(trees):
            ell = level_of[i] + level_of[j]
            if ell > max_length or not allowed((a, b)):
                clipped_br.add((i, j))
                continue
            coords = levels[ell].coordinates(_commutator(expand(a), expand(b), degs))
            if coords:
                bracket[(i, j)] = coords

    dwords = {g: _tree_poly(dt, expand) for g, dt in dtrees.items()}
    d: dict = {}
    clipped_d = set()
    for i, t in enumerate(trees):
        poly = _derive(expand(t), dwords, degs)
        by_len: dict[int, dict] = {}
        for w, c in poly.items():
            by_len.setdefault(len(w), {})[w] = c
        out: dict = {}
        for ell, part in by_len.items():
            if ell > max_length:
                clipped_d.add(i)
                continue
            coords = levels[ell].coordinates(part) if part else {}
            add_into(out, coords)
        if out:
            d[i] = out

    labels = tuple(tree_label(t, names) for t in trees)
    degrees = tuple(deg_of(t) for t in trees)
    trunc = Truncation(max_length, exact, frozenset(clipped_d), frozenset(clipped_br))
    g = Dgla(labels, degrees, d, bracket, trunc)
    return FreeDgla(g, tuple(gens), tuple(trees), dict(dtrees))


def _tree_poly(combo: Mapping, expand) -> dict:
    out: dict = {}
    for t, c in combo.items():
        add_into(out, expand(t), c)
    return out


def _derive(poly: Mapping, dwords: Mapping, degs) -> dict:
    """Apply the degree-one derivation determined by d on generators."""
    out: dict = {}
    for w, c in poly.items():
        sign_deg = 0
        for pos, a in enumerate(w):
            if a in dwords:
                s = -1 if sign_deg % 2 else 1
                pre, post = w[:pos], w[pos + 1:]
                for u, b in dwords[a].items():
                    add_into(out, {pre + u + post: c * b * s})
            sign_deg += degs[a]
    return out


def _exact_degrees(degs, max_length, max_degree, finite):
    if finite:
        lo, hi = -INF, INF
    elif degs and all(n >= 1 for n in degs):
        lo, hi = -INF, (max_length + 1) * min(degs) - 1
    elif degs and all(n <= -1 for n in degs):
        lo, hi = -((max_length + 1) * min(-n for n in degs) - 1), INF
    else:
        return None
    if max_degree is not None:
        hi = min(hi, max_degree)
    return (lo, hi)


# ------------------------------------------------------- free approximation
@dataclass(frozen=True, eq=False)
class FreeApproximationState:
    stage: int
    target: Dgla
    free: FreeDgla
    images: Mapping          # generator label -> target element
    morphism: DglaMorphism
    window: tuple            # (lowest, highest) degree in which θ is examined
    max_length: int

    @property
    def algebra(self) -> Dgla:
        return self.free.dgla

    @property
    def generators(self) -> tuple:
        return self.free.generators


def _phi(free: FreeDgla, target: Dgla, images: Mapping) -> DglaMorphism:
    gen_images = [images[l] for l, _ in free.generators]
    cache: dict = {}

    def image(t):
        if t not in cache:
            if isinstance(t, int):
                cache[t] = dict(gen_images[t])
            else:
                cache[t] = target.br(image(t[0]), image(t[1]))
        return cache[t]

    return DglaMorphism(free.dgla, target, {i: image(t) for i, t in enumerate(free.trees) if image(t)})


def _trusted(g: Dgla, n: int) -> bool:
    ex = g.truncation.exact_degrees if g.truncation else (-INF, INF)
    return ex is not None and ex[0] <= n - 1 and n + 1 <= ex[1]


def free_approximation_init(g: Dgla, window: tuple[int, int], max_length: int) -> FreeApproximationState:
    """Stage one: the free Lie algebra on chosen cocycle lifts of H(g)."""
    lo, hi = window
    for n in range(lo, min(hi, -1) + 1):
        if cohomology(g, n).dim:
            raise NegativeCohomology(f"H^{n} is nonzero")
    gens, images = [], {}
    for n in range(lo, hi + 1):
        H = cohomology(g, n)
        for rep in H.representatives:
            label = f"v{len(gens) + 1}"
            gens.append((label, n))
            images[label] = g.from_dense(rep, n)
    free = _build_free(tuple(gens), {}, max_length)
    return FreeApproximationState(1, g, free, images, _phi(free, g, images), (lo, hi), max_length)


def _kernel_of_theta(s: FreeApproximationState, n: int):
    """Cocycles of the free stage spanning ker(H^n(φ)), and their y_α."""
    src, tgt = s.algebra, s.target
    Hs, Ht = cohomology(src, n), cohomology(tgt, n)
    if not Hs.dim:
        return []
    block = s.morphism.block(n)
    cols = [Ht.coordinates(block @ rep) for rep in Hs.representatives]
    theta = Matrix.from_columns(cols, Ht.dim) if Ht.dim else Matrix.zeros(0, Hs.dim)
    out = []
    dprev = tgt.d_matrix(n - 1)
    for k in kernel_basis(theta).basis:
        x = [sum((c * r[i] for c, r in zip(k, Hs.representatives)), Fraction(0))
             for i in range(src.dim_in(n))]
        y = solve(dprev, block @ x) if tgt.dim_in(n - 1) else None
        if y is None:
            y = ()
            if any(block @ x):
                raise AssertionError("kernel class does not map to a coboundary")
        out.append((src.from_dense(x, n), tgt.from_dense(y, n - 1) if y else {}))
    return out


def free_approximation_step(s: FreeApproximationState) -> FreeApproximationState:
    """Kill ker θ in every window degree by freely adjoining Y with dY = x."""
    lo, hi = s.window
    for n in range(lo, hi + 1):
        if not _trusted(s.algebra, n):
            raise WindowTooSmall(f"degree {n} is not exact at bracket length {s.max_length}")
    added = []
    for n in range(lo, hi + 1):
        for x, y in _kernel_of_theta(s, n):
            added.append((n - 1, x, y))
    if not added:
        return FreeApproximationState(s.stage + 1, s.target, s.free, s.images, s.morphism,
                                      s.window, s.max_length)
    gens = list(s.generators)
    dtrees = dict(s.free.gen_differential)
    images = dict(s.images)
    existing = sum(1 for l, _ in gens if l.startswith("Y"))
    for k, (deg, x, y) in enumerate(added, start=existing + 1):
        label = f"Y{k}"
        dtrees[len(gens)] = {s.free.trees[i]: c for i, c in x.items()}
        gens.append((label, deg))
        images[label] = y
    free = _build_free(tuple(gens), dtrees, s.max_length)
    return FreeApproximationState(s.stage + 1, s.target, free, images, _phi(free, s.target, images),
                                  s.window, s.max_length)
