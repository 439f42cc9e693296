"""Differential graded Lie algebras over Q: data type, axiom checks,
cohomology, cones and morphisms.

A ``Dgla`` stores its structure constants sparsely and indexes basis
elements globally.  Elements are sparse dicts ``{basis index: Fraction}``.
Structure constants are stored for every ordered pair, so data that breaks
antisymmetry or the degree rules can be held and reported on.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from .errors import InvalidMorphism
from .graded import GradedMap, GradedVectorSpace
from .linalg import Matrix, Q, Subspace, complement, image_basis, kernel_basis, rank, solve

Element = dict  # {basis index: Fraction}


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def add_into(acc: dict, vec: Mapping, scale=1) -> dict:
    for k, c in vec.items():
        v = acc.get(k, 0) + scale * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    return acc


@dataclass(frozen=True)
class Truncation:
    """Bookkeeping for finite quotients of infinite-dimensional dglas.

    ``exact_degrees`` is the closed interval of degrees in which every
    basis element of the untruncated algebra is present; ``clipped_d`` and
    ``clipped_brackets`` record where structure constants were cut off.
    """
    max_length: int
    exact_degrees: tuple = (float("-inf"), float("inf"))
    clipped_d: frozenset = frozenset()
    clipped_brackets: frozenset = frozenset()

    def is_exact(self, n) -> bool:
        lo, hi = self.exact_degrees
        return lo <= n <= hi


@dataclass(frozen=True, eq=False)
class Dgla:
    labels: tuple
    degrees: tuple
    d: Mapping = field(default_factory=dict)        # i -> {j: c}
    bracket: Mapping = field(default_factory=dict)  # (i, j) -> {k: c}
    truncation: Truncation | None = None

    def __post_init__(self):
        if len(self.labels) != len(self.degrees):
            raise ValueError("labels and degrees differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be unique")
        object.__setattr__(self, "_index", {l: i for i, l in enumerate(self.labels)})
        by_deg: dict[int, list[int]] = {}
        for i, n in enumerate(self.degrees):
            by_deg.setdefault(n, []).append(i)
        object.__setattr__(self, "_by_degree", by_deg)
        object.__setattr__(self, "_pos", {i: p for idx in by_deg.values() for p, i in enumerate(idx)})

    # ------------------------------------------------------------------ build
    @classmethod
    def build(cls, basis: Iterable[tuple[str, int]], differential: Mapping | None = None,
              brackets: Mapping | None = None, *, fill_antisymmetric: bool = True,
              truncation: Truncation | None = None) -> Dgla:
        """Construct from labels.

        ``differential``: {label: {label: coeff}}; ``brackets``:
        {(left, right): {label: coeff}}.  With ``fill_antisymmetric`` a
        missing mirrored pair is filled in by graded antisymmetry.
        """
        basis = list(basis)
        labels = tuple(l for l, _ in basis)
        degrees = tuple(int(n) for _, n in basis)
        index = {l: i for i, l in enumerate(labels)}
        d = {}
        for src, terms in (differential or {}).items():
            vec = {index[t]: Q(c) for t, c in terms.items() if Q(c)}
            if vec:
                d[index[src]] = vec
        br = {}
        for (a, b), terms in (brackets or {}).items():
            vec = {index[t]: Q(c) for t, c in terms.items() if Q(c)}
            if vec:
                br[(index[a], index[b])] = vec
        if fill_antisymmetric:
            for (i, j), vec in list(br.items()):
                if (j, i) not in br and i != j:
                    s = -_sign(degrees[i] * degrees[j])
                    br[(j, i)] = {k: s * c for k, c in vec.items()}
        return cls(labels, degrees, d, br, truncation)

    # ------------------------------------------------------------- structure
    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def space(self) -> GradedVectorSpace:
        return GradedVectorSpace.from_basis(zip(self.labels, self.degrees))

    @property
    def support(self) -> list[int]:
        return sorted(self._by_degree)

    def index(self, label: str) -> int:
        return self._index[label]

    def indices(self, n: int) -> list[int]:
        return self._by_degree.get(n, [])

    def dim_in(self, n: int) -> int:
        return len(self.indices(n))

    def position(self, i: int) -> int:
        """Position of global index i inside its degree component."""
        return self._pos[i]

    def apply_d(self, x: Mapping) -> Element:
        out: Element = {}
        for i, c in x.items():
            if i in self.d:
                add_into(out, self.d[i], c)
        return out

    def br(self, x: Mapping, y: Mapping) -> Element:
        out: Element = {}
        for i, a in x.items():
            for j, b in y.items():
                v = self.bracket.get((i, j))
                if v:
                    add_into(out, v, a * b)
        return out

    def basis_element(self, i: int) -> Element:
        return {i: Fraction(1)}

    def d_matrix(self, n: int) -> Matrix:
        """Matrix of d: g^n -> g^(n+1) in the per-degree bases."""
        src, tgt = self.indices(n), self.indices(n + 1)
        rows = [[Fraction(0)] * len(src) for _ in tgt]
        for col, i in enumerate(src):
            for j, c in self.d.get(i, {}).items():
                if self.degrees[j] == n + 1:
                    rows[self._pos[j]][col] = c
        return Matrix.from_rows(rows, len(src)) if tgt else Matrix.zeros(0, len(src))

    def differential_map(self) -> GradedMap:
        V = self.space
        return GradedMap(V, V, 1, {n: self.d_matrix(n) for n in self.support})

    def to_dense(self, x: Mapping, n: int) -> tuple:
        idx = self.indices(n)
        return tuple(Q(x.get(i, 0)) for i in idx)

    def from_dense(self, v, n: int) -> Element:
        return {i: Q(c) for i, c in zip(self.indices(n), v) if c}

    def format_element(self, x: Mapping) -> str:
        return format_combination({self.labels[i]: c for i, c in x.items()},
                                  order=[self.labels[i] for i in sorted(x)])

    def __eq__(self, other):
        if not isinstance(other, Dgla):
            return NotImplemented
        return (self.labels == other.labels and self.degrees == other.degrees
                and _clean(self.d) == _clean(other.d) and _clean(self.bracket) == _clean(other.bracket))

    def __hash__(self):
        return hash((self.labels, self.degrees))

    def __repr__(self):
        dims = ", ".join(f"{n}:{self.dim_in(n)}" for n in self.support)
        return f"Dgla({{{dims}}})"


def _clean(table: Mapping) -> dict:
    return {k: {i: c for i, c in v.items() if c} for k, v in table.items() if any(v.values())}


def format_combination(terms: Mapping[str, Fraction], order=None) -> str:
    from .linalg import format_rational
    keys = order if order is not None else sorted(terms)
    parts = []
    for lab in keys:
        c = terms[lab]
        if not c:
            continue
        mag = abs(c)
        body = lab if mag == 1 else f"{format_rational(mag)}·{lab}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sgn, body in parts[1:]:
        s += f" {sgn} {body}"
    return s


# ---------------------------------------------------------------- validation
@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    residual: str = ""

    def __str__(self):
        w = ", ".join(self.witness)
        return f"{self.axiom} at ({w})" + (f": {self.residual}" if self.residual else "")


def validate_dgla(g: Dgla) -> list[Violation]:
    """Check every dgla axiom on every basis tuple; empty list iff valid."""
    report: list[Violation] = []
    lab, deg = g.labels, g.degrees
    for i in range(g.dim):
        for j, c in g.d.get(i, {}).items():
            if c and deg[j] != deg[i] + 1:
                report.append(Violation("DegreeViolation", (lab[i],), f"d{lab[i]} has a term {lab[j]}"))
                break
    for (i, j), vec in sorted(g.bracket.items()):
        for k, c in vec.items():
            if c and deg[k] != deg[i] + deg[j]:
                report.append(Violation("DegreeViolation", (lab[i], lab[j]),
                                        f"[{lab[i]},{lab[j]}] has a term {lab[k]}"))
                break
    for i in range(g.dim):
        dd = g.apply_d(g.d.get(i, {}))
        if dd:
            report.append(Violation("DifferentialSquare", (lab[i],), g.format_element(dd)))
    for i in range(g.dim):
        for j in range(g.dim):
            p, q = deg[i], deg[j]
            res = add_into(dict(g.bracket.get((i, j), {})), g.bracket.get((j, i), {}), _sign(p * q))
            if res:
                report.append(Violation("Antisymmetry", (lab[i], lab[j]), g.format_element(res)))
    ex = [{i: Fraction(1)} for i in range(g.dim)]
    for i, j, k in product(range(g.dim), repeat=3):
        p, q, r = deg[i], deg[j], deg[k]
        res: Element = {}
        add_into(res, g.br(ex[i], g.bracket.get((j, k), {})), _sign(p * r))
        add_into(res, g.br(ex[j], g.bracket.get((k, i), {})), _sign(p * q))
        add_into(res, g.br(ex[k], g.bracket.get((i, j), {})), _sign(q * r))
        if res:
            report.append(Violation("Jacobi", (lab[i], lab[j], lab[k]), g.format_element(res)))
    for i in range(g.dim):
        for j in range(g.dim):
            p = deg[i]
            lhs = g.apply_d(g.bracket.get((i, j), {}))
            rhs = g.br(g.d.get(i, {}), ex[j])
            add_into(rhs, g.br(ex[i], g.d.get(j, {})), _sign(p))
            res = add_into(lhs, rhs, -1)
            if res:
                report.append(Violation("Leibniz", (lab[i], lab[j]), g.format_element(res)))
    return report


# ---------------------------------------------------------------- cohomology
@dataclass(frozen=True)
class Cohomology:
    degree: int
    cocycles: Subspace
    boundaries: Subspace
    harmonic: Subspace  # chosen lift of H^n inside the cocycles

    @property
    def dim(self) -> int:
        return self.harmonic.dim

    @property
    def representatives(self) -> tuple:
        return self.harmonic.basis

    def coordinates(self, z) -> tuple:
        """Class of a cocycle in the representative basis."""
        reps = list(self.representatives)
        cols = reps + list(self.boundaries.basis)
        n = self.cocycles.ambient_dim
        if not cols:
            if any(z):
                raise ValueError("vector is not a cocycle")
            return ()
        x = solve(Matrix.from_columns(cols, n), z)
        if x is None:
            raise ValueError("vector is not a cocycle")
        return tuple(x[:len(reps)])


def cohomology(g: Dgla, n: int) -> Cohomology:
    dn = g.d_matrix(n)
    Z = kernel_basis(dn)
    B = image_basis(g.d_matrix(n - 1)) if g.dim_in(n - 1) else Subspace.zero(g.dim_in(n))
    H = complement(B, Z)
    return Cohomology(n, Z, B, H)


def cohomology_dims(g: Dgla, degrees: Iterable[int] | None = None) -> dict[int, int]:
    if degrees is None:
        degrees = g.support
    return {n: cohomology(g, n).dim for n in degrees}


# ---------------------------------------------------------------------- cone
def cone(g: Dgla) -> Dgla:
    """The acyclic dgla ``g ⊕ εg`` with ε of degree -1.

    ``d(x + εy) = dx + y - εdy`` and
    ``[x + εy, x' + εy'] = [x, x'] + ε([y, x'] + (-1)^|x| [x, y'])``.
    """
    n = g.dim
    labels = g.labels + tuple(f"ε{l}" for l in g.labels)
    degrees = g.degrees + tuple(p - 1 for p in g.degrees)
    d: dict[int, dict] = {}
    for i in range(n):
        if g.d.get(i):
            d[i] = dict(g.d[i])
        eps = {i: Fraction(1)}
        for j, c in g.d.get(i, {}).items():
            eps[n + j] = -c
        d[n + i] = eps
    br: dict[tuple, dict] = {}
    for (i, j), vec in g.bracket.items():
        if not vec:
            continue
        br[(i, j)] = dict(vec)
        br[(n + i, j)] = {n + k: c for k, c in vec.items()}
        s = _sign(g.degrees[i])
        br[(i, n + j)] = {n + k: s * c for k, c in vec.items()}
    return Dgla(labels, degrees, d, br)


# ----------------------------------------------------------------- morphisms
@dataclass(frozen=True, eq=False)
class DglaMorphism:
    source: Dgla
    target: Dgla
    images: Mapping  # source index -> target element

    @classmethod
    def from_labels(cls, source: Dgla, target: Dgla, mapping: Mapping) -> DglaMorphism:
        images = {}
        for a, terms in mapping.items():
            vec = {target.index(b): Q(c) for b, c in terms.items() if Q(c)}
            if vec:
                images[source.index(a)] = vec
        return cls(source, target, images)

    @classmethod
    def identity(cls, g: Dgla) -> DglaMorphism:
        return cls(g, g, {i: {i: Fraction(1)} for i in range(g.dim)})

    @classmethod
    def zero(cls, source: Dgla, target: Dgla) -> DglaMorphism:
        return cls(source, target, {})

    def apply(self, x: Mapping) -> Element:
        out: Element = {}
        for i, c in x.items():
            if i in self.images:
                add_into(out, self.images[i], c)
        return out

    def block(self, n: int) -> Matrix:
        src, tgt = self.source.indices(n), self.target.indices(n)
        rows = [[Fraction(0)] * len(src) for _ in tgt]
        for col, i in enumerate(src):
            for j, c in self.images.get(i, {}).items():
                if self.target.degrees[j] == n:
                    rows[self.target.position(j)][col] = c
        return Matrix.from_rows(rows, len(src)) if tgt else Matrix.zeros(0, len(src))

    def graded_map(self) -> GradedMap:
        return GradedMap(self.source.space, self.target.space, 0,
                         {n: self.block(n) for n in self.source.support})


def validate_morphism(f: DglaMorphism) -> list[Violation]:
    """Chain-map and bracket conditions on all basis tuples.

    Pairs recorded as clipped by the source's truncation are skipped: there
    the finite quotient is not the algebra the map was defined on.
    """
    src, tgt = f.source, f.target
    trunc = src.truncation
    clipped_d = trunc.clipped_d if trunc else frozenset()
    clipped_br = trunc.clipped_brackets if trunc else frozenset()
    report: list[Violation] = []
    for i in range(src.dim):
        for j, c in f.images.get(i, {}).items():
            if c and tgt.degrees[j] != src.degrees[i]:
                report.append(Violation("DegreeViolation", (src.labels[i],), f"image has a term {tgt.labels[j]}"))
                break
    for i in range(src.dim):
        if i in clipped_d:
            continue
        res = add_into(f.apply(src.d.get(i, {})), tgt.apply_d(f.images.get(i, {})), -1)
        if res:
            report.append(Violation("ChainMap", (src.labels[i],), tgt.format_element(res)))
    for i in range(src.dim):
        for j in range(src.dim):
            if (i, j) in clipped_br:
                continue
            lhs = f.apply(src.bracket.get((i, j), {}))
            rhs = tgt.br(f.images.get(i, {}), f.images.get(j, {}))
            res = add_into(lhs, rhs, -1)
            if res:
                report.append(Violation("BracketViolation", (src.labels[i], src.labels[j]),
                                        tgt.format_element(res)))
    return report


def _require_valid(f: DglaMorphism):
    report = validate_morphism(f)
    if report:
        raise InvalidMorphism("; ".join(str(v) for v in report[:5]))


def induced_map_on_H(f: DglaMorphism, n: int, *, check: bool = True) -> Matrix:
    """Matrix of H^n(f) in the canonical representative bases."""
    if check:
        _require_valid(f)
    Hs, Ht = cohomology(f.source, n), cohomology(f.target, n)
    block = f.block(n)
    cols = [Ht.coordinates(block @ rep) for rep in Hs.representatives]
    if not cols:
        return Matrix.zeros(Ht.dim, 0)
    return Matrix.from_columns(cols, Ht.dim)


def _degrees_of(f: DglaMorphism, window) -> list[int]:
    if window is None:
        return sorted(set(f.source.support) | set(f.target.support))
    lo, hi = window
    return list(range(lo, hi + 1))


def quasi_iso_check(f: DglaMorphism, window: tuple[int, int] | None = None) -> dict[int, bool]:
    _require_valid(f)
    out = {}
    for n in _degrees_of(f, window):
        M = induced_map_on_H(f, n, check=False)
        out[n] = M.rows == M.cols and rank(M) == M.rows
    return out
