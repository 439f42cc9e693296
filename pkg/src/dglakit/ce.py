"""Chevalley-Eilenberg cochains of a dgla, truncated by word length.

For a basis element ``a`` of degree ``r`` the dual generator ``u_a`` has
degree ``1 - r``; it is odd exactly when ``r`` is even.  The cochain basis
is indexed by monomials: sorted tuples of basis indices in which odd
generators appear at most once.  The basis cochain ``m∨`` evaluates to 1 on
the word ``m``, so a product of generators is ``∏ u_a^{k_a} = ∏ k_a! · m∨``.

Truncating at word length W is a quotient by a dg ideal (d never shortens
a word), hence d² = 0 holds exactly in the truncation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Mapping

from .dgla import Dgla, DglaMorphism, _require_valid, add_into
from .errors import WindowTooSmall
from .linalg import Matrix, Subspace, complement, image_basis, kernel_basis

INF = float("inf")


@dataclass(frozen=True, eq=False)
class CEComplex:
    base: Dgla
    max_length: int
    monomials: Mapping = field(repr=False)  # degree -> tuple of monomials

    def __post_init__(self):
        pos = {m: i for ms in self.monomials.values() for i, m in enumerate(ms)}
        object.__setattr__(self, "_pos", pos)
        object.__setattr__(self, "_dcache", {})

    # ------------------------------------------------------------ structure
    def gen_degree(self, a: int) -> int:
        return 1 - self.base.degrees[a]

    def is_odd(self, a: int) -> bool:
        return self.base.degrees[a] % 2 == 0

    def degree_of(self, m: tuple) -> int:
        return sum(self.gen_degree(a) for a in m)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.monomials)

    def basis(self, n: int) -> tuple:
        return self.monomials.get(n, ())

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def label(self, m: tuple) -> str:
        if not m:
            return "1"
        return "(" + "·".join(self.base.labels[a] for a in m) + ")∨"

    # -------------------------------------------------------------- product
    def mul_monomials(self, m1: tuple, m2: tuple):
        """``m1∨ · m2∨ = c · m∨``; returns (c, m) or None beyond the window."""
        if len(m1) + len(m2) > self.max_length:
            return None
        odd1 = [a for a in m1 if self.is_odd(a)]
        odd2 = [a for a in m2 if self.is_odd(a)]
        if set(odd1) & set(odd2):
            return (Fraction(0), None)
        m = tuple(sorted(m1 + m2))
        c = 1
        for a in set(m1) | set(m2):
            if not self.is_odd(a):
                c *= comb(m.count(a), m1.count(a))
        # unshuffle sign: odd pairs with the right factor's element first
        inv = sum(1 for a in odd2 for b in odd1 if a < b)
        return (Fraction(-c if inv % 2 else c), m)

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for m1, a in x.items():
            for m2, b in y.items():
                r = self.mul_monomials(m1, m2)
                if r is None or not r[0]:
                    continue
                add_into(out, {r[1]: r[0] * a * b})
        return out

    # --------------------------------------------------------- differential
    def d_generator(self, e: int) -> dict:
        """d u_e from the dual of d and of the bracket."""
        g = self.base
        s = 1 if g.degrees[e] % 2 else -1   # (-1)^(r_e + 1)
        out: dict = {}
        for a, img in g.d.items():
            c = img.get(e)
            if c:
                add_into(out, {(a,): s * c})
        if self.max_length >= 2:
            for (b, c_), img in g.bracket.items():
                k = img.get(e)
                if not k:
                    continue
                sg = -1 if ((1 - g.degrees[b]) * g.degrees[c_]) % 2 else 1
                prod_ = self.mul({(b,): Fraction(1)}, {(c_,): Fraction(1)})
                add_into(out, prod_, s * sg * k / 2)
        return out

    def d_monomial(self, m: tuple) -> dict:
        if m in self._dcache:
            return self._dcache[m]
        if not m:
            res: dict = {}
        elif len(m) == 1:
            res = {k: v for k, v in self.d_generator(m[0]).items() if len(k) <= self.max_length}
        else:
            a, rest = m[0], m[1:]
            c, mm = self.mul_monomials((a,), rest)
            assert mm == m and c
            res = self.mul(self.d_monomial((a,)), {rest: Fraction(1)})
            sa = -1 if self.gen_degree(a) % 2 else 1
            add_into(res, self.mul({(a,): Fraction(1)}, self.d_monomial(rest)), sa)
            res = {k: v / c for k, v in res.items()}
        self._dcache[m] = res
        return res

    def d(self, x: Mapping) -> dict:
        out: dict = {}
        for m, c in x.items():
            add_into(out, self.d_monomial(m), c)
        return out

    def d_matrix(self, n: int) -> Matrix:
        src, tgt = self.basis(n), self.basis(n + 1)
        rows = [[Fraction(0)] * len(src) for _ in tgt]
        for j, m in enumerate(src):
            for mm, c in self.d_monomial(m).items():
                rows[self._pos[mm]][j] = c
        return Matrix.from_rows(rows, len(src)) if tgt else Matrix.zeros(0, len(src))

    # ------------------------------------------------------------- cochains
    def cochain(self, terms: Mapping, degree: int | None = None) -> CECochain:
        terms = {tuple(sorted(m)): Fraction(c) for m, c in terms.items() if c}
        if degree is None:
            degs = {self.degree_of(m) for m in terms}
            if len(degs) > 1:
                raise ValueError("cochain is not homogeneous")
            degree = degs.pop() if degs else 0
        vec = [Fraction(0)] * self.dim(degree)
        for m, c in terms.items():
            if self.degree_of(m) != degree or m not in self._pos or len(m) > self.max_length:
                raise ValueError(f"monomial {self.label(m)} is not a basis cochain of degree {degree}")
            vec[self._pos[m]] = c
        return CECochain(self, degree, tuple(vec))

    def unit(self) -> CECochain:
        return self.cochain({(): 1}, 0)

    def generator(self, label: str) -> CECochain:
        a = self.base.index(label)
        return self.cochain({(a,): 1})

    # ---------------------------------------------------------- trust range
    def trusted(self, n: int) -> bool:
        lo, hi = self.trusted_range
        return lo <= n <= hi

    @property
    def trusted_range(self) -> tuple:
        """Degrees where the truncated complex computes the untruncated one."""
        g = self.base
        ex = g.truncation.exact_degrees if g.truncation else (-INF, INF)
        if ex is None:
            return (INF, -INF)
        es = [self.gen_degree(a) for a in range(g.dim)]
        if not es:
            return (-INF, INF)
        exact_everywhere = ex == (-INF, INF)
        longer = _extreme_sum(g, self.max_length + 1, max)
        if exact_everywhere and longer is None:
            return (-INF, INF)
        if all(e < 0 for e in es) and ex[0] == -INF:
            bound = -INF if longer is None else longer
            if ex[1] != INF:
                bound = max(bound, -ex[1])   # unknown elements have r >= hi + 1
            return (bound + 2, INF)
        if all(e > 0 for e in es) and ex[1] == INF:
            low = _extreme_sum(g, self.max_length + 1, min)
            bound = INF if low is None else low
            if ex[0] != -INF:
                bound = min(bound, 2 - ex[0])
            return (-INF, bound - 2)
        return (INF, -INF)


def _extreme_sum(g: Dgla, length: int, pick):
    """Max/min degree of a monomial of exactly ``length`` generators."""
    evens = [1 - r for r in g.degrees if r % 2]        # may repeat
    odds = sorted((1 - r for r in g.degrees if r % 2 == 0), reverse=pick is max)
    best = None
    for k in range(0, min(len(odds), length) + 1):
        rest = length - k
        if rest and not evens:
            continue
        val = sum(odds[:k]) + (rest * pick(evens) if rest else 0)
        best = val if best is None else pick(best, val)
    return best


@dataclass(frozen=True, eq=False)
class CECochain:
    parent: CEComplex
    degree: int
    coeffs: tuple

    @property
    def terms(self) -> dict:
        ms = self.parent.basis(self.degree)
        return {m: c for m, c in zip(ms, self.coeffs) if c}

    def __mul__(self, other: CECochain) -> CECochain:
        return ce_product(self, other)

    def __add__(self, other: CECochain) -> CECochain:
        if other.parent is not self.parent or other.degree != self.degree:
            raise ValueError("cochains live in different spaces")
        return CECochain(self.parent, self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> CECochain:
        return CECochain(self.parent, self.degree, tuple(Fraction(c) * a for a in self.coeffs))

    def d(self) -> CECochain:
        return self.parent.cochain(self.parent.d(self.terms), self.degree + 1)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, CECochain) and other.parent is self.parent
                and self.degree == other.degree and self.coeffs == other.coeffs)

    def __str__(self):
        from .dgla import format_combination
        t = self.terms
        order = [self.parent.label(m) for m in t]
        return format_combination({self.parent.label(m): c for m, c in t.items()}, order=order)


def ce_complex(g: Dgla, max_length: int) -> CEComplex:
    if max_length < 0:
        raise ValueError("word length bound must be non-negative")
    odd = {a for a in range(g.dim) if g.degrees[a] % 2 == 0}
    monos: dict[int, list] = {0: [()]}
    for ell in range(1, max_length + 1):
        for m in combinations_with_replacement(range(g.dim), ell):
            if any(m.count(a) > 1 for a in set(m) & odd):
                continue
            n = sum(1 - g.degrees[a] for a in m)
            monos.setdefault(n, []).append(m)
    return CEComplex(g, max_length, {n: tuple(v) for n, v in sorted(monos.items())})


def ce_product(a: CECochain, b: CECochain) -> CECochain:
    C = a.parent
    if b.parent is not C:
        raise ValueError("cochains belong to different complexes")
    ta, tb = a.terms, b.terms
    for m1 in ta:
        for m2 in tb:
            if len(m1) + len(m2) > C.max_length:
                raise WindowTooSmall("product leaves the word-length window")
    return C.cochain(C.mul(ta, tb), a.degree + b.degree)


# ----------------------------------------------------------------- morphisms
@dataclass(frozen=True, eq=False)
class CEMap:
    """Degree-0 algebra map C*(target) -> C*(source) given by precomposition."""
    source: CEComplex   # C*(target of the dgla map)
    target: CEComplex   # C*(source of the dgla map)
    images: Mapping = field(repr=False)  # monomial of source -> dict on target

    def apply(self, x: CECochain) -> CECochain:
        out: dict = {}
        for m, c in x.terms.items():
            add_into(out, self.images[m], c)
        return self.target.cochain(out, x.degree)

    def matrix(self, n: int) -> Matrix:
        src, tgt = self.source.basis(n), self.target.basis(n)
        rows = [[Fraction(0)] * len(src) for _ in tgt]
        for j, m in enumerate(src):
            for mm, c in self.images[m].items():
                rows[self.target._pos[mm]][j] = c
        return Matrix.from_rows(rows, len(src)) if tgt else Matrix.zeros(0, len(src))


def ce_of_morphism(f: DglaMorphism, max_length: int) -> CEMap:
    _require_valid(f)
    Ct, Cs = ce_complex(f.target, max_length), ce_complex(f.source, max_length)
    # u_b ↦ Σ_a F_ba u_a
    gen_img = {b: {} for b in range(f.target.dim)}
    for a, img in f.images.items():
        for b, c in img.items():
            add_into(gen_img[b], {(a,): c})
    images: dict = {}

    def image(m):
        if m in images:
            return images[m]
        if not m:
            res = {(): Fraction(1)}
        elif len(m) == 1:
            res = dict(gen_img[m[0]])
        else:
            c, _ = Ct.mul_monomials((m[0],), m[1:])
            res = {k: v / c for k, v in Cs.mul(image((m[0],)), image(m[1:])).items()}
        images[m] = res
        return res

    for ms in Ct.monomials.values():
        for m in ms:
            image(m)
    return CEMap(Ct, Cs, images)


# ---------------------------------------------------------------- cohomology
@dataclass(frozen=True)
class CECohomology:
    dims: Mapping           # degree -> dim of H of the truncated complex
    representatives: Mapping  # degree -> tuple of {label: coeff}
    trusted: Mapping        # degree -> bool

    def trusted_dims(self) -> dict:
        return {n: d for n, d in self.dims.items() if self.trusted[n]}


def ce_cohomology(c: CEComplex, window: tuple[int, int] | None = None) -> CECohomology:
    if window is None:
        degs = c.degrees
        window = (min(degs) - 1, max(degs) + 1) if degs else (0, 0)
    lo, hi = window
    dims, reps, trusted = {}, {}, {}
    for n in range(lo, hi + 1):
        dim_n = c.dim(n)
        Z = kernel_basis(c.d_matrix(n)) if dim_n else Subspace.zero(0)
        B = image_basis(c.d_matrix(n - 1)) if c.dim(n - 1) and dim_n else Subspace.zero(dim_n)
        H = complement(B, Z)
        dims[n] = H.dim
        ms = c.basis(n)
        reps[n] = tuple({c.label(m): x for m, x in zip(ms, v) if x} for v in H.basis)
        trusted[n] = c.trusted(n)
    return CECohomology(dims, reps, trusted)
