"""Finite-dimensional local (dg) artinian algebras and small extensions.

The basis always starts with the unit ``"1"``; every other basis element
spans the maximal ideal.  Elements are sparse dicts {basis index: Fraction}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping

from .dgla import add_into
from .errors import NotSmallExtension
from .linalg import Q


@dataclass(frozen=True, eq=False)
class ArtinAlgebra:
    labels: tuple
    degrees: tuple
    mult: Mapping = field(default_factory=dict)   # (i, j) -> {k: c}, unit implicit
    d: Mapping = field(default_factory=dict)      # i -> {j: c}

    def __post_init__(self):
        if not self.labels or self.labels[0] != "1" or self.degrees[0] != 0:
            raise ValueError("the first basis element must be the unit '1' in degree 0")
        if any(n > 0 for n in self.degrees):
            raise ValueError("artinian dg algebras live in non-positive degrees")
        object.__setattr__(self, "_index", {l: i for i, l in enumerate(self.labels)})

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self._index[label]

    @property
    def maximal_ideal(self) -> range:
        return range(1, self.dim)

    def times(self, i: int, j: int) -> dict:
        if i == 0:
            return {j: Fraction(1)}
        if j == 0:
            return {i: Fraction(1)}
        return self.mult.get((i, j), {})

    def mul(self, a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for i, x in a.items():
            for j, y in b.items():
                add_into(out, self.times(i, j), x * y)
        return out

    def apply_d(self, a: Mapping) -> dict:
        out: dict = {}
        for i, x in a.items():
            add_into(out, self.d.get(i, {}), x)
        return out

    def augmentation(self, a: Mapping) -> Fraction:
        return Fraction(a.get(0, 0))

    def nilpotency_index(self) -> int:
        """Least N with m^N = 0."""
        from .linalg import Subspace
        n = self.dim
        span = Subspace.span([[int(k == i) for k in range(n)] for i in self.maximal_ideal], n)
        N = 1
        while span.dim:
            nxt = []
            for v in span.basis:
                vec = {k: c for k, c in enumerate(v) if c}
                for i in self.maximal_ideal:
                    w = self.mul(vec, {i: Fraction(1)})
                    nxt.append([w.get(k, 0) for k in range(n)])
            span = Subspace.span(nxt, n)
            N += 1
            if N > n + 1:
                raise ValueError("maximal ideal is not nilpotent")
        return N

    def check(self) -> list[str]:
        """Axiom failures: associativity, graded commutativity, Leibniz, d² = 0."""
        out = []
        idx = range(self.dim)
        deg = self.degrees
        for i, j in product(idx, idx):
            for k, c in self.times(i, j).items():
                if c and deg[k] != deg[i] + deg[j]:
                    out.append(f"degree of {self.labels[i]}·{self.labels[j]}")
            s = -1 if (deg[i] * deg[j]) % 2 else 1
            if add_into(dict(self.times(i, j)), self.times(j, i), -s):
                out.append(f"commutativity at ({self.labels[i]},{self.labels[j]})")
        for i, j, k in product(idx, idx, idx):
            lhs = self.mul(self.times(i, j), {k: Fraction(1)})
            rhs = self.mul({i: Fraction(1)}, self.times(j, k))
            if add_into(lhs, rhs, -1):
                out.append(f"associativity at ({self.labels[i]},{self.labels[j]},{self.labels[k]})")
        for i in idx:
            if self.apply_d(self.apply_d({i: 1})):
                out.append(f"d² at {self.labels[i]}")
            if self.d.get(0):
                out.append("d of the unit")
        for i, j in product(idx, idx):
            lhs = self.apply_d(self.times(i, j))
            rhs = self.mul(self.d.get(i, {}), {j: Fraction(1)})
            add_into(rhs, self.mul({i: Fraction(1)}, self.d.get(j, {})), -1 if deg[i] % 2 else 1)
            if add_into(lhs, rhs, -1):
                out.append(f"Leibniz at ({self.labels[i]},{self.labels[j]})")
        return out

    def format_element(self, a: Mapping) -> str:
        from .dgla import format_combination
        return format_combination({self.labels[i]: c for i, c in a.items()},
                                  order=[self.labels[i] for i in sorted(a)])

    def __repr__(self):
        return f"ArtinAlgebra({', '.join(self.labels)})"


def square_zero_extension(n: int, label: str = "ε") -> ArtinAlgebra:
    """``k ⊕ k·ε`` with ε in degree -n, ε² = 0 and dε = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return ArtinAlgebra(("1", label), (0, -n))


def dual_numbers() -> ArtinAlgebra:
    return square_zero_extension(0)


def _monomial_label(exps, names) -> str:
    if not any(exps):
        return "1"
    parts = []
    for e, v in zip(exps, names):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "·".join(parts)


def monomials_up_to(m: int, N: int) -> list[tuple]:
    """Exponent vectors of total degree <= N, graded then reverse-lex."""
    out = []
    for total in range(N + 1):
        out += sorted((e for e in product(range(total + 1), repeat=m) if sum(e) == total), reverse=True)
    return out


def truncated_power_series(m: int, N: int, names=None) -> ArtinAlgebra:
    """``k[t1..tm]/(t)^(N+1)`` on the monomial basis."""
    if m < 1 or N < 1:
        raise ValueError("need at least one variable and order at least 1")
    if names is None:
        names = ["t"] if m == 1 else [f"t{i + 1}" for i in range(m)]
    monos = monomials_up_to(m, N)
    pos = {e: i for i, e in enumerate(monos)}
    mult = {}
    for a, b in product(monos, monos):
        if not any(a) or not any(b):
            continue
        c = tuple(x + y for x, y in zip(a, b))
        if sum(c) <= N:
            mult[(pos[a], pos[b])] = {pos[c]: Fraction(1)}
    labels = tuple(_monomial_label(e, names) for e in monos)
    return ArtinAlgebra(labels, (0,) * len(monos), mult)


@dataclass(frozen=True, eq=False)
class SmallExtension:
    """``A → B = A/I`` where I is spanned by a set of basis elements of A."""
    source: ArtinAlgebra
    ideal: tuple            # indices of A spanning I
    quotient: ArtinAlgebra
    keep: tuple             # indices of A that survive, in quotient order

    def project(self, a: Mapping) -> dict:
        pos = {i: k for k, i in enumerate(self.keep)}
        return {pos[i]: c for i, c in a.items() if i in pos and c}

    def lift(self, b: Mapping) -> dict:
        """Set-theoretic section: same coefficients on surviving basis elements."""
        return {self.keep[k]: c for k, c in b.items() if c}


def small_extension(A: ArtinAlgebra, ideal_labels) -> SmallExtension:
    I = tuple(sorted(A.index(l) for l in ideal_labels))
    if 0 in I:
        raise NotSmallExtension("the unit cannot lie in the kernel")
    for i in A.maximal_ideal:
        for j in I:
            if A.times(i, j) or A.times(j, i):
                raise NotSmallExtension(f"m_A·I ≠ 0: {A.labels[i]}·{A.labels[j]}")
    for j in I:
        if A.d.get(j):
            raise NotSmallExtension(f"d does not vanish on {A.labels[j]}")
    keep = tuple(i for i in range(A.dim) if i not in I)
    pos = {i: k for k, i in enumerate(keep)}
    mult, d = {}, {}
    for (i, j), v in A.mult.items():
        if i in pos and j in pos:
            w = {pos[k]: c for k, c in v.items() if k in pos and c}
            if w:
                mult[(pos[i], pos[j])] = w
    for i, v in A.d.items():
        if i in pos:
            w = {pos[k]: c for k, c in v.items() if k in pos and c}
            if w:
                d[pos[i]] = w
    B = ArtinAlgebra(tuple(A.labels[i] for i in keep), tuple(A.degrees[i] for i in keep), mult, d)
    return SmallExtension(A, I, B, keep)


def power_series_extension(m: int, N: int) -> SmallExtension:
    """``k[t]/(t)^(N+1) → k[t]/(t)^N`` (kernel: the degree-N monomials)."""
    A = truncated_power_series(m, N)
    top = [l for l, e in zip(A.labels, monomials_up_to(m, N)) if sum(e) == N]
    return small_extension(A, top)


def coerce_element(A: ArtinAlgebra, terms: Mapping) -> dict:
    return {A.index(l): Q(c) for l, c in terms.items() if Q(c)}
