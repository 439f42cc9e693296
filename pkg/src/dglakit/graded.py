"""Integer-graded vector spaces with labelled bases, and homogeneous maps.

Grading is cohomological throughout and the shift convention is
``V[n]^i = V^(n+i)``, so ``k[n]`` is ``k`` placed in degree ``-n``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .linalg import Matrix


@dataclass(frozen=True)
class GradedVectorSpace:
    # degree -> labels, only nonzero components, sorted by degree
    components: tuple = ()

    def __post_init__(self):
        seen = set()
        for deg, labels in self.components:
            for lab in labels:
                if lab in seen:
                    raise ValueError(f"duplicate basis label {lab!r}")
                seen.add(lab)

    @classmethod
    def from_components(cls, components: Mapping[int, Iterable[str]]) -> GradedVectorSpace:
        comps = tuple((int(d), tuple(labs)) for d, labs in sorted(components.items()) if list(labs))
        return cls(comps)

    @classmethod
    def from_basis(cls, basis: Iterable[tuple[str, int]]) -> GradedVectorSpace:
        comps: dict[int, list[str]] = {}
        for label, deg in basis:
            comps.setdefault(int(deg), []).append(label)
        return cls.from_components(comps)

    @classmethod
    def k(cls, degree: int = 0, label: str = "1") -> GradedVectorSpace:
        return cls(((degree, (label,)),))

    def component(self, n: int) -> tuple:
        for d, labs in self.components:
            if d == n:
                return labs
        return ()

    def dim(self, n: int | None = None) -> int:
        if n is None:
            return sum(len(l) for _, l in self.components)
        return len(self.component(n))

    @property
    def degrees(self) -> list[int]:
        return [d for d, _ in self.components]

    @property
    def support(self) -> tuple[int, int] | None:
        if not self.components:
            return None
        return self.components[0][0], self.components[-1][0]

    def basis(self) -> list[tuple[str, int]]:
        return [(lab, d) for d, labs in self.components for lab in labs]

    def degree_of(self, label: str) -> int:
        for d, labs in self.components:
            if label in labs:
                return d
        raise KeyError(label)

    def dims(self) -> dict[int, int]:
        return {d: len(l) for d, l in self.components}


@dataclass(frozen=True)
class GradedMap:
    source: GradedVectorSpace
    target: GradedVectorSpace
    degree: int
    blocks: Mapping[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        for n, M in self.blocks.items():
            if (M.rows, M.cols) != (self.target.dim(n + self.degree), self.source.dim(n)):
                raise ValueError(f"block at degree {n} has shape {M.rows}x{M.cols}")

    def block(self, n: int) -> Matrix:
        if n in self.blocks:
            return self.blocks[n]
        return Matrix.zeros(self.target.dim(n + self.degree), self.source.dim(n))

    def __matmul__(self, other: GradedMap) -> GradedMap:
        blocks = {n: self.block(n + other.degree) @ other.block(n) for n in other.source.degrees}
        return GradedMap(other.source, self.target, self.degree + other.degree, blocks)

    def apply(self, label: str) -> dict[str, Fraction]:
        """Image of a basis element as {target label: coefficient}."""
        n = self.source.degree_of(label)
        j = self.source.component(n).index(label)
        col = self.block(n).column(j)
        labs = self.target.component(n + self.degree)
        return {labs[i]: c for i, c in enumerate(col) if c}


def shift(V: GradedVectorSpace, n: int) -> GradedVectorSpace:
    """``V[n]`` with ``V[n]^i = V^(n+i)``; labels are kept."""
    return GradedVectorSpace(tuple((d - n, labs) for d, labs in V.components))


def dual(V: GradedVectorSpace) -> GradedVectorSpace:
    """``(V^v)^i`` is dual to ``V^(-i)``; labels get a trailing ``∨``."""
    return GradedVectorSpace(tuple((-d, tuple(f"{l}∨" for l in labs))
                                   for d, labs in reversed(V.components)))


def tensor(V: GradedVectorSpace, W: GradedVectorSpace) -> GradedVectorSpace:
    """``(V⊗W)^n = ⊕_{p+q=n} V^p ⊗ W^q``, V-factor major.

    A factor of the form ``k`` labelled ``"1"`` is absorbed, so ``V ⊗ k``
    keeps V's labels and order.
    """
    comps: dict[int, list[str]] = {}
    for p, vl in V.components:
        for q, wl in W.components:
            out = comps.setdefault(p + q, [])
            for a in vl:
                for b in wl:
                    out.append(_tensor_label(a, b))
    return GradedVectorSpace.from_components(comps)


def _tensor_label(a: str, b: str) -> str:
    if b == "1":
        return a
    if a == "1":
        return b
    return f"{a}⊗{b}"


def koszul_swap(V: GradedVectorSpace, W: GradedVectorSpace) -> GradedMap:
    """``v⊗w ↦ (-1)^{|v||w|} w⊗v`` as a degree-0 map ``V⊗W → W⊗V``."""
    src = tensor(V, W)
    tgt = tensor(W, V)
    entries: dict[int, dict[tuple[int, int], Fraction]] = {}
    for p, vl in V.components:
        for q, wl in W.components:
            sign = Fraction(-1 if (p * q) % 2 else 1)
            for a in vl:
                for b in wl:
                    n = p + q
                    i = tgt.component(n).index(_tensor_label(b, a))
                    j = src.component(n).index(_tensor_label(a, b))
                    entries.setdefault(n, {})[(i, j)] = sign
    blocks = {}
    for n in src.degrees:
        rows, cols = tgt.dim(n), src.dim(n)
        data = [[Fraction(0)] * cols for _ in range(rows)]
        for (i, j), s in entries.get(n, {}).items():
            data[i][j] = s
        blocks[n] = Matrix.from_rows(data, cols)
    return GradedMap(src, tgt, 0, blocks)
