import pytest

from dglakit.ce import ce_cohomology, ce_complex, ce_of_morphism, ce_product
from dglakit.dgla import Dgla, DglaMorphism
from dglakit.errors import WindowTooSmall
from dglakit.examples import abelian_dgla, affine_line, adjoint_dgla, obstruction_toy
from dglakit.free import free_dgla


def test_even_generator_complex():
    C = ce_complex(free_dgla([("v", 2)], 3).dgla, 3)
    assert {n: C.dim(n) for n in C.degrees} == {-1: 1, 0: 1}
    u = C.generator("v")
    assert u.degree == -1
    assert (u * u).is_zero()
    assert C.d_matrix(-1).is_zero()


def test_zero_dgla():
    C = ce_complex(Dgla.build([], {}), 3)
    assert C.degrees == [0]
    assert ce_cohomology(C).trusted_dims() == {-1: 0, 0: 1, 1: 0}


def test_odd_generator_differential():
    F = free_dgla([("v", 3)], 3).dgla
    C = ce_complex(F, 3)
    u, z = C.generator("v"), C.generator("[v,v]")
    assert (u.degree, z.degree) == (-2, -5)
    dz = z.d()
    uu = u * u
    assert not uu.is_zero()
    # dz is a nonzero multiple of u²
    ratio = {dz.coeffs[i] / uu.coeffs[i] for i in range(len(uu.coeffs)) if uu.coeffs[i]}
    assert len(ratio) == 1 and ratio.pop() != 0
    assert all(x == 0 for x, y in zip(dz.coeffs, uu.coeffs) if y == 0)


@pytest.mark.parametrize("n,W", [(1, 3), (2, 4)])
def test_koszul_dual_of_free_line(n, W):
    C = ce_complex(free_dgla([("v", n + 1)], W).dgla, W)
    H = ce_cohomology(C, (-3 * n - 3, 1)).trusted_dims()
    assert {k: d for k, d in H.items() if d} == {0: 1, -n: 1}


def test_product_unit_and_sign():
    C = ce_complex(obstruction_toy(), 3)
    one = C.unit()
    u = C.generator("x")
    assert ce_product(one, u) == u
    # x has degree 1, so its dual generator has degree 0 and is even
    assert (u * u).terms == {(0, 0): 2}
    assert str(u * u) == "2·(x·x)∨"
    w = C.generator("y")
    assert (w * w).is_zero()
    assert u * w == w * u


def test_product_too_long():
    C = ce_complex(obstruction_toy(), 2)
    u = C.generator("x")
    with pytest.raises(WindowTooSmall):
        ce_product(u * u, u)


def test_d_squared_zero_and_leibniz():
    g = adjoint_dgla(affine_line())
    C = ce_complex(g, 2)
    for n in C.degrees:
        if C.dim(n + 1) and C.dim(n + 2):
            assert (C.d_matrix(n + 1) @ C.d_matrix(n)).is_zero()
    F = free_dgla([("a", 1), ("b", 2)], 3).dgla
    C = ce_complex(F, 3)
    a, b = C.generator("a"), C.generator("[a,a]")
    lhs = (a * b).d()
    sign = -1 if a.degree % 2 else 1
    rhs = a.d() * b + (a * b.d()).scale(sign)
    assert lhs == rhs


def test_abelian_ce_is_polynomial():
    C = ce_complex(abelian_dgla([("a", 1), ("b", 1)]), 3)
    H = ce_cohomology(C, (0, 0))
    # generators of degree 0 and d = 0: all monomials up to length 3 survive
    assert H.dims[0] == 1 + 2 + 3 + 4


def test_morphism_pullback_commutes_with_d():
    g = obstruction_toy()
    f = DglaMorphism.identity(g)
    phi = ce_of_morphism(f, 3)
    C = ce_complex(g, 3)
    c = C.generator("x") * C.generator("y")
    assert phi.apply(c.d()) == phi.apply(c).d()
    assert phi.apply(c).terms == c.terms
