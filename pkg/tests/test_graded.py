from fractions import Fraction

from dglakit.graded import GradedVectorSpace as GV, dual, koszul_swap, shift, tensor


def test_shift():
    assert shift(GV.k(0), 2).dims() == {-2: 1}
    V = GV.from_basis([("a", 1), ("b", 3)])
    assert shift(V, 0) == V
    assert shift(GV.k(3), -1).dims() == {4: 1}


def test_dual():
    assert dual(GV.k(2, "v")).basis() == [("v∨", -2)]
    assert dual(GV.from_components({0: ["a", "b"]})).dims() == {0: 2}
    V = GV.from_basis([("a", 1), ("b", -1)])
    assert dual(V).dims() == {-1: 1, 1: 1}
    assert dual(V).degree_of("a∨") == -1


def test_tensor():
    assert tensor(GV.k(1, "a"), GV.k(1, "b")).basis() == [("a⊗b", 2)]
    V = GV.from_basis([("a", 1), ("b", 2), ("c", 2)])
    assert tensor(V, GV.k(0)) == V
    sq = tensor(GV.from_components({0: ["a", "b"]}), GV.from_components({0: ["c", "d"]}))
    assert sq.dims() == {0: 4}


def swap_coeff(p, q):
    s = koszul_swap(GV.k(p, "v"), GV.k(q, "w"))
    return s.apply("v⊗w")["w⊗v"]


def test_koszul_sign():
    assert swap_coeff(1, 1) == -1
    assert swap_coeff(0, 5) == 1
    assert swap_coeff(2, 3) == 1


def test_swap_is_involution():
    V = GV.from_basis([("a", 1), ("b", 2)])
    W = GV.from_basis([("c", 1), ("d", 0)])
    twice = koszul_swap(W, V) @ koszul_swap(V, W)
    for n in twice.source.degrees:
        B = twice.block(n)
        assert all(B[i, j] == Fraction(int(i == j)) for i in range(B.rows) for j in range(B.cols))
