from fractions import Fraction

import pytest

from dglakit.deformation import semi_universal_model
from dglakit.dgla import Dgla
from dglakit.equivariant import (ComponentAction, GroupAction, equivariant_complement,
                                 equivariant_kuranishi, equivariant_semi_universal, reynolds,
                                 validate_action)
from dglakit.errors import InvalidAction, NotAveragable, NotStable
from dglakit.examples import (abelian_dgla, obstruction_toy, permutation_toy,
                              s3_on_permutation_toy, split_toy, z2_on_obstruction_toy,
                              z2_on_split_toy)
from dglakit.linalg import Matrix, Subspace, complement

SWAP = Matrix.from_rows([[0, 1], [1, 0]])
half = Fraction(1, 2)


def test_validate_actions():
    assert validate_action(obstruction_toy(), z2_on_obstruction_toy()) == []
    assert validate_action(split_toy(), z2_on_split_toy()) == []
    assert validate_action(permutation_toy(), s3_on_permutation_toy()) == []
    assert validate_action(obstruction_toy(), GroupAction.trivial()) == []


def test_bad_action_on_obstruction_toy():
    act = GroupAction.finite({"s": {1: [[-1]], 2: [[-1]]}}, [["s", "s"]])
    report = validate_action(obstruction_toy(), act)
    assert ("BracketViolation", ("s", "x", "x")) in {(v.axiom, v.witness) for v in report}


def test_relation_violation():
    act = GroupAction.finite({"s": {1: [[2]]}}, [["s", "s"]])
    assert "RelationViolation" in {v.axiom for v in validate_action(abelian_dgla([("a", 1)]), act)}


def test_torus_action():
    g = Dgla.build([("a", 1), ("b", 1), ("c", 2)], {}, {("a", "b"): {"c": 1}})
    ok = GroupAction.torus(1, {"a": [1], "b": [-1]})
    assert validate_action(g, ok) == []
    bad = GroupAction.torus(1, {"a": [1], "b": [1]})
    assert {v.axiom for v in validate_action(g, bad)} == {"BracketViolation"}


def test_reynolds():
    swap = ComponentAction("finite", 2, generators=(SWAP,))
    assert reynolds(swap) == Matrix.from_rows([[half, half], [half, half]])
    assert reynolds(ComponentAction("finite", 3)) == Matrix.identity(3)
    assert reynolds(ComponentAction("torus", 1, weights=((1,),))).is_zero()


def test_reynolds_projector_properties():
    act = s3_on_permutation_toy().on(permutation_toy(), 1)
    R = reynolds(act)
    assert R @ R == R
    for S in act.generators:
        assert S @ R == R and R @ S == R
    assert len(act.elements()) == 6


def test_infinite_image_rejected():
    act = ComponentAction("finite", 2, generators=(Matrix.from_rows([[1, 1], [0, 1]]),))
    with pytest.raises(NotAveragable):
        reynolds(act)


def test_equivariant_complement_swap():
    swap = ComponentAction("finite", 2, generators=(SWAP,))
    U = Subspace.span([[1, 1]], 2)
    W = equivariant_complement(U, Subspace.full(2), swap)
    assert W == Subspace.span([[1, -1]], 2)
    assert equivariant_complement(U, U, swap).dim == 0


def test_equivariant_complement_trivial():
    trivial = ComponentAction("finite", 3)
    U = Subspace.span([[1, 2, 0]], 3)
    assert equivariant_complement(U, Subspace.full(3), trivial) == complement(U, Subspace.full(3))


def test_unstable_rejected():
    swap = ComponentAction("finite", 2, generators=(SWAP,))
    with pytest.raises(NotStable):
        equivariant_complement(Subspace.span([[1, 0]], 2), Subspace.full(2), swap)


def test_semi_universal_split_toy():
    em = equivariant_semi_universal(split_toy(), z2_on_split_toy())
    k = em.model.k
    assert k.labels == ("x2",)
    assert em.action.matrix("s", k, 1) == Matrix.from_rows([[-1]])
    assert em.equivariant


def test_semi_universal_trivial_matches_plain():
    g = permutation_toy()
    em = equivariant_semi_universal(g, GroupAction.trivial())
    assert em.model.k == semi_universal_model(g).k


def test_semi_universal_obstruction_toy():
    g = obstruction_toy()
    em = equivariant_semi_universal(g, z2_on_obstruction_toy())
    assert em.model.k == g
    assert em.action.matrix("s", g, 1) == Matrix.from_rows([[-1]])
    assert em.action.matrix("s", g, 2) == Matrix.identity(1)


def test_semi_universal_s3_is_stable():
    g = permutation_toy()
    em = equivariant_semi_universal(g, s3_on_permutation_toy())
    assert em.equivariant
    assert validate_action(em.model.k, em.action) == []
    # E¹ is the invariant line a1 + a2 + a3
    E1 = em.model.splitting.E1
    assert E1 == Subspace.span([[1, 1, 1]], 3)


def test_invalid_action_rejected():
    act = GroupAction.finite({"s": {1: [[-1]], 2: [[-1]]}}, [["s", "s"]])
    with pytest.raises(InvalidAction):
        equivariant_semi_universal(obstruction_toy(), act)


def test_kuranishi_obstruction_toy():
    ek = equivariant_kuranishi(obstruction_toy(), z2_on_obstruction_toy(), 4)
    assert ek.result.obstruction_string() == "ξ1^2·y"
    assert ek.rho_h1["s"] == Matrix.from_rows([[-1]])
    assert ek.rho_h2["s"] == Matrix.identity(1)
    assert ek.checks == {"s": True}


def test_kuranishi_trivial():
    ek = equivariant_kuranishi(permutation_toy(), GroupAction.trivial(), 3)
    assert ek.checks == {}
    assert ek.result.base.startswith("k[ξ1,ξ2]")


def test_kuranishi_abelian_with_action():
    g = abelian_dgla([("a", 1), ("b", 1)])
    act = GroupAction.finite({"s": {1: SWAP}}, [["s", "s"]])
    ek = equivariant_kuranishi(g, act, 3)
    assert ek.result.obstruction_string() == "0"
    assert ek.checks == {"s": True}


def test_kuranishi_s3():
    ek = equivariant_kuranishi(permutation_toy(), s3_on_permutation_toy(), 4)
    assert ek.checks == {"s1": True, "s2": True}


def test_kuranishi_torus():
    g = Dgla.build([("a", 1), ("b", 1), ("c", 2)], {}, {("a", "b"): {"c": 1}})
    ek = equivariant_kuranishi(g, GroupAction.torus(1, {"a": [1], "b": [-1]}), 3)
    assert ek.checks == {"weights": True}
    assert ek.result.obstruction_string() == "ξ1·ξ2·c"
