import pytest

from relhom.quiveralg import (
    AlgebraError,
    Arrow,
    FieldTooSmall,
    InvalidRelation,
    NotFiniteDimensional,
    Quiver,
    Relation,
    TriangularGluing,
    build_algebra,
    dual_numbers,
    glue_triangular,
    kronecker,
    linear_quiver,
    opposite,
    point,
    radical_basis,
    semisimple,
)
from relhom.repmod import projective, Representation


def test_path_algebra_dimensions():
    # oracle: number of paths (including trivial ones) in each quiver
    assert linear_quiver(2, 5).dim == 3
    assert linear_quiver(3, 7).dim == 6
    assert kronecker(5).dim == 4
    assert dual_numbers(5).dim == 2
    assert semisimple(2, 5).dim == 2
    assert point(5).dim == 1


def test_field_must_exceed_dimension():
    with pytest.raises(FieldTooSmall):
        linear_quiver(3, 5)
    with pytest.raises(ValueError):
        linear_quiver(2, 4)


def test_relation_must_be_admissible():
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"),))
    with pytest.raises(InvalidRelation):
        build_algebra(q, [Relation(((1, ("a",)),))], 5, 2)


def test_nilbound_too_small_is_detected():
    q = Quiver(("1",), (Arrow("x", "1", "1"),))
    with pytest.raises(NotFiniteDimensional):
        build_algebra(q, [Relation(((1, ("x", "x", "x")),))], 7, 2)


def test_commutative_square_relation():
    q = Quiver(("1", "2", "3", "4"), (Arrow("a", "1", "2"), Arrow("b", "2", "4"),
                                      Arrow("c", "1", "3"), Arrow("d", "3", "4")))
    alg = build_algebra(q, [Relation(((1, ("a", "b")), (-1, ("c", "d"))))], 11, 3)
    # 4 trivial + 4 arrows + one surviving length-2 path
    assert alg.dim == 9
    assert len(radical_basis(alg)) == 5


def test_relations_vanish_in_regular_representation():
    alg = dual_numbers(5)
    P = projective(alg, "1")
    assert P.dims == (2,)
    P.check_relations()


def test_opposite_twice_has_same_basis_size():
    for alg in (linear_quiver(3, 7), kronecker(5), dual_numbers(5)):
        assert opposite(opposite(alg)).dim == alg.dim
        assert opposite(alg).signature() != alg.signature() or not alg.arrows or alg.name == "k[x]/(x^2)"


def test_glue_two_points_gives_a2():
    R = glue_triangular(TriangularGluing(point(5), point(5), (("c", "1", "1"),)))
    assert R.dim == 3
    assert [a.label for a in R.arrows] == ["c"]
    assert R.vertices == ("S1", "T1")


def test_gluing_rejects_bad_arrow_and_mixed_fields():
    with pytest.raises(AlgebraError):
        glue_triangular(TriangularGluing(point(5), point(5), (("c", "9", "1"),)))
    with pytest.raises(AlgebraError):
        glue_triangular(TriangularGluing(point(5), point(7)))


def test_signature_is_canonical_text():
    sig = linear_quiver(2, 5).signature()
    assert sig == "field p=5\nvertex 1\nvertex 2\narrow a: 1 -> 2\nnilbound 2\n"


def test_path_convention_right_to_left_matrices():
    # a.b acts as M_b M_a
    alg = linear_quiver(3, 7)
    M = Representation(alg, (1, 2, 1), {"a1": [[1], [2]], "a2": [[3, 4]]})
    pm = M.path_matrix(alg.quiver.path(("a1", "a2")))
    assert pm.tolist() == [[(3 * 1 + 4 * 2) % 7]]
