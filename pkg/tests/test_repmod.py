import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relhom.inventory import enumerate_indecomposables
from relhom.quiveralg import linear_quiver
from relhom.repmod import (
    AlgebraMismatch,
    InvariantViolation,
    ModuleMorphism,
    Representation,
    ShortSequence,
    NotExact,
    cokernel,
    decompose,
    direct_sum,
    dual,
    hom_basis,
    hom_dim,
    identity,
    image,
    injective,
    is_indecomposable,
    is_isomorphic,
    kernel,
    projective,
    simple,
    summands,
)


def brute_hom_count(M, N):
    """Number of module maps M -> N, by enumerating all vertexwise matrices."""
    alg, p = M.algebra, M.p
    shapes = [(N.dim_at(v), M.dim_at(v)) for v in alg.vertices]
    sizes = [r * c for r, c in shapes]
    count = 0
    for entries in itertools.product(range(p), repeat=sum(sizes)):
        maps, pos = {}, 0
        for v, (r, c), s in zip(alg.vertices, shapes, sizes):
            maps[v] = np.array(entries[pos:pos + s], dtype=np.int64).reshape(r, c)
            pos += s
        ok = True
        for a in alg.arrows:
            lhs = (N.maps[a.label] @ maps[a.source]) % p
            rhs = (maps[a.target] @ M.maps[a.label]) % p
            if not np.array_equal(lhs, rhs):
                ok = False
                break
        count += ok
    return count


def small_modules(alg, bound):
    return list(enumerate_indecomposables(alg, bound))


@pytest.mark.parametrize("fixture", ["a2", "dual", "kron"])
def test_hom_dim_matches_brute_force(request, fixture):
    alg = request.getfixturevalue(fixture)
    mods = [M for M in small_modules(alg, 2) if M.total_dim <= 2]
    for M, N in itertools.product(mods, repeat=2):
        if sum(N.dim_at(v) * M.dim_at(v) for v in alg.vertices) > 4:
            continue
        assert alg.p ** hom_dim(M, N) == brute_hom_count(M, N), (M, N)


def test_hom_between_a2_projectives(a2):
    P1, P2 = projective(a2, "1"), projective(a2, "2")
    S1, S2 = simple(a2, "1"), simple(a2, "2")
    assert P1.dims == (1, 1) and P2.dims == (0, 1)
    assert hom_dim(P2, P1) == 1 and hom_dim(P1, P2) == 0
    assert hom_dim(P1, S1) == 1 and hom_dim(S1, P1) == 0
    assert hom_dim(S2, P1) == 1


def test_kernel_image_cokernel_of_inclusion(a2):
    P1, P2 = projective(a2, "1"), projective(a2, "2")
    (f,) = hom_basis(P2, P1)
    K, _ = kernel(f)
    I, _ = image(f)
    C, _ = cokernel(f)
    assert K.is_zero()
    assert I.dims == (0, 1)
    assert is_isomorphic(C, simple(a2, "1"))


def test_invalid_module_and_morphism_are_rejected(dual, a2):
    with pytest.raises(InvariantViolation):
        Representation(dual, (1,), {"x": [[1]]})
    with pytest.raises(InvariantViolation):
        Representation(a2, (1, 1), {"b": [[1]]})
    P1, S1 = projective(a2, "1"), simple(a2, "1")
    with pytest.raises(InvariantViolation):
        ModuleMorphism(S1, P1, {"1": [[1]]})
    with pytest.raises(AlgebraMismatch):
        hom_dim(S1, simple(dual, "1"))


def test_short_sequence_must_be_exact(a2):
    P1 = projective(a2, "1")
    with pytest.raises(NotExact):
        ShortSequence(identity(P1), identity(P1))


def test_decompose_sum_of_projectives(a3):
    mods = [projective(a3, v) for v in a3.vertices]
    M, _, _ = direct_sum(mods, a3)
    parts = decompose(M)
    assert sorted(X.dims for X, _, _ in parts) == sorted(P.dims for P in mods)
    total = None
    for X, inc, proj in parts:
        assert proj.compose(inc).is_iso()
        term = inc.compose(proj)
        total = term if total is None else total + term
    assert np.array_equal(total.vec(), identity(M).vec())


def test_dual_of_projective_is_injective(a3):
    for v in a3.vertices:
        assert dual(projective(a3, v)).dims == projective(a3, v).dims
        I = injective(a3, v)
        assert hom_dim(simple(a3, v), I) == 1
        assert is_indecomposable(I)


def test_kronecker_regular_modules_are_pairwise_distinct(kron):
    ones = [M for M in small_modules(kron, 2) if M.dims == (1, 1)]
    assert len(ones) == kron.p + 1
    for M, N in itertools.combinations(ones, 2):
        assert not is_isomorphic(M, N)


A3 = linear_quiver(3, 7)


@st.composite
def module_lists(draw):
    alg = A3
    inv = small_modules(alg, 6)
    idx = draw(st.lists(st.integers(0, len(inv) - 1), min_size=1, max_size=3))
    return alg, [inv[i] for i in idx]


@settings(max_examples=25, deadline=None)
@given(module_lists())
def test_krull_schmidt_recovers_summands(data):
    alg, mods = data
    M, _, _ = direct_sum(mods, alg)
    found = summands(M)
    assert len(found) == len(mods)
    remaining = list(mods)
    for X in found:
        match = next(i for i, Y in enumerate(remaining) if is_isomorphic(X, Y))
        remaining.pop(match)


@settings(max_examples=25, deadline=None)
@given(module_lists(), module_lists())
def test_hom_is_additive(d1, d2):
    alg, left = d1
    _, right = d2
    M, _, _ = direct_sum(left, alg)
    N, _, _ = direct_sum(right, alg)
    assert hom_dim(M, N) == sum(hom_dim(X, Y) for X in left for Y in right)
