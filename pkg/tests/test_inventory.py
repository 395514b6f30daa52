import pytest

from relhom.inventory import (
    BEST_EFFORT,
    COMPLETE,
    all_positive_roots,
    enumerate_indecomposables,
    is_dynkin_hereditary,
    is_nakayama,
    tits_form_positive,
)
from relhom.quiveralg import linear_quiver
from relhom.repmod import is_indecomposable, is_isomorphic


@pytest.mark.parametrize("fixture,bound,count,status", [
    ("a2", 6, 3, COMPLETE),
    ("a3", 6, 6, COMPLETE),
    ("dual", 6, 2, COMPLETE),
    ("ss2", 6, 2, COMPLETE),
    # two simples plus the p + 1 = 6 regular modules of dimension (1, 1)
    ("kron", 2, 8, BEST_EFFORT),
    # and the two modules of dimension (1, 2) and (2, 1)
    ("kron", 3, 10, BEST_EFFORT),
])
def test_inventory_counts(request, fixture, bound, count, status):
    alg = request.getfixturevalue(fixture)
    inv = enumerate_indecomposables(alg, bound)
    assert len(inv) == count
    assert inv.status == status


def test_inventory_members_are_indecomposable_and_distinct(a3, kron):
    for alg, bound in ((a3, 6), (kron, 3)):
        mods = list(enumerate_indecomposables(alg, bound))
        assert all(is_indecomposable(M) for M in mods)
        for i, M in enumerate(mods):
            assert not any(is_isomorphic(M, N) for N in mods[:i])


def test_dynkin_root_count():
    # A_n has n(n+1)/2 positive roots
    for n, p in ((2, 5), (3, 7), (4, 11)):
        alg = linear_quiver(n, p)
        assert len(all_positive_roots(alg)) == n * (n + 1) // 2
        inv = enumerate_indecomposables(alg, 10)
        assert sorted(M.dims for M in inv) == sorted(all_positive_roots(alg))


def test_recognisers(a2, kron, dual, ss2):
    assert is_dynkin_hereditary(a2) and tits_form_positive(a2)
    assert not is_dynkin_hereditary(kron)
    assert is_nakayama(dual)
    assert not is_nakayama(kron)


def test_small_bound_is_not_covering(a3):
    inv = enumerate_indecomposables(a3, 2)
    assert inv.complete and not inv.covers_all
    assert len(inv) == 5
    with pytest.raises(ValueError):
        enumerate_indecomposables(a3, 0)
