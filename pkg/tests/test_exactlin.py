import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relhom import exactlin as el


def matrices(p, max_rows=3, max_cols=3):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def brute_kernel_size(m, p):
    cols = m.shape[1]
    return sum(1 for v in itertools.product(range(p), repeat=cols)
               if not ((m @ np.array(v, dtype=np.int64)) % p).any())


def test_field_spec_rejects_composites():
    with pytest.raises(ValueError):
        el.FieldSpec(6)
    assert el.FieldSpec(7).p == 7


def test_rref_small_example():
    r, piv, rk = el.rref(el.mat([[2, 4], [1, 2]], 5), 5)
    assert rk == 1 and piv == [0]
    assert r[0].tolist() == [1, 2]


def test_inverse_and_singular():
    m = el.mat([[1, 2], [3, 4]], 5)
    inv = el.inverse(m, 5)
    assert (el.mul(m, inv, 5) == el.eye(2)).all()
    with pytest.raises(ValueError):
        el.inverse(el.mat([[1, 2], [2, 4]], 5), 5)


def test_empty_shapes():
    assert el.rank(el.zeros(0, 3), 5) == 0
    assert el.kernel_basis(el.zeros(0, 3), 5).shape == (3, 3)
    assert el.complement_columns(el.zeros(0, 0), 0, 5).shape == (0, 0)


@settings(max_examples=60, deadline=None)
@given(matrices(3))
def test_rank_matches_brute_force_kernel_count(rows):
    # oracle: |ker| = p^(cols - rank), counted by enumeration
    m = np.array(rows, dtype=np.int64)
    assert brute_kernel_size(m, 3) == 3 ** (m.shape[1] - el.rank(m, 3))


@settings(max_examples=60, deadline=None)
@given(matrices(5))
def test_kernel_basis_is_kernel(rows):
    m = np.array(rows, dtype=np.int64)
    k = el.kernel_basis(m, 5)
    assert not el.mul(m, k, 5).any()
    assert k.shape[1] == m.shape[1] - el.rank(m, 5)
    assert el.rank(k, 5) == k.shape[1]


@settings(max_examples=60, deadline=None)
@given(matrices(5), st.lists(st.integers(0, 4), min_size=3, max_size=3))
def test_solve_finds_solutions_of_consistent_systems(rows, x):
    m = np.array(rows, dtype=np.int64)
    x = np.array(x[: m.shape[1]], dtype=np.int64).reshape(-1, 1)
    b = el.mul(m, x, 5)
    sol = el.solve(m, b, 5)
    assert sol is not None and (el.mul(m, sol, 5) == b).all()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=9, max_size=9))
def test_min_poly_annihilates_and_is_minimal(entries):
    p = 7
    m = np.array(entries, dtype=np.int64).reshape(3, 3)
    poly = el.min_poly(m, p)
    assert not el.poly_eval(poly, m, p).any()
    deg = len(poly) - 1
    # minimality: I, m, ..., m^(deg-1) are linearly independent
    powers = [np.linalg.matrix_power(m, k) % p if k else el.eye(3) for k in range(deg)]
    flat = np.stack([(pw % p).reshape(-1) for pw in powers], axis=1) if powers else el.zeros(9, 0)
    assert el.rank(flat, p) == deg


def test_factor_poly_reconstructs():
    # (x + 1)^2 (x + 2) over F_5, coefficients high to low
    poly = [1, 4, 5 % 5, 2]
    facs = el.factor_poly(poly, 5)
    acc = [1]
    for f, k in facs:
        acc = np.polymul(acc, el.poly_pow(f, k, 5)) % 5
    assert [int(c) for c in acc] == poly
