"""Dense linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries in ``range(p)``.  Every
function here is pure and returns fresh arrays.  Pivoting always takes the
first nonzero entry in column order so results are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sympy import ZZ
from sympy.polys.galoistools import gf_factor


@dataclass(frozen=True)
class FieldSpec:
    p: int

    def __post_init__(self):
        if self.p < 2 or not _is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def mat(rows, p: int, shape=None) -> np.ndarray:
    """Build a reduced matrix from nested lists (``shape`` for empty ones)."""
    a = np.array(rows, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    elif a.ndim == 1 and a.size == 0:
        a = a.reshape(0, 0)
    return a % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return (a @ b) % p


def inv_scalar(x: int, p: int) -> int:
    return pow(int(x) % p, p - 2, p)


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int], int]:
    """Reduced row echelon form, pivot columns and rank."""
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * inv_scalar(a[r, c], p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots, r


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return rref(m, p)[2]


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the right null space of ``m``."""
    rows, cols = m.shape
    if rows == 0:
        return eye(cols)
    r, pivots, rk = rref(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    k = zeros(cols, len(free))
    for j, f in enumerate(free):
        k[f, j] = 1
        for i, pc in enumerate(pivots):
            k[pc, j] = (-r[i, f]) % p
    return k


def image_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns of ``m`` at pivot positions; a basis of the column space."""
    if m.size == 0:
        return zeros(m.shape[0], 0)
    _, pivots, _ = rref(m, p)
    return m[:, pivots] % p


def row_space(m: np.ndarray, p: int) -> np.ndarray:
    """Nonzero rows of the RREF."""
    if m.shape[0] == 0:
        return zeros(0, m.shape[1])
    r, _, rk = rref(m, p)
    return r[:rk]


def solve(m: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution X of m X = b, or None if b is not in the image."""
    rows, cols = m.shape
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if rows == 0:
        return zeros(cols, b.shape[1])
    aug = np.concatenate([m % p, b % p], axis=1)
    r, pivots, rk = rref(aug, p)
    if any(pc >= cols for pc in pivots):
        return None
    x = zeros(cols, b.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols:]
    return x


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    x = solve(m, eye(n), p)
    if x is None or rank(m, p) < n:
        raise ValueError("matrix is singular")
    return x


def left_nullspace(m: np.ndarray, p: int) -> np.ndarray:
    """Rows y with y m = 0, stacked as a matrix."""
    return kernel_basis(m.T, p).T


def complement_columns(sub: np.ndarray, n: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the columns of ``sub`` to F_p^n."""
    if n == 0:
        return zeros(0, 0)
    sub = sub.reshape(n, -1)
    k = sub.shape[1]
    _, pivots, _ = rref(np.concatenate([sub, eye(n)], axis=1), p)
    idx = [c - k for c in pivots if c >= k]
    return eye(n)[:, idx]


# polynomials: coefficient lists, highest degree first, entries in range(p)

def min_poly(m: np.ndarray, p: int) -> list[int]:
    """Monic minimal polynomial of a square matrix (highest degree first)."""
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("min_poly needs a square matrix")
    if n == 0:
        return [1]
    powers = [eye(n).reshape(-1)]
    cur = eye(n)
    while True:
        cur = mul(cur, m, p)
        powers.append(cur.reshape(-1))
        k = len(powers) - 1
        a = np.stack(powers[:-1], axis=1)
        x = solve(a, powers[-1], p)
        if x is not None:
            # m^k = sum x_i m^i
            coeffs = [1] + [int((-x[i, 0]) % p) for i in range(k - 1, -1, -1)]
            return coeffs
        if k > n:  # pragma: no cover - Cayley-Hamilton bound
            raise AssertionError("minimal polynomial degree exceeded n")


def poly_eval(poly: list[int], m: np.ndarray, p: int) -> np.ndarray:
    """Horner evaluation of a polynomial at a square matrix."""
    n = m.shape[0]
    acc = zeros(n, n)
    for c in poly:
        acc = (mul(acc, m, p) + c * eye(n)) % p
    return acc


def factor_poly(poly: list[int], p: int) -> list[tuple[list[int], int]]:
    """Monic irreducible factors with multiplicity."""
    _, facs = gf_factor([ZZ(c) for c in poly], p, ZZ)
    return [([int(c) % p for c in f], k) for f, k in facs]


def poly_pow(poly: list[int], k: int, p: int) -> list[int]:
    out = [1]
    for _ in range(k):
        prod = [0] * (len(out) + len(poly) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(poly):
                prod[i + j] = (prod[i + j] + a * b) % p
        out = prod
    return out


def fitting_power(m: np.ndarray, p: int) -> np.ndarray:
    """m^n for n = size; its kernel and image give the Fitting split of m."""
    n = m.shape[0]
    out = eye(n)
    base = m % p
    k = max(n, 1)
    while k:
        if k & 1:
            out = mul(out, base, p)
        base = mul(base, base, p)
        k >>= 1
    return out
