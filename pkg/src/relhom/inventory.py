"""Enumeration of indecomposable modules up to a total dimension bound.

Two families come with a completeness certificate:

* hereditary algebras whose underlying graph is Dynkin (the Tits form is
  positive definite); indecomposables correspond to positive roots;
* Nakayama algebras (every vertex has at most one incoming and one
  outgoing arrow); every indecomposable is uniserial, a quotient
  P(v)/rad^k P(v).

Everything else is searched heuristically and labelled best effort.
"""
from __future__ import annotations

import itertools
import zlib
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exactlin as el
from .quiveralg import BoundQuiverAlgebra
from .repmod import (
    ModuleError,
    Representation,
    cokernel,
    dual,
    find_isomorphism,
    hom_basis,
    hom_dim,
    image,
    injective,
    is_indecomposable,
    kernel,
    op_algebra,
    projective,
    quotient,
    radical_bases,
    simple,
    submodule,
    summands,
)

COMPLETE = "Complete"
BEST_EFFORT = "BestEffort"

EXHAUSTIVE_LIMIT = 4096
RANDOM_SAMPLES = 16


@dataclass
class Inventory:
    algebra: BoundQuiverAlgebra
    dim_bound: int
    modules: list[Representation]
    status: str
    certificate: str = ""
    # True when no indecomposable of larger dimension exists at all
    covers_all: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE

    def __iter__(self):
        return iter(self.modules)

    def __len__(self):
        return len(self.modules)

    def __getitem__(self, i):
        return self.modules[i]

    def index_of(self, M: Representation) -> int | None:
        """Position of the inventory module isomorphic to the indecomposable M."""
        for i, X in enumerate(self.modules):
            if X.dims == M.dims and find_isomorphism(X, M) is not None:
                return i
        return None


# recognisers

def tits_form_positive(alg: BoundQuiverAlgebra) -> bool:
    """Positive definiteness of q(x) = sum x_v^2 - sum_{a: i->j} x_i x_j."""
    n = len(alg.vertices)
    if n == 0:
        return True
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = Fraction(2)
    for a in alg.arrows:
        i, j = alg.vertex_index(a.source), alg.vertex_index(a.target)
        g[i][j] -= 1
        g[j][i] -= 1
    # Sylvester: all leading principal minors positive (exact Gaussian elimination)
    m = [row[:] for row in g]
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for r in range(k + 1, n):
            f = m[r][k] / m[k][k]
            for c in range(k, n):
                m[r][c] -= f * m[k][c]
    return True


def is_dynkin_hereditary(alg: BoundQuiverAlgebra) -> bool:
    return alg.is_hereditary() and tits_form_positive(alg)


def is_nakayama(alg: BoundQuiverAlgebra) -> bool:
    return all(len(alg.quiver.in_arrows(v)) <= 1 and len(alg.quiver.out_arrows(v)) <= 1
               for v in alg.vertices)


def tits_form(alg: BoundQuiverAlgebra, x) -> int:
    idx = alg.vertex_index
    return sum(c * c for c in x) - sum(x[idx(a.source)] * x[idx(a.target)] for a in alg.arrows)


def euler_form(alg: BoundQuiverAlgebra, x, y) -> int:
    idx = alg.vertex_index
    return (sum(a * b for a, b in zip(x, y))
            - sum(x[idx(a.source)] * y[idx(a.target)] for a in alg.arrows))


def positive_roots(alg: BoundQuiverAlgebra, bound: int) -> list[tuple[int, ...]]:
    """Nonnegative nonzero vectors with q = 1 and total at most ``bound``."""
    n = len(alg.vertices)
    out = []
    for total in range(1, bound + 1):
        for x in _compositions(total, n):
            if tits_form(alg, x) == 1:
                out.append(x)
    return out


def all_positive_roots(alg: BoundQuiverAlgebra) -> list[tuple[int, ...]]:
    """All positive roots of a Dynkin quiver (finitely many)."""
    bound, roots = 1, []
    while True:
        roots = positive_roots(alg, bound)
        if not any(sum(r) == bound for r in roots):
            return roots
        bound += 1


def _compositions(total: int, parts: int):
    if parts == 0:
        return
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        prev, x = -1, []
        for c in cut + (total + parts - 1,):
            x.append(c - prev - 1)
            prev = c
        yield tuple(x)


def dim_vectors(alg: BoundQuiverAlgebra, bound: int):
    n = len(alg.vertices)
    for total in range(1, bound + 1):
        yield from _compositions(total, n)


# constructions

def _seed(alg: BoundQuiverAlgebra, extra: str = "") -> int:
    return zlib.crc32((alg.signature() + extra).encode())


def random_representation(alg: BoundQuiverAlgebra, dims, rng) -> Representation:
    maps = {}
    for a in alg.arrows:
        r, c = dims[alg.vertex_index(a.target)], dims[alg.vertex_index(a.source)]
        maps[a.label] = rng.integers(0, alg.p, size=(r, c))
    return Representation(alg, dims, maps, check=not alg.is_hereditary())


def _arrow_entries(alg, dims) -> int:
    return sum(dims[alg.vertex_index(a.source)] * dims[alg.vertex_index(a.target)] for a in alg.arrows)


def all_representations(alg: BoundQuiverAlgebra, dims):
    """Every representation with the given dimension vector that satisfies the relations."""
    shapes = [(a.label, dims[alg.vertex_index(a.target)], dims[alg.vertex_index(a.source)])
              for a in alg.arrows]
    total = sum(r * c for _, r, c in shapes)
    for entries in itertools.product(range(alg.p), repeat=total):
        maps, pos = {}, 0
        for lab, r, c in shapes:
            maps[lab] = np.array(entries[pos:pos + r * c], dtype=np.int64).reshape(r, c)
            pos += r * c
        try:
            yield Representation(alg, dims, maps)
        except ModuleError:
            continue


def radical_series_quotients(P: Representation) -> list[Representation]:
    """P/rad^k P for k = 1, 2, ... until the quotient is P itself."""
    out = []
    layer = {v: el.eye(P.dim_at(v)) for v in P.algebra.vertices}
    layers = []
    while any(b.shape[1] for b in layer.values()):
        sub, inc = submodule(P, layer)
        rad = radical_bases(sub)
        layer = {v: el.mul(inc.maps[v], rad[v], P.p) for v in P.algebra.vertices}
        layers.append(layer)
    for lay in layers:
        Q, _ = quotient(P, lay)
        out.append(Q)
    return out


class _Collector:
    """Duplicate-free accumulation keyed by cheap invariants first."""

    def __init__(self, alg: BoundQuiverAlgebra, bound: int):
        self.alg = alg
        self.bound = bound
        self.probes = [simple(alg, v) for v in alg.vertices] + [projective(alg, v) for v in alg.vertices]
        self.buckets: dict[tuple, list[Representation]] = {}
        self.order: list[Representation] = []

    def key(self, M: Representation) -> tuple:
        return (M.dims, hom_dim(M, M)) + tuple(hom_dim(P, M) for P in self.probes)

    def add(self, M: Representation) -> bool:
        if M.is_zero() or M.total_dim > self.bound:
            return False
        k = self.key(M)
        bucket = self.buckets.setdefault(k, [])
        for X in bucket:
            if find_isomorphism(X, M) is not None:
                return False
        bucket.append(M)
        self.order.append(M)
        return True

    def add_all(self, M: Representation) -> int:
        if M.is_zero():
            return 0
        return sum(self.add(X) for X in summands(M))

    def sorted(self) -> list[Representation]:
        idx = {id(M): i for i, M in enumerate(self.order)}
        return sorted(self.order, key=lambda M: (M.total_dim, tuple(-d for d in M.dims), idx[id(M)]))


def _dynkin(alg: BoundQuiverAlgebra, bound: int) -> list[Representation]:
    coll = _Collector(alg, bound)
    rng = np.random.default_rng(_seed(alg, "dynkin"))
    for root in positive_roots(alg, bound):
        for _ in range(256):
            M = random_representation(alg, root, rng)
            if is_indecomposable(M):
                coll.add(M)
                break
        else:  # pragma: no cover - a generic representation of a root is indecomposable
            raise ModuleError(f"no indecomposable found for root {root}")
    return coll.sorted()


def _nakayama(alg: BoundQuiverAlgebra, bound: int) -> list[Representation]:
    coll = _Collector(alg, bound)
    for v in alg.vertices:
        for Q in radical_series_quotients(projective(alg, v)):
            coll.add(Q)
    return coll.sorted()


def _best_effort(alg: BoundQuiverAlgebra, bound: int) -> list[Representation]:
    coll = _Collector(alg, bound)
    for v in alg.vertices:
        coll.add(simple(alg, v))
        coll.add(projective(alg, v))
        coll.add(injective(alg, v))
        for Q in radical_series_quotients(projective(alg, v)):
            coll.add_all(Q)
        op = op_algebra(alg)
        for Q in radical_series_quotients(projective(op, v)):
            coll.add_all(dual(Q))
    rng = np.random.default_rng(_seed(alg, "search"))
    for dims in dim_vectors(alg, bound):
        n_entries = _arrow_entries(alg, dims)
        if alg.p ** n_entries <= EXHAUSTIVE_LIMIT:
            for M in all_representations(alg, dims):
                coll.add_all(M)
        elif alg.is_hereditary():
            for _ in range(RANDOM_SAMPLES):
                coll.add_all(random_representation(alg, dims, rng))
    # one round of kernels, images and cokernels of basis maps between found modules
    base = list(coll.order)
    for X, Y in itertools.product(base, repeat=2):
        for f in hom_basis(X, Y):
            if f.is_zero():
                continue
            for M, _ in (kernel(f), image(f), cokernel(f)):
                coll.add_all(M)
    return coll.sorted()


_CACHE: dict[tuple[int, int], Inventory] = {}


def enumerate_indecomposables(alg: BoundQuiverAlgebra, dim_bound: int) -> Inventory:
    """Indecomposables of total dimension at most ``dim_bound``, up to isomorphism."""
    if dim_bound < 1:
        raise ValueError("dim_bound must be at least 1")
    key = (id(alg), dim_bound)
    hit = _CACHE.get(key)
    if hit is not None and hit.algebra is alg:
        return hit
    if not alg.arrows:
        mods = [simple(alg, v) for v in alg.vertices]
        inv = Inventory(alg, dim_bound, mods, COMPLETE, "semisimple", covers_all=True)
    elif is_dynkin_hereditary(alg):
        mods = _dynkin(alg, dim_bound)
        largest = max(sum(r) for r in all_positive_roots(alg))
        inv = Inventory(alg, dim_bound, mods, COMPLETE, "dynkin-roots", covers_all=largest <= dim_bound)
    elif is_nakayama(alg):
        mods = _nakayama(alg, dim_bound)
        largest = max(projective(alg, v).total_dim for v in alg.vertices)
        inv = Inventory(alg, dim_bound, mods, COMPLETE, "nakayama-uniserial", covers_all=largest <= dim_bound)
    else:
        inv = Inventory(alg, dim_bound, _best_effort(alg, dim_bound), BEST_EFFORT, "search")
    _CACHE[key] = inv
    return inv


def clear_cache():
    _CACHE.clear()


def install(inv: Inventory):
    """Seed the in-memory cache with an inventory loaded from elsewhere."""
    _CACHE[(id(inv.algebra), inv.dim_bound)] = inv
