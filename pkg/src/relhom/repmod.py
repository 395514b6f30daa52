"""Finite-dimensional left modules given as quiver representations.

A representation stores one vector space dimension per vertex and one
matrix per arrow (shape target x source).  Morphisms store one matrix per
vertex.  Everything is immutable once built.
"""
from __future__ import annotations

from collections import Counter
from functools import reduce
from itertools import combinations

import numpy as np

from . import exactlin as el
from .quiveralg import BoundQuiverAlgebra, Path, opposite


class ModuleError(ValueError):
    pass


class InvariantViolation(ModuleError):
    pass


class AlgebraMismatch(ModuleError):
    pass


class ZeroModule(ModuleError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


class Representation:
    def __init__(self, algebra: BoundQuiverAlgebra, dims, maps=None, name: str = "", check: bool = True):
        self.algebra = algebra
        p = algebra.p
        if isinstance(dims, dict):
            dims = tuple(int(dims.get(v, 0)) for v in algebra.vertices)
        self.dims = tuple(int(x) for x in dims)
        if len(self.dims) != len(algebra.vertices) or min(self.dims, default=0) < 0:
            raise InvariantViolation("dimension vector does not match the quiver")
        maps = dict(maps or {})
        unknown = set(maps) - {a.label for a in algebra.arrows}
        if unknown:
            raise InvariantViolation(f"unknown arrow(s) {sorted(unknown)}")
        self.maps: dict[str, np.ndarray] = {}
        for a in algebra.arrows:
            shape = (self.dim_at(a.target), self.dim_at(a.source))
            m = maps.get(a.label)
            m = el.zeros(*shape) if m is None else np.array(m, dtype=np.int64).reshape(shape) % p
            self.maps[a.label] = _frozen(m)
        self.name = name
        self._hom_cache: dict = {}
        self._summands = None
        if check:
            self.check_relations()

    # basic data

    @property
    def p(self) -> int:
        return self.algebra.p

    def dim_at(self, v: str) -> int:
        return self.dims[self.algebra.vertex_index(v)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, pth: Path) -> np.ndarray:
        m = el.eye(self.dim_at(pth.source))
        for lab in pth.arrows:
            m = el.mul(self.maps[lab], m, self.p)
        return m

    def check_relations(self):
        for rel in self.algebra.relations:
            acc = None
            for c, labels in rel.terms:
                pth = self.algebra.quiver.path(labels)
                term = (c * self.path_matrix(pth)) % self.p
                acc = term if acc is None else (acc + term) % self.p
            if acc is not None and acc.any():
                raise InvariantViolation(f"relation {rel} does not vanish on module {self.name or ''}".strip())

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"<Representation {label}dim={self.dims}>"


class ModuleMorphism:
    def __init__(self, source: Representation, target: Representation, maps=None, check: bool = True):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("morphism between modules over different algebras")
        self.source = source
        self.target = target
        alg = source.algebra
        maps = dict(maps or {})
        self.maps: dict[str, np.ndarray] = {}
        for v in alg.vertices:
            shape = (target.dim_at(v), source.dim_at(v))
            m = maps.get(v)
            m = el.zeros(*shape) if m is None else np.array(m, dtype=np.int64).reshape(shape) % alg.p
            self.maps[v] = _frozen(m)
        if check:
            self.check()

    @property
    def p(self) -> int:
        return self.source.p

    def check(self):
        p = self.p
        for a in self.source.algebra.arrows:
            lhs = el.mul(self.target.maps[a.label], self.maps[a.source], p)
            rhs = el.mul(self.maps[a.target], self.source.maps[a.label], p)
            if not np.array_equal(lhs, rhs):
                raise InvariantViolation(f"morphism does not commute with arrow {a.label}")

    def vec(self) -> np.ndarray:
        parts = [self.maps[v].reshape(-1) for v in self.source.algebra.vertices]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def compose(self, other: ModuleMorphism) -> ModuleMorphism:
        """self o other."""
        if other.target is not self.source:
            raise ModuleError("composition of non-composable morphisms")
        maps = {v: el.mul(self.maps[v], other.maps[v], self.p) for v in self.maps}
        return ModuleMorphism(other.source, self.target, maps, check=False)

    def __add__(self, other: ModuleMorphism) -> ModuleMorphism:
        maps = {v: (self.maps[v] + other.maps[v]) % self.p for v in self.maps}
        return ModuleMorphism(self.source, self.target, maps, check=False)

    def scale(self, c: int) -> ModuleMorphism:
        maps = {v: (c * self.maps[v]) % self.p for v in self.maps}
        return ModuleMorphism(self.source, self.target, maps, check=False)

    def is_zero(self) -> bool:
        return not any(m.any() for m in self.maps.values())

    def is_injective(self) -> bool:
        return all(el.rank(m, self.p) == m.shape[1] for m in self.maps.values())

    def is_surjective(self) -> bool:
        return all(el.rank(m, self.p) == m.shape[0] for m in self.maps.values())

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def inverse(self) -> ModuleMorphism:
        maps = {v: el.inverse(m, self.p) if m.size else m for v, m in self.maps.items()}
        return ModuleMorphism(self.target, self.source, maps, check=False)

    def __repr__(self):
        return f"<ModuleMorphism {self.source.dims} -> {self.target.dims}>"


def identity(M: Representation) -> ModuleMorphism:
    return ModuleMorphism(M, M, {v: el.eye(M.dim_at(v)) for v in M.algebra.vertices}, check=False)


def zero_map(M: Representation, N: Representation) -> ModuleMorphism:
    return ModuleMorphism(M, N, check=False)


def zero_module(alg: BoundQuiverAlgebra) -> Representation:
    """The zero module (one shared instance per algebra)."""
    Z = alg.__dict__.get("_zero")
    if Z is None:
        Z = Representation(alg, [0] * len(alg.vertices), check=False)
        alg.__dict__["_zero"] = Z
    return Z


def morphism_from_vec(M: Representation, N: Representation, vec) -> ModuleMorphism:
    maps = {}
    pos = 0
    for v in M.algebra.vertices:
        r, c = N.dim_at(v), M.dim_at(v)
        maps[v] = np.asarray(vec[pos:pos + r * c]).reshape(r, c)
        pos += r * c
    return ModuleMorphism(M, N, maps, check=False)


def hom_dim_ambient(M: Representation, N: Representation) -> int:
    return sum(N.dim_at(v) * M.dim_at(v) for v in M.algebra.vertices)


# Hom spaces

def hom_matrix(M: Representation, N: Representation) -> np.ndarray:
    """Columns: flattened vertex maps forming a basis of Hom(M, N)."""
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("Hom between modules over different algebras")
    hit = M._hom_cache.get(id(N))
    if hit is not None and hit[0] is N:
        return hit[1]
    alg, p = M.algebra, M.p
    offsets, pos = {}, 0
    for v in alg.vertices:
        offsets[v] = pos
        pos += N.dim_at(v) * M.dim_at(v)
    n_unknowns = pos
    blocks = []
    for a in alg.arrows:
        i, j = a.source, a.target
        mi, ni, mj, nj = M.dim_at(i), N.dim_at(i), M.dim_at(j), N.dim_at(j)
        rows = nj * mi
        if rows == 0:
            continue
        block = el.zeros(rows, n_unknowns)
        if ni * mi:
            block[:, offsets[i]:offsets[i] + ni * mi] += np.kron(N.maps[a.label], el.eye(mi))
        if nj * mj:
            block[:, offsets[j]:offsets[j] + nj * mj] -= np.kron(el.eye(nj), M.maps[a.label].T)
        blocks.append(block % p)
    if blocks:
        basis = el.kernel_basis(np.concatenate(blocks, axis=0), p)
    else:
        basis = el.eye(n_unknowns)
    basis.setflags(write=False)
    M._hom_cache[id(N)] = (N, basis)
    return basis


def hom_basis(M: Representation, N: Representation) -> list[ModuleMorphism]:
    h = hom_matrix(M, N)
    return [morphism_from_vec(M, N, h[:, k]) for k in range(h.shape[1])]


def hom_dim(M: Representation, N: Representation) -> int:
    return hom_matrix(M, N).shape[1]


def combine(M: Representation, N: Representation, coeffs) -> ModuleMorphism:
    h = hom_matrix(M, N)
    vec = (h @ np.asarray(coeffs, dtype=np.int64)) % M.p if h.shape[1] else np.zeros(h.shape[0], dtype=np.int64)
    return morphism_from_vec(M, N, vec)


# sub and quotient constructions

def submodule(M: Representation, bases: dict[str, np.ndarray], name: str = "") -> tuple[Representation, ModuleMorphism]:
    """Submodule spanned per vertex by the (independent) columns of ``bases``."""
    alg, p = M.algebra, M.p
    maps = {}
    for a in alg.arrows:
        bi, bj = bases[a.source], bases[a.target]
        img = el.mul(M.maps[a.label], bi, p)
        if bj.shape[1] == 0:
            if img.any():
                raise ModuleError("subspace is not a submodule")
            maps[a.label] = el.zeros(0, bi.shape[1])
            continue
        x = el.solve(bj, img, p)
        if x is None:
            raise ModuleError("subspace is not a submodule")
        maps[a.label] = x
    S = Representation(alg, [bases[v].shape[1] for v in alg.vertices], maps, name=name, check=False)
    return S, ModuleMorphism(S, M, {v: bases[v] for v in alg.vertices}, check=False)


def kernel(f: ModuleMorphism) -> tuple[Representation, ModuleMorphism]:
    p = f.p
    bases = {v: el.kernel_basis(m, p) for v, m in f.maps.items()}
    return submodule(f.source, bases)


def image(f: ModuleMorphism) -> tuple[Representation, ModuleMorphism]:
    p = f.p
    bases = {v: el.image_basis(m, p) for v, m in f.maps.items()}
    return submodule(f.target, bases)


def quotient(M: Representation, bases: dict[str, np.ndarray]) -> tuple[Representation, ModuleMorphism]:
    """M / U for the submodule U spanned by ``bases``; returns (Q, projection)."""
    alg, p = M.algebra, M.p
    proj, sections = {}, {}
    for v in alg.vertices:
        n = M.dim_at(v)
        b = bases[v]
        if n == 0:
            proj[v] = el.zeros(0, 0)
        else:
            proj[v] = el.left_nullspace(b, p) if b.shape[1] else el.eye(n)
        sections[v] = el.solve(proj[v], el.eye(proj[v].shape[0]), p)
    maps = {}
    for a in alg.arrows:
        maps[a.label] = el.mul(el.mul(proj[a.target], M.maps[a.label], p), sections[a.source], p)
    Q = Representation(alg, [proj[v].shape[0] for v in alg.vertices], maps, check=False)
    return Q, ModuleMorphism(M, Q, proj, check=False)


def cokernel(f: ModuleMorphism) -> tuple[Representation, ModuleMorphism]:
    return quotient(f.target, {v: el.image_basis(m, f.p) for v, m in f.maps.items()})


def direct_sum(mods: list[Representation], algebra: BoundQuiverAlgebra | None = None):
    """Direct sum with inclusion and projection morphisms."""
    if not mods:
        if algebra is None:
            raise ModuleError("empty direct sum needs an algebra")
        return zero_module(algebra), [], []
    alg = mods[0].algebra
    if any(m.algebra is not alg for m in mods):
        raise AlgebraMismatch("direct sum over different algebras")
    dims = [sum(m.dims[i] for m in mods) for i in range(len(alg.vertices))]
    maps = {}
    for a in alg.arrows:
        blocks = [m.maps[a.label] for m in mods]
        maps[a.label] = _block_diag(blocks)
    S = Representation(alg, dims, maps, check=False)
    incs, projs = [], []
    offs = {v: 0 for v in alg.vertices}
    for m in mods:
        inc, pr = {}, {}
        for v in alg.vertices:
            d, o = m.dim_at(v), offs[v]
            e = el.zeros(S.dim_at(v), d)
            e[o:o + d, :] = el.eye(d)
            inc[v], pr[v] = e, e.T.copy()
            offs[v] += d
        incs.append(ModuleMorphism(m, S, inc, check=False))
        projs.append(ModuleMorphism(S, m, pr, check=False))
    return S, incs, projs


def _block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = el.zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def from_components(source: Representation, target: Representation, parts) -> ModuleMorphism:
    """Morphism out of a direct sum given by one map per summand (horizontal stacking)."""
    maps = {}
    for v in source.algebra.vertices:
        blocks = [f.maps[v] for f in parts]
        maps[v] = np.concatenate(blocks, axis=1) if blocks else el.zeros(target.dim_at(v), 0)
    return ModuleMorphism(source, target, maps, check=False)


def into_components(source: Representation, target: Representation, parts) -> ModuleMorphism:
    """Morphism into a direct sum given by one map per summand (vertical stacking)."""
    maps = {}
    for v in source.algebra.vertices:
        blocks = [f.maps[v] for f in parts]
        maps[v] = np.concatenate(blocks, axis=0) if blocks else el.zeros(0, source.dim_at(v))
    return ModuleMorphism(source, target, maps, check=False)


# standard modules

def simple(alg: BoundQuiverAlgebra, v: str) -> Representation:
    return Representation(alg, {v: 1}, name=f"S({v})", check=False)


def projective(alg: BoundQuiverAlgebra, v: str) -> Representation:
    """P(v): spanned by the basis paths starting at v."""
    cache = alg.__dict__.setdefault("_proj_cache", {})
    if v in cache:
        return cache[v]
    local = {w: alg.basis_paths(source=v, target=w) for w in alg.vertices}
    pos = {w: {b: i for i, b in enumerate(local[w])} for w in alg.vertices}
    maps = {}
    for a in alg.arrows:
        m = el.zeros(len(local[a.target]), len(local[a.source]))
        for col, b in enumerate(local[a.source]):
            prod = Path(b.source, a.target, b.arrows + (a.label,))
            for q, c in alg.normal_form(prod).items():
                m[pos[a.target][q], col] = c
        maps[a.label] = m
    P = Representation(alg, [len(local[w]) for w in alg.vertices], maps, name=f"P({v})")
    cache[v] = P
    return P


def generator_element(alg: BoundQuiverAlgebra, v: str) -> np.ndarray:
    """Coordinates of e_v inside P(v) at vertex v."""
    local = alg.basis_paths(source=v, target=v)
    e = el.zeros(len(local), 1)
    e[local.index(Path(v, v)), 0] = 1
    return e


def map_from_projective(P_v: Representation, v: str, M: Representation, m: np.ndarray) -> ModuleMorphism:
    """The morphism P(v) -> M sending e_v to the vector m in M_v."""
    alg, p = M.algebra, M.p
    maps = {}
    for w in alg.vertices:
        cols = [el.mul(M.path_matrix(b), m.reshape(-1, 1), p) for b in alg.basis_paths(source=v, target=w)]
        maps[w] = np.concatenate(cols, axis=1) if cols else el.zeros(M.dim_at(w), 0)
    return ModuleMorphism(P_v, M, maps, check=False)


def op_algebra(alg: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    """Opposite algebra, cached so that op(op(A)) is A itself."""
    if "_op" not in alg.__dict__:
        o = opposite(alg)
        alg.__dict__["_op"] = o
        o.__dict__["_op"] = alg
    return alg.__dict__["_op"]


def dual(M: Representation) -> Representation:
    """Vector space dual, a module over the opposite algebra."""
    o = op_algebra(M.algebra)
    maps = {a: m.T.copy() for a, m in M.maps.items()}
    return Representation(o, M.dims, maps, name=f"D({M.name})" if M.name else "", check=False)


def dual_morphism(f: ModuleMorphism, Dsrc: Representation, Dtgt: Representation) -> ModuleMorphism:
    """D(f): D(target) -> D(source), given those duals."""
    return ModuleMorphism(Dtgt, Dsrc, {v: m.T.copy() for v, m in f.maps.items()}, check=False)


def injective(alg: BoundQuiverAlgebra, v: str) -> Representation:
    I = dual(projective(op_algebra(alg), v))
    I.name = f"I({v})"
    return I


def radical_bases(M: Representation) -> dict[str, np.ndarray]:
    alg, p = M.algebra, M.p
    out = {}
    for v in alg.vertices:
        ims = [M.maps[a.label] for a in alg.quiver.in_arrows(v)]
        ims = [x for x in ims if x.size]
        out[v] = el.image_basis(np.concatenate(ims, axis=1), p) if ims else el.zeros(M.dim_at(v), 0)
    return out


def top_dims(M: Representation) -> tuple[int, ...]:
    rad = radical_bases(M)
    return tuple(M.dim_at(v) - rad[v].shape[1] for v in M.algebra.vertices)


def projective_sum(vertices: list[str], alg: BoundQuiverAlgebra) -> Representation:
    """P(v_1) + ... + P(v_k), remembering where each generator e_{v_i} sits.

    ``P.generators`` lists (v_i, column vector in P at vertex v_i).
    """
    mods = [projective(alg, v) for v in vertices]
    P, incs, _ = direct_sum(mods, alg)
    P.generators = [(v, el.mul(inc.maps[v], generator_element(alg, v), alg.p))
                    for v, inc in zip(vertices, incs)]
    return P


def map_from_generators(P: Representation, M: Representation, images) -> ModuleMorphism:
    """The morphism from a projective sum sending its i-th generator to images[i]."""
    alg, p = M.algebra, M.p
    maps = {w: el.zeros(M.dim_at(w), P.dim_at(w)) for w in alg.vertices}
    for (v, g), m in zip(P.generators, images):
        # the summand P(v) occupies the columns where the generator's paths land
        for w in alg.vertices:
            for b in alg.basis_paths(source=v, target=w):
                col = el.mul(P.path_matrix(b), g, p)
                j = int(np.nonzero(col[:, 0])[0][0])
                maps[w][:, j] = (maps[w][:, j] + el.mul(M.path_matrix(b), np.reshape(m, (-1, 1)), p)[:, 0]) % p
    return ModuleMorphism(P, M, maps, check=False)


def lift_through(P: Representation, f: ModuleMorphism, eps: ModuleMorphism) -> ModuleMorphism:
    """A map h: P -> source(eps) with eps o h = f, for P a projective sum."""
    p = f.p
    images = []
    for v, g in P.generators:
        y = el.mul(f.maps[v], g, p)
        x = el.solve(eps.maps[v], y, p)
        if x is None:
            raise ModuleError("map does not lift: target map is not onto the image")
        images.append(x)
    return map_from_generators(P, eps.source, images)


def top_and_cover(M: Representation) -> tuple[tuple[int, ...], ModuleMorphism]:
    """Top dimensions and a projective cover P -> M."""
    if M.is_zero():
        raise ZeroModule("projective cover of the zero module")
    alg, p = M.algebra, M.p
    rad = radical_bases(M)
    verts, images = [], []
    for v in alg.vertices:
        comp = el.complement_columns(rad[v], M.dim_at(v), p)
        for k in range(comp.shape[1]):
            verts.append(v)
            images.append(comp[:, k])
    P = projective_sum(verts, alg)
    cover = map_from_generators(P, M, images)
    tops = tuple(M.dim_at(v) - rad[v].shape[1] for v in alg.vertices)
    return tops, cover


class NotExact(ModuleError):
    pass


class ShortSequence:
    """0 -> A -> B -> C -> 0 given by inj: A -> B and surj: B -> C."""

    def __init__(self, inj: ModuleMorphism, surj: ModuleMorphism, check: bool = True):
        if inj.target is not surj.source:
            raise NotExact("maps are not composable")
        self.inj, self.surj = inj, surj
        if check:
            self.check()

    @property
    def A(self):
        return self.inj.source

    @property
    def B(self):
        return self.inj.target

    @property
    def C(self):
        return self.surj.target

    def check(self):
        p = self.inj.p
        if not self.inj.is_injective():
            raise NotExact("left map is not injective")
        if not self.surj.is_surjective():
            raise NotExact("right map is not surjective")
        for v in self.B.algebra.vertices:
            if el.mul(self.surj.maps[v], self.inj.maps[v], p).any():
                raise NotExact("composite is not zero")
            if self.B.dim_at(v) != self.A.dim_at(v) + self.C.dim_at(v):
                raise NotExact("image of the left map differs from the kernel of the right map")

    def __repr__(self):
        return f"<ShortSequence {self.A.dims} -> {self.B.dims} -> {self.C.dims}>"


# endomorphisms, decomposition, isomorphism

def _block(f: ModuleMorphism) -> np.ndarray:
    return _block_diag([f.maps[v] for v in f.source.algebra.vertices])


def _from_block(M: Representation, N: Representation, blk: np.ndarray) -> ModuleMorphism:
    maps, r, c = {}, 0, 0
    for v in M.algebra.vertices:
        dr, dc = N.dim_at(v), M.dim_at(v)
        maps[v] = blk[r:r + dr, c:c + dc]
        r += dr
        c += dc
    return ModuleMorphism(M, N, maps, check=False)


RANDOM_TRIES = 64


def _rng(M: Representation):
    seed = (hash(M.dims) ^ M.total_dim * 7919) & 0xFFFFFFFF
    return np.random.default_rng(seed)


def _candidates(M: Representation, basis: np.ndarray, tries: int):
    """Endomorphism coordinate vectors: basis, pairwise sums, then random combos."""
    k = basis.shape[1]
    for i in range(k):
        c = np.zeros(k, dtype=np.int64)
        c[i] = 1
        yield c
    for i, j in combinations(range(k), 2):
        c = np.zeros(k, dtype=np.int64)
        c[i] = c[j] = 1
        yield c
    rng = _rng(M)
    for _ in range(tries):
        yield rng.integers(0, M.p, size=k)


def _splitting(M: Representation, blk: np.ndarray):
    """Kernel/image bases of a primary projector of blk, or None if blk is primary."""
    p = M.p
    mp = el.min_poly(blk, p)
    facs = el.factor_poly(mp, p)
    if len(facs) < 2:
        return None
    f, k = facs[0]
    psi = el.poly_eval(el.poly_pow(f, k, p), blk, p)
    return psi


def _split_at(M: Representation, psi_blk: np.ndarray):
    """Split M along the Fitting decomposition of a module endomorphism."""
    p = M.p
    psi = _from_block(M, M, psi_blk)
    kb, ib = {}, {}
    for v in M.algebra.vertices:
        n = M.dim_at(v)
        pw = el.fitting_power(psi.maps[v], p) if n else psi.maps[v]
        kb[v] = el.kernel_basis(pw, p) if n else el.zeros(0, 0)
        ib[v] = el.image_basis(pw, p) if n else el.zeros(0, 0)
    K, iK = submodule(M, kb)
    I, iI = submodule(M, ib)
    if K.is_zero() or I.is_zero():
        return None
    # projections along the complementary summand
    pK, pI = {}, {}
    for v in M.algebra.vertices:
        n = M.dim_at(v)
        if n == 0:
            pK[v], pI[v] = el.zeros(K.dim_at(v), 0), el.zeros(I.dim_at(v), 0)
            continue
        full = np.concatenate([kb[v], ib[v]], axis=1)
        inv = el.inverse(full, p)
        pK[v] = inv[:kb[v].shape[1]]
        pI[v] = inv[kb[v].shape[1]:]
    return ((K, iK, ModuleMorphism(M, K, pK, check=False)),
            (I, iI, ModuleMorphism(M, I, pI, check=False)))


def find_split(M: Representation, tries: int = RANDOM_TRIES):
    """A nontrivial direct sum splitting of M, or None when none was found."""
    if M.total_dim <= 1:
        return None
    E = hom_matrix(M, M)
    if E.shape[1] <= 1:
        return None
    for c in _candidates(M, E, 0):
        res = _try_candidate(M, E, c)
        if res is not None:
            return res
    if is_local(M, E):
        return None
    for c in _candidates(M, E, tries):
        res = _try_candidate(M, E, c)
        if res is not None:
            return res
    raise ModuleError("endomorphism ring is not local but no splitting element was found")


def _try_candidate(M, E, c):
    f = morphism_from_vec(M, M, (E @ c) % M.p)
    psi = _splitting(M, _block(f))
    if psi is None:
        return None
    return _split_at(M, psi)


def _span(vecs: list[np.ndarray], n: int, p: int) -> np.ndarray:
    if not vecs:
        return el.zeros(0, n)
    return el.row_space(np.stack(vecs), p)


def is_local(M: Representation, E: np.ndarray | None = None) -> bool:
    """Certify that End(M) is local.

    The ideal generated by the nilpotent parts of the basis elements must be
    nilpotent, and the quotient by it must be a field (some element has an
    irreducible minimal polynomial of full degree).  False means "not
    certified" and the caller falls back to a randomized split search.
    """
    p = M.p
    if E is None:
        E = hom_matrix(M, M)
    k = E.shape[1]
    if k == 0:
        return False
    if k == 1:
        return True
    elems = [_block(morphism_from_vec(M, M, E[:, i])) for i in range(k)]
    n = elems[0].shape[0]
    gens = []
    for b in elems:
        facs = el.factor_poly(el.min_poly(b, p), p)
        if len(facs) != 1:
            return False
        f, _ = facs[0]
        gens.append(el.poly_eval(f, b, p))
    flat = [e.reshape(-1) for e in elems]
    unit = [el.eye(n)] + elems
    ideal_vecs = []
    for g in gens:
        for x in unit:
            for y in unit:
                ideal_vecs.append(el.mul(el.mul(x, g, p), y, p).reshape(-1))
    I = _span(ideal_vecs, n * n, p)
    # nilpotency of the ideal
    power = I
    for _ in range(n + 1):
        if power.shape[0] == 0:
            break
        prods = [el.mul(a.reshape(n, n), b.reshape(n, n), p).reshape(-1) for a in power for b in I]
        power = _span(prods, n * n, p)
    if power.shape[0]:
        return False
    quot_dim = k - I.shape[0]
    if quot_dim == 1:
        return True
    # left multiplication on E/I for a few elements
    Emat = np.stack(flat, axis=1)
    comp = el.complement_columns(I.T, n * n, p) if I.shape[0] else el.eye(n * n)
    # basis of E modulo I: pick E-elements independent modulo I
    chosen = []
    base = I.T if I.shape[0] else el.zeros(n * n, 0)
    for i in range(k):
        trial = np.concatenate([base] + chosen + [Emat[:, i:i + 1]], axis=1)
        if el.rank(trial, p) > base.shape[1] + len(chosen):
            chosen.append(Emat[:, i:i + 1])
    Q = np.concatenate(chosen, axis=1)
    full = np.concatenate([Q, base], axis=1)
    del comp
    rng = _rng(M)
    for t in range(16 + k):
        c = np.zeros(k, dtype=np.int64)
        if t < k:
            c[t] = 1
        else:
            c = rng.integers(0, p, size=k)
        x = ((Emat @ c) % p).reshape(n, n)
        cols = []
        for j in range(Q.shape[1]):
            prod = el.mul(x, Q[:, j].reshape(n, n), p).reshape(-1, 1)
            sol = el.solve(full, prod, p)
            cols.append(sol[:Q.shape[1]])
        L = np.concatenate(cols, axis=1)
        mp = el.min_poly(L, p)
        facs = el.factor_poly(mp, p)
        if len(facs) == 1 and facs[0][1] == 1 and len(mp) - 1 == quot_dim:
            return True
    return False


def decompose(M: Representation) -> list[tuple[Representation, ModuleMorphism, ModuleMorphism]]:
    """Indecomposable summands with inclusion and projection maps.

    The inclusions i_k and projections p_k satisfy sum i_k p_k = id_M.
    """
    if M._summands is not None:
        return M._summands
    if M.is_zero():
        M._summands = []
        return []
    split = find_split(M)
    if split is None:
        out = [(M, identity(M), identity(M))]
    else:
        out = []
        for X, inc, proj in split:
            for Y, i2, p2 in decompose(X):
                out.append((Y, inc.compose(i2), p2.compose(proj)))
        # larger dimension vectors first, so that P(1) precedes P(2) over A_2
        out.sort(key=lambda t: tuple(-d for d in t[0].dims))
    M._summands = out
    return out


def summands(M: Representation) -> list[Representation]:
    return [X for X, _, _ in decompose(M)]


def is_indecomposable(M: Representation) -> bool:
    return not M.is_zero() and find_split(M) is None


def find_isomorphism(M: Representation, N: Representation) -> ModuleMorphism | None:
    """An isomorphism M -> N between indecomposables, or None.

    For indecomposable modules some element of any basis of Hom(M, N) is an
    isomorphism when one exists: the basis products Hom(N,M)Hom(M,N) span an
    ideal of the local ring End(M) containing 1, so one product is a unit.
    """
    if M.dims != N.dims:
        return None
    if M.is_zero():
        return zero_map(M, N)
    for f in hom_basis(M, N):
        if f.is_iso():
            return f
    return None


def is_isomorphic(M: Representation, N: Representation) -> bool:
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules over different algebras")
    if M.dims != N.dims:
        return False
    if hom_dim(M, N) == 0:
        return M.is_zero()
    xs, ys = summands(M), summands(N)
    if len(xs) == 1 and len(ys) == 1:
        return find_isomorphism(M, N) is not None
    return match_summands(xs, ys)


def match_summands(xs: list[Representation], ys: list[Representation]) -> bool:
    if len(xs) != len(ys):
        return False
    left = list(ys)
    for X in xs:
        for i, Y in enumerate(left):
            if X.dims == Y.dims and find_isomorphism(X, Y) is not None:
                del left[i]
                break
        else:
            return False
    return True


def dim_vector_sum(mods) -> tuple[int, ...]:
    mods = list(mods)
    return tuple(sum(c) for c in zip(*[m.dims for m in mods])) if mods else ()


def multiplicities(mods: list[Representation], reps: list[Representation]) -> Counter:
    """Count summands of ``mods`` by their index in the representative list ``reps``."""
    out = Counter()
    for X in mods:
        for i, R in enumerate(reps):
            if R.dims == X.dims and find_isomorphism(X, R) is not None:
                out[i] += 1
                break
        else:
            out[-1] += 1
    return out


def sum_morphisms(fs: list[ModuleMorphism]) -> ModuleMorphism:
    return reduce(lambda a, b: a + b, fs)


def enumerate_indecomposables(alg: BoundQuiverAlgebra, dim_bound: int):
    """Indecomposables up to isomorphism with total dimension at most dim_bound (see inventory)."""
    from .inventory import enumerate_indecomposables as _enum
    return _enum(alg, dim_bound)
