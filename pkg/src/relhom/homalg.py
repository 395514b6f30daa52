"""Classical homological invariants: minimal resolutions, pd, Ext, id, gldim, fPD."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import exactlin as el
from .inventory import enumerate_indecomposables
from .quiveralg import BoundQuiverAlgebra
from .repmod import (
    ModuleMorphism,
    Representation,
    dual,
    hom_basis,
    hom_dim,
    is_isomorphic,
    kernel,
    simple,
    top_and_cover,
)
from .verdict import Bounds, DimVerdict, at_least, dim_max, finite, infinite, neginf

FINITE, INFINITE_DETECTED, CUTOFF = "Finite", "InfiniteDetected", "CutoffReached"


@dataclass
class ResolutionReport:
    """Minimal projective resolution ... -> P_1 -> P_0 -> M.

    ``syzygies[k]`` is the k-th syzygy (syzygies[0] = M), ``covers[k]`` the
    projective cover P_k -> syzygies[k] and ``inclusions[k]`` the kernel
    inclusion syzygies[k+1] -> P_k.
    """

    module: Representation
    covers: list[ModuleMorphism] = field(default_factory=list)
    inclusions: list[ModuleMorphism] = field(default_factory=list)
    syzygies: list[Representation] = field(default_factory=list)
    status: str = CUTOFF
    length: int | None = None
    period: tuple[int, int] | None = None

    def term(self, k: int) -> Representation:
        return self.covers[k].source

    def differential(self, k: int) -> ModuleMorphism:
        """d_k: P_k -> P_{k-1} for k >= 1."""
        return self.inclusions[k - 1].compose(self.covers[k])

    @property
    def depth(self) -> int:
        return len(self.covers)

    def extend(self, depth: int):
        """Compute covers up to P_{depth-1} (or until a zero syzygy)."""
        if not self.syzygies:
            self.syzygies.append(self.module)
        while len(self.covers) < depth:
            cur = self.syzygies[-1]
            if cur.is_zero():
                return
            _, cover = top_and_cover(cur)
            K, inc = kernel(cover)
            self.covers.append(cover)
            self.inclusions.append(inc)
            self.syzygies.append(K)

    def finished(self) -> bool:
        return bool(self.syzygies) and self.syzygies[-1].is_zero()


def _find_repeat(res: ResolutionReport) -> tuple[int, int] | None:
    last = len(res.syzygies) - 1
    new = res.syzygies[last]
    if new.is_zero():
        return None
    for j in range(last):
        old = res.syzygies[j]
        if old.dims == new.dims and not old.is_zero() and is_isomorphic(old, new):
            return (j, last)
    return None


def min_proj_resolution(M: Representation, cutoff: int = 16) -> ResolutionReport:
    """Minimal projective resolution with a finite/infinite/cutoff status."""
    cache = M.__dict__.setdefault("_resolutions", {})
    if cutoff in cache:
        return cache[cutoff]
    res = cache.get("lazy")
    if res is None:
        res = ResolutionReport(M)
        res.extend(0)
        cache["lazy"] = res
    rep = ResolutionReport(M, res.covers, res.inclusions, res.syzygies)
    if M.is_zero():
        rep.status, rep.length = FINITE, -1
        cache[cutoff] = rep
        return rep
    k = 0
    while True:
        if k >= len(res.covers):
            res.extend(k + 1)
        if res.syzygies[k + 1].is_zero():
            rep.status, rep.length = FINITE, k
            break
        # look for a repetition among syzygies computed so far
        sub = ResolutionReport(M, res.covers[:k + 1], res.inclusions[:k + 1], res.syzygies[:k + 2])
        rpt = _find_repeat(sub)
        if rpt is not None:
            rep.status, rep.period = INFINITE_DETECTED, rpt
            break
        if k >= cutoff:
            rep.status = CUTOFF
            break
        k += 1
    cache[cutoff] = rep
    return rep


def lazy_resolution(M: Representation) -> ResolutionReport:
    min_proj_resolution(M, 0)
    return M.__dict__["_resolutions"]["lazy"]


def pd(M: Representation, cutoff: int = 16) -> DimVerdict:
    rep = min_proj_resolution(M, cutoff)
    b = Bounds(None, cutoff)
    if rep.status == FINITE:
        return neginf(bounds=b) if rep.length < 0 else finite(rep.length, bounds=b)
    if rep.status == INFINITE_DETECTED:
        return infinite(bounds=b, witness=rep.period)
    return at_least(cutoff + 1, bounds=b)


def precompose_rank(d: ModuleMorphism, N: Representation) -> int:
    """Rank of Hom(target(d), N) -> Hom(source(d), N), g |-> g o d."""
    gs = hom_basis(d.target, N)
    if not gs:
        return 0
    vecs = np.stack([g.compose(d).vec() for g in gs], axis=1)
    return el.rank(vecs, d.p)


def postcompose_rank(M: Representation, f: ModuleMorphism) -> int:
    """Rank of Hom(M, source(f)) -> Hom(M, target(f)), g |-> f o g."""
    gs = hom_basis(M, f.source)
    if not gs:
        return 0
    vecs = np.stack([f.compose(g).vec() for g in gs], axis=1)
    return el.rank(vecs, f.p)


def ext(M: Representation, N: Representation, i: int) -> int:
    """dim Ext^i(M, N) from the minimal projective resolution of M."""
    if i < 0:
        raise ValueError("negative Ext degree")
    if i == 0:
        return hom_dim(M, N)
    res = lazy_resolution(M)
    res.extend(i + 2)  # d_{i+1} is needed too
    if i >= res.depth:
        return 0
    h = hom_dim(res.term(i), N)
    out_rank = precompose_rank(res.differential(i + 1), N) if i + 1 < res.depth else 0
    in_rank = precompose_rank(res.differential(i), N)
    return h - out_rank - in_rank


def injective_dimension(M: Representation, cutoff: int = 16) -> DimVerdict:
    """id(M) = pd of the dual module over the opposite algebra."""
    return pd(dual(M), cutoff)


# short alias
id_ = injective_dimension


def gldim(alg: BoundQuiverAlgebra, cutoff: int = 16) -> DimVerdict:
    """Global dimension as the largest pd of a simple module."""
    vals = []
    for v in alg.vertices:
        S = simple(alg, v)
        r = pd(S, cutoff)
        vals.append(DimVerdict(r.kind, r.value, True, r.bounds, witness=S))
    return dim_max(vals, Bounds(None, cutoff))


def fpd(alg: BoundQuiverAlgebra, dim_bound: int = 6, cutoff: int = 16) -> DimVerdict:
    """Supremum of the finite projective dimensions over the inventory."""
    inv = enumerate_indecomposables(alg, dim_bound)
    b = Bounds(dim_bound, cutoff)
    vals, unsure = [], []
    for M in inv:
        r = pd(M, cutoff)
        if r.is_finite:
            vals.append(finite(r.value, witness=M))
        elif r.kind == "atleast":
            unsure.append(M)
    out = dim_max(vals, b)
    if out.kind == "neginf":  # pragma: no cover - projectives always have pd 0
        out = finite(0, bounds=b)
    notes = []
    if not inv.covers_all:
        notes.append(f"inventory ({inv.status}) may miss modules beyond dimension {dim_bound}")
    if unsure:
        notes.append(f"{len(unsure)} module(s) with undetermined pd beyond cutoff {cutoff}")
    if notes:
        out = out.uncertified(*notes)
    return out


def euler_check(alg: BoundQuiverAlgebra, dim_bound: int = 6) -> list[tuple]:
    """Pairs violating <dim M, dim N> = dim Hom - dim Ext^1 (hereditary algebras)."""
    from .inventory import euler_form
    inv = enumerate_indecomposables(alg, dim_bound)
    bad = []
    for M in inv:
        for N in inv:
            lhs = euler_form(alg, M.dims, N.dims)
            rhs = hom_dim(M, N) - ext(M, N, 1)
            if lhs != rhs:
                bad.append((M, N, lhs, rhs))
    return bad



# Ext^1 through a projective presentation 0 -> Omega -> P -> C -> 0

@dataclass
class Presentation:
    module: Representation
    cover: ModuleMorphism       # P -> C
    inclusion: ModuleMorphism   # Omega -> P

    @property
    def P(self):
        return self.cover.source

    @property
    def omega(self):
        return self.inclusion.source


def presentation(C: Representation) -> Presentation | None:
    """First step of the minimal resolution; None for the zero module."""
    if C.is_zero():
        return None
    res = lazy_resolution(C)
    res.extend(1)
    return Presentation(C, res.covers[0], res.inclusions[0])


def coboundary_vectors(pres: Presentation, A: Representation) -> np.ndarray:
    """Columns: h o incl for h in a basis of Hom(P, A), in ambient Hom(Omega, A) coordinates."""
    gs = hom_basis(pres.P, A)
    n = sum(A.dim_at(v) * pres.omega.dim_at(v) for v in A.algebra.vertices)
    if not gs:
        return el.zeros(n, 0)
    return np.stack([g.compose(pres.inclusion).vec() for g in gs], axis=1)


def extension_from_cocycle(pres: Presentation, A: Representation, phi: ModuleMorphism):
    """The pushout 0 -> A -> E -> C -> 0 of the presentation along phi: Omega -> A."""
    from .repmod import ShortSequence, direct_sum, into_components, quotient

    alg, p = A.algebra, A.p
    S, incs, _ = direct_sum([A, pres.P])
    rel = into_components(pres.omega, S, [phi, pres.inclusion.scale(p - 1)])
    E, proj = quotient(S, {v: el.image_basis(rel.maps[v], p) for v in alg.vertices})
    inj = proj.compose(incs[0])
    surj_maps = {}
    for v in alg.vertices:
        sec = el.solve(proj.maps[v], el.eye(E.dim_at(v)), p) if E.dim_at(v) else el.zeros(S.dim_at(v), 0)
        zero_eps = np.concatenate([el.zeros(pres.module.dim_at(v), A.dim_at(v)), pres.cover.maps[v]], axis=1)
        surj_maps[v] = el.mul(zero_eps, sec, p)
    surj = ModuleMorphism(E, pres.module, surj_maps)
    return ShortSequence(inj, surj)
