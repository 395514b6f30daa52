"""Homological algebra relative to the modules of projective dimension at most n.

A ``TestClass`` holds the indecomposables of pd <= n found in the inventory
(for n = INF: every module of finite pd).  A short exact sequence is
n-exact when Hom(T, -) keeps it exact for every T in the class; the
n-projectives are the modules that are projective for those sequences.
All quantifiers over modules run over the bounded inventory, and answers
say whether the inventory was known to be exhaustive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import exactlin as el
from .homalg import (
    Presentation,
    coboundary_vectors,
    extension_from_cocycle,
    pd,
    postcompose_rank,
    precompose_rank,
    presentation,
)
from .inventory import Inventory, enumerate_indecomposables, is_dynkin_hereditary
from .quiveralg import BoundQuiverAlgebra
from .repmod import (
    ModuleMorphism,
    Representation,
    ShortSequence,
    decompose,
    direct_sum,
    find_isomorphism,
    from_components,
    hom_basis,
    hom_dim,
    hom_matrix,
    identity,
    is_isomorphic,
    kernel,
    lift_through,
    morphism_from_vec,
    projective,
)
from .verdict import (
    Bounds,
    DimVerdict,
    Verdict,
    at_least,
    dim_max,
    finite,
    infinite,
    neginf,
    no,
    unknown,
    yes,
)

INF = math.inf

CAVEAT_FD = "caveat[fd-restriction]: quantifiers range over finite-dimensional modules of dimension <= {d} only"
CAVEAT_INFINITE_TYPE = (
    "caveat[infinite-type-hereditary]: divergence from the n-global dimension over all modules, "
    "which equals 1 for hereditary algebras of infinite representation type and n >= 1; "
    "the witnesses are infinite-dimensional and lie outside this computation"
)


def n_label(n) -> str:
    return "inf" if n == INF else str(n)


def parse_n(token) -> float | int:
    if isinstance(token, str) and token.strip().lower() in ("inf", "infinity", "oo"):
        return INF
    n = int(token)
    if n < 0:
        raise ValueError("n must be a nonnegative integer or inf")
    return n


@dataclass(eq=False)
class TestClass:
    algebra: BoundQuiverAlgebra
    n: int | float
    dim_bound: int
    cutoff: int
    members: list[Representation]
    inventory: Inventory
    complete: bool
    excluded: list[Representation] = field(default_factory=list)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def bounds(self) -> Bounds:
        return Bounds(self.dim_bound, self.cutoff)

    @property
    def exhaustive(self) -> bool:
        """True when the inventory provably contains every indecomposable."""
        return self.inventory.complete and self.inventory.covers_all

    def member_index(self, X: Representation) -> int | None:
        for i, T in enumerate(self.members):
            if T.dims == X.dims and find_isomorphism(T, X) is not None:
                return i
        return None

    def contains(self, X: Representation) -> bool:
        return self.member_index(X) is not None

    def test_modules(self) -> list[Representation]:
        """Inventory plus class members: the range of 'for every module' quantifiers."""
        out = list(self.inventory.modules)
        for T in self.members:
            if self.inventory.index_of(T) is None:
                out.append(T)
        return out

    def __repr__(self):
        return (f"<TestClass n={n_label(self.n)} members={[T.dims for T in self.members]} "
                f"complete={self.complete}>")


_CLASSES: dict = {}


def build_test_class(alg: BoundQuiverAlgebra, n, dim_bound: int = 6, cutoff: int = 16) -> TestClass:
    """Indecomposables of pd <= n (all projectives included)."""
    if dim_bound < 1:
        raise ValueError("dim_bound must be at least 1")
    key = (id(alg), n, dim_bound, cutoff)
    hit = _CLASSES.get(key)
    if hit is not None and hit.algebra is alg:
        return hit
    inv = enumerate_indecomposables(alg, dim_bound)
    members = [projective(alg, v) for v in alg.vertices]
    members = [P for i, P in enumerate(members)
               if not any(Q.dims == P.dims and find_isomorphism(Q, P) for Q in members[:i])]
    excluded = []
    if n != 0:
        for M in inv:
            r = pd(M, cutoff)
            if r.is_finite and r.value <= n:
                if not any(T.dims == M.dims and find_isomorphism(T, M) is not None for T in members):
                    members.append(M)
            elif r.kind == "atleast" and r.value <= n:
                excluded.append(M)
    complete = n == 0 or (inv.complete and inv.covers_all and not excluded)
    cls = TestClass(alg, n, dim_bound, cutoff, members, inv, complete, excluded)
    _CLASSES[key] = cls
    return cls


# n-exact sequences

def is_n_exact(seq: ShortSequence, cls: TestClass) -> Verdict:
    """Does Hom(T, -) keep the sequence exact for every T in the class?"""
    seq.check()
    C = seq.C
    for T in cls.members:
        fs = hom_basis(T, C)
        if not fs:
            continue
        if postcompose_rank(T, seq.surj) < len(fs):
            img = [seq.surj.compose(g).vec() for g in hom_basis(T, seq.B)]
            base = np.stack(img, axis=1) if img else el.zeros(len(fs[0].vec()), 0)
            for f in fs:
                if el.solve(base, f.vec(), cls.algebra.p) is None:
                    return no(cls.bounds, witness=(T, f))
    if cls.complete:
        return yes(cls.bounds)
    return unknown(cls.bounds, notes=("class may miss members beyond the inventory",))


@dataclass
class ExtSubspace:
    """Subspace of Ext^1(C, A) = Hom(Omega, A) / coboundaries.

    ``cocycles`` spans the admissible cocycles (ambient coordinates, columns);
    it always contains the coboundaries.
    """

    C: Representation
    A: Representation
    pres: Presentation | None
    cocycles: np.ndarray
    coboundaries: np.ndarray
    dim: int
    ext_dim: int

    def nonsplit_cocycle(self) -> ModuleMorphism | None:
        if self.dim == 0:
            return None
        p = self.A.p
        base = self.coboundaries
        r0 = el.rank(base, p) if base.size else 0
        for j in range(self.cocycles.shape[1]):
            col = self.cocycles[:, j:j + 1]
            if el.rank(np.concatenate([base, col], axis=1), p) > r0:
                return morphism_from_vec(self.pres.omega, self.A, col[:, 0])
        return None  # pragma: no cover


def _quotient_rows(cls: TestClass, T: Representation, A: Representation) -> np.ndarray:
    """Rows Q with kernel = coboundaries inside ambient Hom(Omega_T, A) coordinates."""
    key = ("quot", id(T), id(A))
    hit = cls._cache.get(key)
    if hit is not None:
        return hit[2]
    presT = presentation(T)
    W = coboundary_vectors(presT, A)
    n = W.shape[0]
    Q = el.left_nullspace(W, A.p) if W.shape[1] else el.eye(n)
    # keep only directions that meet actual homomorphisms Omega_T -> A
    H = hom_matrix(presT.omega, A)
    if H.shape[1] == 0 or not el.mul(Q, H, A.p).any():
        Q = el.zeros(0, n)
    cls._cache[key] = (T, A, Q)
    return Q


def _syzygy_lift(presT: Presentation, f: ModuleMorphism, pres: Presentation) -> ModuleMorphism:
    """Restriction to Omega_T -> Omega of a lift P_T -> P of f: T -> C."""
    p = f.p
    f0 = lift_through(presT.P, f.compose(presT.cover), pres.cover)
    top = f0.compose(presT.inclusion)
    maps = {}
    for v in f.source.algebra.vertices:
        inc = pres.inclusion.maps[v]
        if inc.shape[1] == 0:
            maps[v] = el.zeros(0, presT.omega.dim_at(v))
            continue
        x = el.solve(inc, top.maps[v], p)
        if x is None:  # pragma: no cover - the lift lands in the kernel
            raise AssertionError("lift does not restrict to the syzygies")
        maps[v] = x
    return ModuleMorphism(presT.omega, pres.omega, maps, check=False)


def n_exact_subspace(C: Representation, A: Representation, cls: TestClass,
                     early_exit: bool = False) -> ExtSubspace:
    """Classes in Ext^1(C, A) whose pullback along every T -> C (T in the class) splits."""
    key = ("sub", id(C), id(A), early_exit)
    hit = cls._cache.get(key)
    if hit is not None and hit[0] is C and hit[1] is A:
        return hit[2]
    p = cls.algebra.p
    pres = presentation(C)
    if pres is None or pres.omega.is_zero():
        z = el.zeros(0, 0)
        out = ExtSubspace(C, A, pres, z, z, 0, 0)
        cls._cache[key] = (C, A, out)
        return out
    H = hom_matrix(pres.omega, A)
    cob = coboundary_vectors(pres, A)
    cob_rank = el.rank(cob, p) if cob.size else 0
    ext_dim = H.shape[1] - cob_rank
    rows = []
    if ext_dim > 0:
        phis = [morphism_from_vec(pres.omega, A, H[:, j]) for j in range(H.shape[1])]
        for T in cls.members:
            presT = presentation(T)
            if presT is None or presT.omega.is_zero():
                continue
            Q = _quotient_rows(cls, T, A)
            if Q.shape[0] == 0:
                continue
            for f in hom_basis(T, C):
                f1 = _syzygy_lift(presT, f, pres)
                cols = [el.mul(Q, phi.compose(f1).vec().reshape(-1, 1), p) for phi in phis]
                rows.append(np.concatenate(cols, axis=1))
            if early_exit and rows:
                if H.shape[1] - el.rank(np.concatenate(rows, axis=0), p) == cob_rank:
                    break
    if rows:
        K = el.kernel_basis(np.concatenate(rows, axis=0), p)
    else:
        K = el.eye(H.shape[1])
    cocycles = el.mul(H, K, p) if K.shape[1] else el.zeros(H.shape[0], 0)
    out = ExtSubspace(C, A, pres, cocycles, cob, K.shape[1] - cob_rank, ext_dim)
    cls._cache[key] = (C, A, out)
    return out


# n-projectivity

@dataclass(frozen=True)
class _NProj:
    value: bool          # best answer from the data at hand
    certified: bool
    witness: object = None


def _nproj_indecomposable(X: Representation, cls: TestClass) -> _NProj:
    key = ("nproj", cls.inventory.index_of(X))
    if key[1] is None:
        key = ("nproj-id", id(X))
    hit = cls._cache.get(key)
    if hit is not None:
        return hit
    if cls.contains(X):
        out = _NProj(True, True)
    else:
        out = None
        for A in cls.test_modules():
            sub = n_exact_subspace(X, A, cls, early_exit=True)
            if sub.dim > 0:
                phi = sub.nonsplit_cocycle()
                seq = extension_from_cocycle(sub.pres, A, phi)
                out = _NProj(False, cls.complete, seq)
                break
        if out is None:
            out = _NProj(True, cls.exhaustive)
    cls._cache[key] = out
    if key[0] == "nproj-id":
        cls._cache[("keep", id(X))] = X
    return out


def _nproj(M: Representation, cls: TestClass) -> _NProj:
    certified = True
    for X, _, _ in decompose(M):
        r = _nproj_indecomposable(X, cls)
        if not r.value:
            return r
        certified = certified and r.certified
    return _NProj(True, certified)


def is_n_projective(M: Representation, cls: TestClass) -> Verdict:
    """Projective with respect to all n-exact sequences (over the inventory)."""
    r = _nproj(M, cls)
    if r.certified:
        return yes(cls.bounds) if r.value else no(cls.bounds, witness=r.witness)
    note = "tentative yes" if r.value else "tentative no (class may be incomplete)"
    return unknown(cls.bounds, witness=r.witness, notes=(note,))


# relative precovers and resolutions

def n_precover(M: Representation, cls: TestClass, minimize: bool = False) -> ModuleMorphism:
    """Evaluation map from a sum of class members onto M."""
    parts, mods = [], []
    for T in cls.members:
        for f in hom_basis(T, M):
            mods.append(T)
            parts.append(f)
    if minimize:
        mods, parts = _minimize(M, cls, mods, parts)
    X, _, _ = direct_sum(mods, M.algebra)
    return from_components(X, M, parts)


def _is_precover(M, cls, parts) -> bool:
    if not parts:
        return M.is_zero()
    p = M.p
    for v in M.algebra.vertices:
        blocks = [f.maps[v] for f in parts]
        if el.rank(np.concatenate(blocks, axis=1), p) < M.dim_at(v):
            return False
    for T in cls.members:
        hd = hom_dim(T, M)
        if hd == 0:
            continue
        vecs = [f.compose(g).vec() for f in parts for g in hom_basis(T, f.source)]
        if not vecs or el.rank(np.stack(vecs, axis=1), p) < hd:
            return False
    return True


def _minimize(M, cls, mods, parts):
    keep = list(range(len(parts)))
    for i in reversed(range(len(parts))):
        trial = [j for j in keep if j != i]
        if _is_precover(M, cls, [parts[j] for j in trial]):
            keep = trial
    return [mods[j] for j in keep], [parts[j] for j in keep]


FINITE, INFINITE_DETECTED, CUTOFF = "Finite", "InfiniteDetected", "CutoffReached"


@dataclass
class RelResolution:
    """... -> X_1 -> X_0 -> M with n-exact steps and n-projective terms.

    ``syzygies[k]`` is K_k (K_0 = M), ``covers[k]``: X_k -> K_k,
    ``inclusions[k]``: K_{k+1} -> X_k.  ``reduced[k]`` is K_k without its
    n-projective summands; a repetition there certifies an infinite length.
    """

    module: Representation
    cls: TestClass
    minimize: bool = False
    covers: list[ModuleMorphism] = field(default_factory=list)
    inclusions: list[ModuleMorphism] = field(default_factory=list)
    syzygies: list[Representation] = field(default_factory=list)
    reduced: list[Representation] = field(default_factory=list)
    status: str = CUTOFF
    length: int | None = None
    period: tuple[int, int] | None = None
    certified: bool = True

    def term(self, k: int) -> Representation:
        return self.covers[k].source

    def differential(self, k: int) -> ModuleMorphism:
        return self.inclusions[k - 1].compose(self.covers[k])

    @property
    def depth(self) -> int:
        return len(self.covers)

    def _step(self):
        K = self.syzygies[-1]
        if K.is_zero():
            return False
        rest, proj = [], []
        for X, inc, _ in decompose(K):
            r = _nproj_indecomposable(X, self.cls)
            self.certified = self.certified and r.certified
            (proj if r.value else rest).append((X, inc))
        if rest:
            R, _, _ = direct_sum([X for X, _ in rest])
            into_K = from_components(R, K, [inc for _, inc in rest])
            pre = n_precover(R, self.cls, self.minimize)
            head = [into_K.compose(pre)]
            srcs = [pre.source]
        else:
            R = None
            head, srcs = [], []
        srcs += [X for X, _ in proj]
        head += [inc for _, inc in proj]
        Xk, _, _ = direct_sum(srcs, K.algebra)
        eps = from_components(Xk, K, head)
        Kn, inc = kernel(eps)
        self.reduced.append(R)
        self.covers.append(eps)
        self.inclusions.append(inc)
        self.syzygies.append(Kn)
        return True

    def extend(self, depth: int):
        if not self.syzygies:
            self.syzygies.append(self.module)
        while self.depth < depth and self._step():
            pass

    def classify(self, cutoff: int):
        """Status after looking at most ``cutoff`` + 1 steps deep."""
        self.extend(0)
        if self.module.is_zero():
            self.status, self.length = FINITE, -1
            return self
        k = 0
        while True:
            self.extend(k + 1)
            if self.reduced[k] is None:
                self.status, self.length = FINITE, k
                return self
            for j in range(k):
                Rj, Rk = self.reduced[j], self.reduced[k]
                if Rj is not None and Rj.dims == Rk.dims and is_isomorphic(Rj, Rk):
                    self.status, self.period = INFINITE_DETECTED, (j, k)
                    return self
            if k >= cutoff:
                self.status = CUTOFF
                return self
            k += 1


def n_resolution(M: Representation, cls: TestClass, cutoff: int | None = None,
                 minimize: bool = False) -> RelResolution:
    cutoff = cls.cutoff if cutoff is None else cutoff
    key = ("res", id(M), minimize)
    hit = cls._cache.get(key)
    if hit is None or hit.module is not M:
        hit = RelResolution(M, cls, minimize)
        cls._cache[key] = hit
    return hit.classify(cutoff)


def n_pd(M: Representation, cls: TestClass, cutoff: int | None = None) -> DimVerdict:
    cutoff = cls.cutoff if cutoff is None else cutoff
    res = n_resolution(M, cls, cutoff)
    b = Bounds(cls.dim_bound, cutoff)
    if res.status == FINITE:
        out = neginf(bounds=b) if res.length < 0 else finite(res.length, bounds=b)
    elif res.status == INFINITE_DETECTED:
        out = infinite(bounds=b, witness=res.period)
    else:
        out = at_least(cutoff + 1, bounds=b)
    if not res.certified:
        out = out.uncertified("n-projectivity decided over an inventory that is not known to be exhaustive")
    return out


def n_ext(M: Representation, N: Representation, i: int, cls: TestClass,
          cutoff: int | None = None) -> DimVerdict:
    """dim n-Ext^i(M, N) = H^i Hom(X_., N) for the relative resolution X_. of M."""
    if i < 0:
        raise ValueError("negative Ext degree")
    b = Bounds(cls.dim_bound, cls.cutoff if cutoff is None else cutoff)
    if i == 0:
        return finite(hom_dim(M, N), bounds=b)
    res = n_resolution(M, cls, cutoff)
    res.extend(i + 2)  # d_{i+1} is needed too
    if i >= res.depth:
        val = 0
    else:
        h = hom_dim(res.term(i), N)
        out_rank = precompose_rank(res.differential(i + 1), N) if i + 1 < res.depth else 0
        val = h - out_rank - precompose_rank(res.differential(i), N)
    out = finite(val, bounds=b)
    if not (cls.complete and res.certified):
        out = out.uncertified("relative Ext computed with a class that may be incomplete")
    return out


def n_id(N: Representation, cls: TestClass, cutoff: int | None = None) -> DimVerdict:
    """Smallest m with n-Ext^{m+1}(M, N) = 0 for every inventory module M."""
    cutoff = cls.cutoff if cutoff is None else cutoff
    b = Bounds(cls.dim_bound, cutoff)
    if N.is_zero():
        return neginf(bounds=b)
    mods = cls.test_modules()
    certified = cls.exhaustive and cls.complete
    # a periodic relative resolution with a nonzero Ext in its period forces infinity
    for M in mods:
        res = n_resolution(M, cls, cutoff)
        if res.status == INFINITE_DETECTED:
            j, k = res.period
            for t in range(j, k):
                v = n_ext(M, N, t + 1, cls, cutoff)
                if v.value:
                    out = infinite(bounds=b, witness=(M, t + 1))
                    return out if certified and res.certified else out.uncertified(
                        "periodicity found with a class that may be incomplete")
    for m in range(cutoff + 1):
        hit = None
        for M in mods:
            v = n_ext(M, N, m + 1, cls, cutoff)
            certified = certified and v.certified
            if v.value:
                hit = M
                break
        if hit is None:
            out = finite(m, bounds=b)
            return out if certified else out.uncertified(CAVEAT_FD.format(d=cls.dim_bound))
    out = at_least(cutoff + 1, bounds=b)
    return out if certified else out.uncertified(CAVEAT_FD.format(d=cls.dim_bound))


def n_pd_via_ext(M: Representation, cls: TestClass, cutoff: int | None = None) -> DimVerdict:
    """Smallest m with n-Ext^{m+1}(M, N) = 0 for every inventory module N."""
    cutoff = cls.cutoff if cutoff is None else cutoff
    b = Bounds(cls.dim_bound, cutoff)
    if M.is_zero():
        return neginf(bounds=b)
    for m in range(cutoff + 1):
        if all(n_ext(M, N, m + 1, cls, cutoff).value == 0 for N in cls.test_modules()):
            return finite(m, bounds=b)
    return at_least(cutoff + 1, bounds=b)


def fd_n_gldim(alg: BoundQuiverAlgebra, n, dim_bound: int = 6, cutoff: int = 16) -> DimVerdict:
    """Supremum of n-pd over the finite-dimensional inventory, with caveats."""
    cls = build_test_class(alg, n, dim_bound, cutoff)
    vals = []
    for M in cls.test_modules():
        v = n_pd(M, cls, cutoff)
        vals.append(DimVerdict(v.kind, v.value, v.certified, v.bounds, witness=M, notes=v.notes))
    out = dim_max(vals, Bounds(dim_bound, cutoff))
    notes = []
    if not cls.exhaustive:
        notes.append(CAVEAT_FD.format(d=dim_bound))
    if n != 0 and alg.is_hereditary() and alg.arrows and not is_dynkin_hereditary(alg):
        notes.append(CAVEAT_INFINITE_TYPE)
    if notes:
        out = out.uncertified(*notes)
    return out


# the finitistic-dimension criterion: fPD <= n iff the n- and (n+1)-classes agree

@dataclass
class FpdTheoremReport:
    algebra: BoundQuiverAlgebra
    n: int
    nproj_n: list[bool]
    nproj_next: list[bool]
    subspaces_equal: bool
    classes_equal: bool
    fpd: DimVerdict
    expected_equal: bool | None
    consistent: bool | None
    hard: bool
    pairs_checked: int = 0


def verify_fpd_theorem(alg: BoundQuiverAlgebra, n: int, dim_bound: int = 6, cutoff: int = 16,
                       max_pairs: int = 400) -> FpdTheoremReport:
    from .homalg import fpd
    c0 = build_test_class(alg, n, dim_bound, cutoff)
    c1 = build_test_class(alg, n + 1, dim_bound, cutoff)
    mods = c0.test_modules()
    a = [_nproj(M, c0).value for M in mods]
    b = [_nproj(M, c1).value for M in mods]
    pairs = [(C, A) for C in mods for A in mods][:max_pairs]
    sub_eq = all(n_exact_subspace(C, A, c0).dim == n_exact_subspace(C, A, c1).dim for C, A in pairs)
    f = fpd(alg, dim_bound, cutoff)
    le = f.le(n)
    equal = a == b and sub_eq
    hard = c0.exhaustive and c1.exhaustive and c0.complete and c1.complete and f.decisive
    consistent = None if le is None else (equal == le)
    return FpdTheoremReport(alg, n, a, b, sub_eq, a == b, f, le, consistent, hard, len(pairs))


def nproj_vs_pd(cls: TestClass) -> list[tuple[Representation, bool, DimVerdict]]:
    """Inventory modules where n-projectivity and pd <= n disagree."""
    out = []
    for M in cls.test_modules():
        r = _nproj(M, cls)
        d = pd(M, cls.cutoff)
        le = d.le(cls.n) if cls.n != INF else d.is_finite
        if le is not None and le != r.value:
            out.append((M, r.value, d))
    return out


def identity_sequence(M: Representation) -> ShortSequence:
    """The split sequence 0 -> 0 -> M -> M -> 0."""
    from .repmod import zero_map, zero_module
    Z = zero_module(M.algebra)
    return ShortSequence(zero_map(Z, M), identity(M))
