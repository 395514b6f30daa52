"""Vanishing of the n-singularity category, the kernel-closure hypothesis and
the finiteness transfer along triangular gluings.

Vanishing is decided through the dimension criterion: the n-singularity
category is zero exactly when the n-global dimension is finite, and for a
finite n this happens exactly when the global dimension is finite.  Both
sides are computed and compared; a decisive disagreement is a bug and raises.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .homalg import gldim
from .quiveralg import BoundQuiverAlgebra, TriangularGluing, glue_triangular
from .relative import (
    INF,
    RelResolution,
    TestClass,
    _nproj,
    _nproj_indecomposable,
    build_test_class,
    fd_n_gldim,
    is_n_exact,
    n_label,
    n_resolution,
)
from .repmod import ShortSequence, direct_sum, hom_matrix, kernel, morphism_from_vec
from .verdict import Bounds, DimVerdict, Verdict, no, unknown, yes


class InternalInconsistency(RuntimeError):
    pass


@dataclass
class SingularityReport:
    algebra: BoundQuiverAlgebra
    n: object
    vanishing: Verdict
    reason: str
    gldim: DimVerdict
    n_gldim: DimVerdict
    witnesses: dict = field(default_factory=dict)
    obstruction: object = None


def _finite_flag(v: DimVerdict) -> bool | None:
    """Finite / infinite when the verdict is decisive and certified, else None."""
    if not v.certified:
        return None
    if v.kind in ("finite", "neginf"):
        return True
    if v.kind == "infinite":
        return False
    return None


def n_singularity_vanishes(alg: BoundQuiverAlgebra, n, dim_bound: int = 6, cutoff: int = 16,
                           attach_witnesses: bool = True) -> SingularityReport:
    b = Bounds(dim_bound, cutoff)
    g = gldim(alg, cutoff)
    fd = fd_n_gldim(alg, n, dim_bound, cutoff)
    g_fin, fd_fin = _finite_flag(g), _finite_flag(fd)
    if n != INF and g_fin is not None and fd_fin is not None and g_fin != fd_fin:
        raise InternalInconsistency(
            f"gldim {g} and n-gldim {fd} (n={n_label(n)}) disagree on finiteness")
    if n != INF:
        deciding, label = g, "gldim"
    else:
        deciding, label = fd, "n-gldim"
    flag = _finite_flag(deciding)
    notes = tuple(fd.notes)
    obstruction = None
    if flag is True:
        verdict = yes(b, notes=notes)
        reason = f"{label} Finite({deciding.value if deciding.kind == 'finite' else '-inf'})"
    elif flag is False:
        obstruction = deciding.witness
        verdict = no(b, witness=obstruction, notes=notes)
        reason = f"{label} Infinite"
    else:
        verdict = unknown(b, notes=notes)
        reason = "UnknownBeyondBound"
    report = SingularityReport(alg, n, verdict, reason, g, fd, obstruction=obstruction)
    if verdict.is_yes and attach_witnesses:
        cls = build_test_class(alg, n, dim_bound, cutoff)
        for i, M in enumerate(cls.test_modules()):
            report.witnesses[i] = (M, n_resolution(M, cls, cutoff))
    return report


def verify_witness(res: RelResolution, cls: TestClass) -> bool:
    """Re-check a relative resolution: bounded, n-exact steps, n-projective terms."""
    if res.status != "Finite":
        return False
    for k in range(res.depth):
        eps, inc = res.covers[k], res.inclusions[k]
        seq = ShortSequence(inc, eps)
        if is_n_exact(seq, cls).is_no:
            return False
        if not _nproj(res.term(k), cls).value:
            return False
    return res.syzygies[res.depth].is_zero() if res.depth < len(res.syzygies) else True


# kernel closure

EXHAUSTIVE_MAPS = 625
RANDOM_MAPS = 32


def _maps(X, Y, rng):
    H = hom_matrix(X, Y)
    k = H.shape[1]
    if k == 0:
        return [], True
    p = X.p
    if p ** k <= EXHAUSTIVE_MAPS:
        coeffs = itertools.product(range(p), repeat=k)
        exhaustive = True
    else:
        coeffs = (rng.integers(0, p, size=k) for _ in range(RANDOM_MAPS))
        exhaustive = False
    out = [morphism_from_vec(X, Y, (H @ np.asarray(c, dtype=np.int64)) % p) for c in coeffs]
    return out, exhaustive


def check_kernel_closure(alg: BoundQuiverAlgebra, n, dim_bound: int = 6, cutoff: int = 16,
                         max_summands: int = 2) -> Verdict:
    """Are kernels of surjections between n-projectives again n-projective?

    Sources are sums of at most ``max_summands`` n-projective indecomposables,
    targets are n-projective indecomposables.
    """
    cls = build_test_class(alg, n, dim_bound, cutoff)
    b = Bounds(dim_bound, cutoff)
    nproj = []
    certified = True
    for M in cls.test_modules():
        r = _nproj_indecomposable(M, cls)
        certified = certified and r.certified
        if r.value:
            nproj.append(M)
    rng = np.random.default_rng(12345)
    exhaustive = True
    for k in range(1, max_summands + 1):
        for combo in itertools.combinations_with_replacement(range(len(nproj)), k):
            X, _, _ = direct_sum([nproj[i] for i in combo], alg)
            for Y in nproj:
                if any(Y.dims[t] > X.dims[t] for t in range(len(alg.vertices))):
                    continue
                maps, ex = _maps(X, Y, rng)
                exhaustive = exhaustive and ex
                for f in maps:
                    if not f.is_surjective():
                        continue
                    K, _ = kernel(f)
                    r = _nproj(K, cls)
                    if not r.value:
                        if r.certified and certified:
                            return no(b, witness=(f, K))
                        return unknown(b, witness=(f, K), notes=("tentative no",))
                    certified = certified and r.certified
    notes = [f"sources with at most {max_summands} summands"]
    if not exhaustive:
        notes.append("maps sampled, not enumerated")
    if certified and exhaustive and cls.exhaustive:
        return yes(b, notes=notes)
    return unknown(b, notes=tuple(notes) + ("tentative yes",))


# triangular gluings

@dataclass
class RecollementReport:
    gluing: TriangularGluing
    algebra: BoundQuiverAlgebra
    n: object
    dims: dict
    gldims: dict
    consistent: bool | None
    monotone: bool | None


def recollement_corollary_check(gluing: TriangularGluing, n, dim_bound: int = 6, cutoff: int = 16,
                                name: str = "") -> RecollementReport:
    """Finite n-gldim of the glued algebra iff finite for both corners."""
    R = glue_triangular(gluing, name=name)
    algs = {"R": R, "S": gluing.S, "T": gluing.T}
    dims = {k: fd_n_gldim(a, n, dim_bound, cutoff) for k, a in algs.items()}
    gld = {k: gldim(a, cutoff) for k, a in algs.items()}
    flags = {k: _finite_flag(v) for k, v in dims.items()}
    if None in flags.values():
        consistent = None
    else:
        consistent = flags["R"] == (flags["S"] and flags["T"])
    gflags = [v for v in gld.values()]
    if all(v.decisive for v in gflags):
        val = {k: (float("inf") if v.is_infinite else v.value) for k, v in gld.items()}
        monotone = max(val["S"], val["T"]) <= val["R"]
    else:
        monotone = None
    return RecollementReport(gluing, R, n, dims, gld, consistent, monotone)
