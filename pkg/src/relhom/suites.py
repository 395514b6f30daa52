"""Verification suites: each computes a quantity two ways, or checks a stated
bound, over a whole inventory and reports every disagreement."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import complexes as cx
from .homalg import euler_check, ext, extension_from_cocycle, fpd, pd, presentation
from .inventory import enumerate_indecomposables
from .quiveralg import (
    BoundQuiverAlgebra,
    Relation,
    TriangularGluing,
    dual_numbers,
    kronecker,
    linear_quiver,
    point,
    semisimple,
)
from .relative import (
    INF,
    build_test_class,
    fd_n_gldim,
    is_n_exact,
    is_n_projective,
    n_exact_subspace,
    n_ext,
    n_label,
    n_pd,
    verify_fpd_theorem,
)
from .repmod import ShortSequence, direct_sum, hom_basis
from .singularity import recollement_corollary_check


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    decisive: int = 0
    failures: list = field(default_factory=list)
    undecided: int = 0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, what):
        self.failures.append(what)

    def summary(self) -> str:
        state = "pass" if self.passed else "fail"
        return (f"{self.name}: {state} checked={self.checked} decisive={self.decisive} "
                f"undecided={self.undecided} failures={len(self.failures)}")


def test_algebras() -> dict[str, BoundQuiverAlgebra]:
    """The five reference algebras (A3 needs p=7 since p must exceed the dimension)."""
    return {
        "A2": linear_quiver(2, 5),
        "A3": linear_quiver(3, 7),
        "Kronecker": kronecker(5),
        "k[x]/(x^2)": dual_numbers(5),
        "k^2": semisimple(2, 5),
    }


def sample_sequences(alg: BoundQuiverAlgebra, dim_bound: int) -> list[ShortSequence]:
    """Split sequences and one nonsplit extension per Ext^1 basis element on inventory pairs."""
    inv = enumerate_indecomposables(alg, dim_bound)
    out = []
    for C in inv:
        pres = presentation(C)
        for A in inv:
            S, incs, projs = direct_sum([A, C])
            out.append(ShortSequence(incs[0], projs[1]))
            if pres is None or pres.omega.is_zero():
                continue
            for phi in hom_basis(pres.omega, A):
                seq = extension_from_cocycle(pres, A, phi)
                out.append(seq)
                break
    return out


def _same_dim(a, b) -> bool:
    return a.kind == b.kind and (a.value == b.value or a.kind in ("infinite", "neginf"))


def n0_degeneracy(alg: BoundQuiverAlgebra, dim_bound: int = 6, cutoff: int = 16) -> SuiteResult:
    res = SuiteResult(f"n0-degeneracy[{alg.name}]")
    cls = build_test_class(alg, 0, dim_bound, cutoff)
    inv = cls.inventory
    for seq in sample_sequences(alg, dim_bound):
        res.checked += 1
        v = is_n_exact(seq, cls)
        res.decisive += v.decisive
        if not v.is_yes:
            res.fail(("is_n_exact", seq))
    for M in inv:
        res.checked += 2
        proj = pd(M, cutoff)
        v = is_n_projective(M, cls)
        res.decisive += v.decisive
        if v.is_yes != (proj.kind == "finite" and proj.value == 0) or not v.decisive:
            res.fail(("is_n_projective", M))
        npd = n_pd(M, cls, cutoff)
        res.decisive += npd.decisive
        if not _same_dim(npd, proj):
            res.fail(("n_pd", M, str(npd), str(proj)))
        for N in inv:
            for i in (0, 1, 2):
                res.checked += 1
                a, b = n_ext(M, N, i, cls, cutoff), ext(M, N, i)
                res.decisive += a.certified
                if a.value != b:
                    res.fail(("n_ext", M, N, i, a.value, b))
    return res


def ext_oracle(alg: BoundQuiverAlgebra, n, dim_bound: int = 6, cutoff: int = 16) -> SuiteResult:
    res = SuiteResult(f"ext-oracle[{alg.name},n={n_label(n)}]")
    cls = build_test_class(alg, n, dim_bound, cutoff)
    for M in cls.inventory:
        for A in cls.inventory:
            res.checked += 1
            a = n_ext(M, A, 1, cls, cutoff)
            b = n_exact_subspace(M, A, cls)
            res.decisive += 1
            if a.value != b.dim:
                res.fail((M, A, a.value, b.dim))
    return res


def pd_bounds(alg: BoundQuiverAlgebra, n, dim_bound: int = 6, cutoff: int = 16) -> SuiteResult:
    """n-pd = m finite forces m <= pd <= n + m."""
    res = SuiteResult(f"pd-bounds[{alg.name},n={n_label(n)}]")
    cls = build_test_class(alg, n, dim_bound, cutoff)
    for M in cls.inventory:
        res.checked += 1
        m, d = n_pd(M, cls, cutoff), pd(M, cutoff)
        if m.decisive and m.is_infinite:
            res.decisive += 1  # nothing to bound
            continue
        if not (m.decisive and m.is_finite and d.kind in ("finite", "infinite")):
            res.undecided += 1
            continue
        res.decisive += 1
        lower = d.is_infinite or d.value >= m.value
        upper = n == INF or (d.is_finite and d.value <= n + m.value)
        if n == INF:
            upper = d.is_finite
        if not (lower and upper):
            res.fail((M, m.value, str(d)))
    return res


def fpd_equiv(alg: BoundQuiverAlgebra, n: int, dim_bound: int = 6, cutoff: int = 16) -> SuiteResult:
    res = SuiteResult(f"fpd-equiv[{alg.name},n={n}]")
    rep = verify_fpd_theorem(alg, n, dim_bound, cutoff)
    res.checked = 1
    if rep.consistent is None or not rep.hard:
        res.undecided = 1
        if rep.consistent is False:
            res.notes.append(("advisory disagreement", rep.classes_equal, str(rep.fpd)))
        return res
    res.decisive = 1
    if not rep.consistent:
        res.fail((rep.classes_equal, str(rep.fpd)))
    return res


def euler(alg: BoundQuiverAlgebra, dim_bound: int = 6) -> SuiteResult:
    res = SuiteResult(f"euler[{alg.name}]")
    if not alg.is_hereditary():
        res.undecided = 1
        return res
    inv = enumerate_indecomposables(alg, dim_bound)
    res.checked = res.decisive = len(inv) ** 2
    res.failures = euler_check(alg, dim_bound)
    return res


def random_complexes(alg: BoundQuiverAlgebra, count: int, seed: int = 0, dim_bound: int = 6):
    """Seeded random bounded complexes with degrees in [-3, 3] and vertex dimensions <= 3."""
    inv = enumerate_indecomposables(alg, dim_bound)
    pool = [M for M in inv if max(M.dims) <= 3]
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        lo = int(rng.integers(-3, 2))
        hi = int(rng.integers(lo, min(3, lo + 3) + 1))
        out.append(cx.random_complex(alg, rng, lo, hi, pool))
    return out


def cfpn(alg: BoundQuiverAlgebra, n, count: int = 20, seed: int = 0, dim_bound: int = 6,
         cutoff: int = 16) -> SuiteResult:
    """Complex n-pd two ways (Ext vanishing vs n-projective cokernel), plus shift and gldim bound."""
    res = SuiteResult(f"cfpn[{alg.name},n={n_label(n)}]")
    cls = build_test_class(alg, n, dim_bound, cutoff)
    gl = fd_n_gldim(alg, n, dim_bound, cutoff)
    for X in random_complexes(alg, count, seed, dim_bound):
        res.checked += 1
        a = cx.complex_n_pd(X, cls, cutoff)
        b = cx.complex_n_pd_via_cokernels(X, cls, cutoff)
        if not (a.decisive and b.decisive):
            res.undecided += 1
            c = cx.complex_n_pd_via_cokernels(X, cls, cutoff, strict=True)
            if c.kind != a.kind or c.value != a.value:
                res.notes.append(("strict cokernel criterion differs (undecided)", X, str(a), str(c)))
            if a.kind == b.kind and a.value == b.value:
                continue
            if a.kind != "atleast" and b.kind != "atleast":
                res.notes.append(("advisory disagreement", X, str(a), str(b)))
            continue
        res.decisive += 1
        c = cx.complex_n_pd_via_cokernels(X, cls, cutoff, strict=True)
        if c.decisive and (c.kind != a.kind or c.value != a.value):
            res.notes.append(("strict cokernel criterion differs", X, str(a), str(c)))
        if a.kind != b.kind or a.value != b.value:
            res.fail((X, str(a), str(b)))
            continue
        s = cx.complex_n_pd(cx.shift(X, 1), cls, cutoff)
        if a.is_finite and s.decisive and (not s.is_finite or s.value != a.value + 1):
            res.fail(("shift", X, str(a), str(s)))
        lo = cx.inf_n(X, cls)
        if a.is_finite and gl.decisive and gl.is_finite and lo != math.inf:
            if a.value > gl.value - lo:
                res.fail(("gldim bound", X, str(a), str(gl), lo))
    return res


def cfin(alg: BoundQuiverAlgebra, n, count: int = 20, seed: int = 1, dim_bound: int = 6,
         cutoff: int = 16) -> SuiteResult:
    """Complex n-id from Ext vanishing against modules, tested against Ext from other complexes."""
    res = SuiteResult(f"cfin[{alg.name},n={n_label(n)}]")
    cls = build_test_class(alg, n, dim_bound, cutoff)
    cplx = random_complexes(alg, count, seed, dim_bound)
    probes = cplx[:4]
    for X in cplx:
        res.checked += 1
        m = cx.complex_n_id(X, cls, cutoff)
        if not (m.decisive and m.is_finite):
            if m.decisive and m.kind == "neginf":
                res.decisive += 1
            else:
                res.undecided += 1
            continue
        res.decisive += 1
        if cx.sup_n(X, cls) > m.value:
            res.fail(("sup bound", X, str(m)))
        for Y in probes:
            lo = cx.inf_n(Y, cls)
            if lo == math.inf:
                continue
            for i in (int(m.value - lo) + 1, int(m.value - lo) + 2):
                v = cx.complex_n_ext(Y, X, i, cls)
                if v.certified and v.value != 0:
                    res.fail(("ext vanishing", X, Y, i, v.value))
    return res


def reference_gluings() -> list[tuple[str, TriangularGluing]]:
    """Triangular gluings with their expected shape; fields must exceed the glued dimension."""
    a2_7 = linear_quiver(2, 7)
    return [
        ("point+point->A2", TriangularGluing(point(5), point(5), (("c", "1", "1"),))),
        ("A2+point->A3", TriangularGluing(a2_7, point(7), (("c", "1", "1"),))),
        ("k[x]/(x^2) x point", TriangularGluing(dual_numbers(5), point(5), ())),
        ("A2+A2->A4", TriangularGluing(linear_quiver(2, 11), linear_quiver(2, 11), (("c", "2", "1"),))),
        ("A2+point, zero relation", TriangularGluing(a2_7, point(7), (("c", "1", "1"),),
                                                     (Relation(((1, ("c", "Sa")),)),))),
        ("k[x]/(x^2) x A2", TriangularGluing(dual_numbers(7), linear_quiver(2, 7), ())),
    ]


def recollement_suite(n_values=(0, 1, 2), dim_bound: int = 6, cutoff: int = 16) -> SuiteResult:
    res = SuiteResult("recollement-corollary")
    for name, g in reference_gluings():
        for n in n_values:
            res.checked += 1
            rep = recollement_corollary_check(g, n, dim_bound, cutoff, name=name)
            if rep.consistent is None:
                res.undecided += 1
            else:
                res.decisive += 1
                if not rep.consistent:
                    res.fail((name, n, {k: str(v) for k, v in rep.dims.items()}))
            if rep.monotone is False:
                res.fail((name, n, "gldim monotonicity"))
    return res


THEOREMS = ("fpd-equiv", "pd-bounds", "cfpn", "cfin", "ext-oracle", "euler", "n0-degeneracy",
            "recollement-corollary")


def run_theorem(name: str, alg: BoundQuiverAlgebra | None, n=None, dim_bound: int = 6,
                cutoff: int = 16) -> list[SuiteResult]:
    ns = [n] if n is not None else None
    if name == "recollement-corollary":
        return [recollement_suite(tuple(ns) if ns else (0, 1, 2), dim_bound, cutoff)]
    if alg is None:
        raise ValueError(f"--theorem {name} needs an algebra")
    if name == "fpd-equiv":
        return [fpd_equiv(alg, k, dim_bound, cutoff) for k in (ns or [0, 1, 2]) if k != INF]
    if name == "pd-bounds":
        return [pd_bounds(alg, k, dim_bound, cutoff) for k in (ns or [0, 1, 2, INF])]
    if name == "ext-oracle":
        return [ext_oracle(alg, k, dim_bound, cutoff) for k in (ns or [0, 1, 2, INF])]
    if name == "n0-degeneracy":
        return [n0_degeneracy(alg, dim_bound, cutoff)]
    if name == "euler":
        return [euler(alg, dim_bound)]
    if name == "cfpn":
        return [cfpn(alg, k, dim_bound=dim_bound, cutoff=cutoff) for k in (ns or [0, 1])]
    if name == "cfin":
        return [cfin(alg, k, dim_bound=dim_bound, cutoff=cutoff) for k in (ns or [0, 1])]
    raise ValueError(f"unknown theorem {name!r}")


def fpd_value(alg, dim_bound=6, cutoff=16):
    return fpd(alg, dim_bound, cutoff)
