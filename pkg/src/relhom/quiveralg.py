"""Bound quiver algebras kQ/I over a prime field.

Paths are written left to right: ``a.b`` means "first a, then b", and on a
left module it acts as ``M_b @ M_a``.  The ideal I must be admissible
(every relation term has length >= 2), so the Jacobson radical is the span
of the basis paths of positive length.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import exactlin as el


class AlgebraError(ValueError):
    pass


class NotFiniteDimensional(AlgebraError):
    pass


class InvalidRelation(AlgebraError):
    pass


class FieldTooSmall(AlgebraError):
    pass


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True, order=True)
class Path:
    """A path in the quiver; ``arrows`` is empty for the trivial path e_v."""

    source: str
    target: str
    arrows: tuple[str, ...] = ()

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return ".".join(self.arrows) if self.arrows else f"e_{self.source}"


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex labels")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise AlgebraError("duplicate arrow labels")
        if set(labels) & set(self.vertices):
            raise AlgebraError("arrow labels clash with vertex labels")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise AlgebraError(f"arrow {a.label} uses an undeclared vertex")

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def path(self, labels) -> Path:
        labels = tuple(labels)
        if not labels:
            raise InvalidRelation("empty path")
        arrows = [self.arrow(lab) for lab in labels]
        for x, y in zip(arrows, arrows[1:]):
            if x.target != y.source:
                raise InvalidRelation(f"path {'.'.join(labels)} is not composable")
        return Path(arrows[0].source, arrows[-1].target, labels)

    def out_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]


@dataclass(frozen=True)
class Relation:
    terms: tuple[tuple[int, tuple[str, ...]], ...]

    def __str__(self):
        return " + ".join(f"{c}*{'.'.join(pth)}" for c, pth in self.terms)


def _path_key(pth: Path, order: dict[str, int]):
    return (len(pth), order[pth.source], order[pth.target], pth.arrows)


@dataclass(eq=False)
class BoundQuiverAlgebra:
    quiver: Quiver
    relations: tuple[Relation, ...]
    p: int
    nilbound: int
    name: str = ""
    path_basis: list[Path] = field(init=False)
    _nf: dict = field(init=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.path_basis)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    def vertex_index(self, v: str) -> int:
        return self.quiver.vertices.index(v)

    def basis_paths(self, source: str | None = None, target: str | None = None) -> list[Path]:
        return [b for b in self.path_basis
                if (source is None or b.source == source) and (target is None or b.target == target)]

    def normal_form(self, pth: Path) -> dict[Path, int]:
        """Coordinates of a path in the path basis (sparse)."""
        if len(pth) >= self.nilbound:
            return {}
        return self._nf[pth]

    def concat(self, x: Path, y: Path) -> Path | None:
        if x.target != y.source:
            return None
        return Path(x.source, y.target, x.arrows + y.arrows)

    def is_hereditary(self) -> bool:
        return not self.relations

    def signature(self) -> str:
        """Canonical text used for hashing and caching."""
        lines = [f"field p={self.p}"]
        lines += [f"vertex {v}" for v in self.vertices]
        lines += [f"arrow {a.label}: {a.source} -> {a.target}" for a in self.arrows]
        lines += [f"relation {r}" for r in self.relations]
        lines.append(f"nilbound {self.nilbound}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"BoundQuiverAlgebra({self.name or '?'}, dim={self.dim}, p={self.p})"


def _all_paths(quiver: Quiver, max_len: int) -> list[Path]:
    paths = [Path(v, v) for v in quiver.vertices]
    frontier = [pth for pth in paths]
    for _ in range(max_len):
        nxt = []
        for pth in frontier:
            for a in quiver.out_arrows(pth.target):
                nxt.append(Path(pth.source, a.target, pth.arrows + (a.label,)))
        paths += nxt
        frontier = nxt
    return paths


def _check_relation(quiver: Quiver, rel: Relation, p: int) -> tuple[str, str]:
    ends = set()
    if not rel.terms:
        raise InvalidRelation("empty relation")
    for c, labels in rel.terms:
        pth = quiver.path(labels)
        if len(pth) < 2:
            raise InvalidRelation(f"relation {rel} has a term of length < 2 (not admissible)")
        ends.add((pth.source, pth.target))
    if len(ends) != 1:
        raise InvalidRelation(f"relation {rel} has non-parallel terms")
    return ends.pop()


def build_algebra(quiver: Quiver, relations, p: int, nilbound: int, name: str = "") -> BoundQuiverAlgebra:
    """Compute a path basis of kQ/I, certifying that paths of length ``nilbound`` vanish."""
    el.FieldSpec(p)
    if nilbound < 2:
        raise AlgebraError("nilbound must be >= 2")
    relations = tuple(Relation(tuple((int(c) % p, tuple(pth)) for c, pth in r.terms)) for r in relations)
    for r in relations:
        _check_relation(quiver, r, p)

    L = nilbound
    order = {v: i for i, v in enumerate(quiver.vertices)}
    paths = _all_paths(quiver, L)
    # longest paths first so that pivots eliminate long paths
    cols = sorted(paths, key=lambda q: (-len(q), _path_key(q, order)[1:]))
    col_index = {q: i for i, q in enumerate(cols)}

    gens = []
    for r in relations:
        src, tgt = _check_relation(quiver, r, p)
        shortest = min(len(t[1]) for t in r.terms)
        budget = L - shortest
        prefixes = [q for q in paths if q.target == src and len(q) <= budget]
        suffixes = [q for q in paths if q.source == tgt and len(q) <= budget]
        for u, w in product(prefixes, suffixes):
            if len(u) + len(w) > budget:
                continue
            vec = np.zeros(len(cols), dtype=np.int64)
            for c, labels in r.terms:
                ln = len(u) + len(labels) + len(w)
                if ln > L:
                    continue
                q = Path(u.source, w.target, u.arrows + tuple(labels) + w.arrows)
                vec[col_index[q]] = (vec[col_index[q]] + c) % p
            if vec.any():
                gens.append(vec)

    if gens:
        red, pivots, rk = el.rref(np.stack(gens), p)
        red = red[:rk]
    else:
        red, pivots = np.zeros((0, len(cols)), dtype=np.int64), []
    pivot_set = set(pivots)
    long_paths = [q for q in cols if len(q) == L]
    missing = [q for q in long_paths if col_index[q] not in pivot_set]
    if missing:
        raise NotFiniteDimensional(
            f"path {missing[0]} of length {L} is not in the ideal; raise nilbound or check admissibility")

    basis = sorted((q for q in cols if col_index[q] not in pivot_set),
                   key=lambda q: _path_key(q, order))
    pivot_row = {pc: i for i, pc in enumerate(pivots)}

    nf: dict[Path, dict[Path, int]] = {}
    for q in cols:
        if len(q) >= L:
            continue
        ci = col_index[q]
        if ci not in pivot_set:
            nf[q] = {q: 1}
            continue
        row = red[pivot_row[ci]]
        coords = {}
        for b in basis:
            c = int(-row[col_index[b]] % p)
            if c:
                coords[b] = c
        nf[q] = coords

    alg = BoundQuiverAlgebra(quiver, relations, p, L, name)
    alg.path_basis = basis
    alg._nf = nf
    if p <= alg.dim:
        raise FieldTooSmall(f"p={p} must exceed dim={alg.dim}")
    return alg


def opposite(alg: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    q = Quiver(alg.quiver.vertices, tuple(Arrow(a.label, a.target, a.source) for a in alg.arrows))
    rels = [Relation(tuple((c, tuple(reversed(pth))) for c, pth in r.terms)) for r in alg.relations]
    return build_algebra(q, rels, alg.p, alg.nilbound, name=(alg.name + "^op") if alg.name else "")


def radical_basis(alg: BoundQuiverAlgebra) -> list[Path]:
    return [b for b in alg.path_basis if len(b) >= 1]


@dataclass(frozen=True)
class TriangularGluing:
    """S and T glued by arrows from T-vertices to S-vertices."""

    S: BoundQuiverAlgebra
    T: BoundQuiverAlgebra
    connecting: tuple[tuple[str, str, str], ...] = ()
    extra_relations: tuple[Relation, ...] = ()


def _relabel(alg: BoundQuiverAlgebra, prefix: str):
    vmap = {v: prefix + v for v in alg.vertices}
    amap = {a.label: prefix + a.label for a in alg.arrows}
    arrows = [Arrow(amap[a.label], vmap[a.source], vmap[a.target]) for a in alg.arrows]
    rels = [Relation(tuple((c, tuple(amap[x] for x in pth)) for c, pth in r.terms)) for r in alg.relations]
    return [vmap[v] for v in alg.vertices], arrows, rels, vmap


def glue_triangular(g: TriangularGluing, name: str = "") -> BoundQuiverAlgebra:
    S, T = g.S, g.T
    if S.p != T.p:
        raise AlgebraError("S and T live over different fields")
    s_labels = set(S.vertices) | {a.label for a in S.arrows}
    t_labels = set(T.vertices) | {a.label for a in T.arrows}
    clash = bool(s_labels & t_labels)
    sv, sa, sr, smap = _relabel(S, "S" if clash else "")
    tv, ta, tr, tmap = _relabel(T, "T" if clash else "")
    conn = []
    for label, t_vertex, s_vertex in g.connecting:
        if t_vertex not in tmap or s_vertex not in smap:
            raise AlgebraError(
                f"connecting arrow {label} must go from a vertex of T to a vertex of S")
        conn.append(Arrow(label, tmap[t_vertex], smap[s_vertex]))
    quiver = Quiver(tuple(sv + tv), tuple(sa + ta + conn))
    return build_algebra(quiver, list(sr) + list(tr) + list(g.extra_relations), S.p,
                         S.nilbound + T.nilbound, name=name)


# small named algebras used throughout the tests and the CLI

def linear_quiver(n: int, p: int, name: str | None = None) -> BoundQuiverAlgebra:
    """A_n with arrows a_i: i -> i+1 and no relations."""
    vs = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple(Arrow(f"a{i}" if n > 2 else "a", str(i), str(i + 1)) for i in range(1, n))
    return build_algebra(Quiver(vs, arrows), [], p, max(n, 2), name or f"A{n}")


def kronecker(p: int) -> BoundQuiverAlgebra:
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2")))
    return build_algebra(q, [], p, 2, "Kronecker")


def dual_numbers(p: int) -> BoundQuiverAlgebra:
    """k[x]/(x^2) as a one-loop quiver."""
    q = Quiver(("1",), (Arrow("x", "1", "1"),))
    return build_algebra(q, [Relation(((1, ("x", "x")),))], p, 2, "k[x]/(x^2)")


def semisimple(n: int, p: int) -> BoundQuiverAlgebra:
    q = Quiver(tuple(str(i) for i in range(1, n + 1)), ())
    return build_algebra(q, [], p, 2, f"k^{n}")


def point(p: int) -> BoundQuiverAlgebra:
    return semisimple(1, p)
