"""Line-oriented text formats for algebras, modules, morphisms, sequences and complexes.

Algebra::

    field p=5
    vertex 1
    vertex 2
    arrow a: 1 -> 2
    relation 1*a.b + 4*c.d      # paths compose left to right
    nilbound 2

Module::

    algebra a2.alg
    dim 1 = 1
    dim 2 = 1
    map a = [[1]]               # rows = dimension at the target

Morphism::

    source s1.mod
    target p1.mod
    vertex 1 = [[1]]

Sequence (0 -> A -> B -> C -> 0)::

    A s2.mod
    B p1.mod
    C s1.mod
    inj 2 = [[1]]
    surj 1 = [[1]]

Complex::

    term -1 = s2.mod
    term 0 = p1.mod
    diff -1 = incl.mor          # morphism from term -1 to term 0

Triangular gluing (arrows run from T-vertices to S-vertices; relations use
the glued labels, which get S/T prefixes when the two corners share labels)::

    S a2.alg
    T builtin:point@7
    connect c: 1 -> 1
    relation 1*c.Sa
    name A2+point

Referenced files are resolved relative to the referencing file.  ``#``
starts a comment.  ``builtin:<name>[@p]`` may stand for an algebra file,
with names A2, A3, A4, kronecker, dual, semisimple2, point.
"""
from __future__ import annotations

import json
import re
from pathlib import Path as FsPath

import numpy as np

from .complexes import BoundedComplex, ComplexError
from .quiveralg import (
    AlgebraError,
    Arrow,
    BoundQuiverAlgebra,
    Quiver,
    Relation,
    TriangularGluing,
    build_algebra,
    glue_triangular,
    dual_numbers,
    kronecker,
    linear_quiver,
    point,
    semisimple,
)
from .repmod import InvariantViolation, ModuleError, ModuleMorphism, Representation, ShortSequence


class ParseError(ValueError):
    def __init__(self, path, line: int | None, message: str):
        self.path, self.line, self.message = str(path), line, message
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")


def _invariant(path, line, message) -> InvariantViolation:
    where = f"{path}:{line}" if line is not None else str(path)
    return InvariantViolation(f"{where}: {message}")


BUILTINS = {
    "A2": lambda p: linear_quiver(2, p),
    "A3": lambda p: linear_quiver(3, p),
    "A4": lambda p: linear_quiver(4, p),
    "kronecker": kronecker,
    "dual": dual_numbers,
    "semisimple2": lambda p: semisimple(2, p),
    "point": point,
}
BUILTIN_DEFAULT_P = {"A3": 7, "A4": 11}


def _lines(path: FsPath):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(path, None, f"cannot read file ({exc.strerror})") from None
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield k, line


def parse_matrix(text: str, rows: int, cols: int, path, line: int) -> np.ndarray:
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        raise ParseError(path, line, f"malformed matrix {text!r}") from None
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError(path, line, "matrix must be a list of rows")
    if not all(isinstance(x, int) and not isinstance(x, bool) for r in data for x in r):
        raise ParseError(path, line, "matrix entries must be integers")
    if rows * cols == 0:
        if any(r for r in data):
            raise _invariant(path, line, f"expected an empty {rows}x{cols} matrix")
        return np.zeros((rows, cols), dtype=np.int64)
    if len(data) != rows or any(len(r) != cols for r in data):
        shape = (len(data), len(data[0]) if data else 0)
        raise _invariant(path, line, f"matrix has shape {shape}, expected ({rows}, {cols})")
    return np.array(data, dtype=np.int64)


_TERM = re.compile(r"^(?:(-?\d+)\s*\*\s*)?([A-Za-z_][\w.]*)$")


def parse_relation(text: str, arrows: set[str], path, line: int) -> Relation:
    terms = []
    for part in re.split(r"\s*\+\s*", text.replace("-", "+-").strip().lstrip("+")):
        part = part.replace(" ", "")
        m = _TERM.match(part.lstrip("-"))
        if not part or m is None:
            raise ParseError(path, line, f"malformed relation term {part!r}")
        coeff = int(m.group(1)) if m.group(1) is not None else 1
        if part.startswith("-"):
            coeff = -coeff
        labels = tuple(m.group(2).split("."))
        bad = [x for x in labels if x not in arrows]
        if bad:
            raise ParseError(path, line, f"unknown arrow {bad[0]!r} in relation")
        terms.append((coeff, labels))
    return Relation(tuple(terms))


class Loader:
    """Parses files and memoizes them by resolved path, so shared references
    (two modules naming one algebra file) yield the identical object."""

    def __init__(self):
        self._algebras: dict[str, BoundQuiverAlgebra] = {}
        self._modules: dict[str, Representation] = {}
        self._morphisms: dict[str, ModuleMorphism] = {}

    @staticmethod
    def _resolve(ref: str, base: FsPath | None) -> FsPath:
        p = FsPath(ref)
        if not p.is_absolute() and base is not None:
            p = base.parent / p
        return p.resolve()

    # algebras

    def algebra(self, ref: str, base: FsPath | None = None) -> BoundQuiverAlgebra:
        if ref.startswith("builtin:"):
            return self._builtin(ref)
        path = self._resolve(ref, base)
        key = str(path)
        if key not in self._algebras:
            self._algebras[key] = self._parse_algebra(path)
        return self._algebras[key]

    def _builtin(self, ref: str) -> BoundQuiverAlgebra:
        if ref in self._algebras:
            return self._algebras[ref]
        name, _, p = ref[len("builtin:"):].partition("@")
        if name not in BUILTINS:
            raise ParseError(ref, None, f"unknown builtin algebra {name!r}; known: {sorted(BUILTINS)}")
        try:
            prime = int(p) if p else BUILTIN_DEFAULT_P.get(name, 5)
            alg = BUILTINS[name](prime)
        except (ValueError, AlgebraError) as exc:
            raise ParseError(ref, None, str(exc)) from None
        self._algebras[ref] = alg
        return alg

    def _parse_algebra(self, path: FsPath) -> BoundQuiverAlgebra:
        p = nilbound = None
        name = path.stem
        vertices, arrows, rel_lines = [], [], []
        for k, line in _lines(path):
            head, _, rest = line.partition(" ")
            rest = rest.strip()
            if head == "field":
                m = re.fullmatch(r"p\s*=\s*(\d+)", rest)
                if m is None:
                    raise ParseError(path, k, "expected 'field p=<prime>'")
                p = int(m.group(1))
            elif head == "vertex":
                if not rest or " " in rest:
                    raise ParseError(path, k, "expected 'vertex <label>'")
                if rest in vertices:
                    raise ParseError(path, k, f"duplicate vertex {rest!r}")
                vertices.append(rest)
            elif head == "arrow":
                m = re.fullmatch(r"(\S+)\s*:\s*(\S+)\s*->\s*(\S+)", rest)
                if m is None:
                    raise ParseError(path, k, "expected 'arrow <label>: <src> -> <tgt>'")
                label, src, tgt = m.groups()
                for v in (src, tgt):
                    if v not in vertices:
                        raise ParseError(path, k, f"arrow {label!r} uses undeclared vertex {v!r}")
                if any(a.label == label for a in arrows):
                    raise ParseError(path, k, f"duplicate arrow {label!r}")
                arrows.append(Arrow(label, src, tgt))
            elif head == "relation":
                rel_lines.append((k, rest))
            elif head == "nilbound":
                if not rest.isdigit():
                    raise ParseError(path, k, "expected 'nilbound <int>'")
                nilbound = int(rest)
            elif head == "name":
                name = rest
            else:
                raise ParseError(path, k, f"unknown directive {head!r}")
        if p is None:
            raise ParseError(path, None, "missing 'field p=<prime>' line")
        if not vertices:
            raise ParseError(path, None, "no vertices")
        labels = {a.label for a in arrows}
        rels = [parse_relation(text, labels, path, k) for k, text in rel_lines]
        if nilbound is None:
            nilbound = 2 if not arrows else len(vertices) + 1
        try:
            return build_algebra(Quiver(tuple(vertices), tuple(arrows)), rels, p, nilbound, name=name)
        except AlgebraError as exc:
            line = rel_lines[0][0] if rel_lines and "relation" in str(exc) else None
            raise _invariant(path, line, str(exc)) from None

    # modules

    def module(self, ref: str, base: FsPath | None = None) -> Representation:
        path = self._resolve(ref, base)
        key = str(path)
        if key not in self._modules:
            self._modules[key] = self._parse_module(path)
        return self._modules[key]

    def _parse_module(self, path: FsPath) -> Representation:
        alg = None
        dims: dict[str, int] = {}
        raw_maps: dict[str, tuple[int, str]] = {}
        name = path.stem
        for k, line in _lines(path):
            head, _, rest = line.partition(" ")
            rest = rest.strip()
            if head == "algebra":
                alg = self.algebra(rest, path)
            elif head == "dim":
                m = re.fullmatch(r"(\S+)\s*=\s*(\d+)", rest)
                if m is None:
                    raise ParseError(path, k, "expected 'dim <vertex> = <int>'")
                dims[m.group(1)] = (k, int(m.group(2)))
            elif head == "map":
                m = re.fullmatch(r"(\S+)\s*=\s*(.+)", rest)
                if m is None:
                    raise ParseError(path, k, "expected 'map <arrow> = <matrix>'")
                raw_maps[m.group(1)] = (k, m.group(2))
            elif head == "name":
                name = rest
            else:
                raise ParseError(path, k, f"unknown directive {head!r}")
        if alg is None:
            raise ParseError(path, None, "missing 'algebra <file>' line")
        for v, (k, _) in dims.items():
            if v not in alg.vertices:
                raise ParseError(path, k, f"unknown vertex {v!r}")
        dvec = {v: d for v, (_, d) in dims.items()}
        arrows = {a.label: a for a in alg.arrows}
        maps = {}
        for label, (k, text) in raw_maps.items():
            if label not in arrows:
                raise ParseError(path, k, f"unknown arrow {label!r}")
            a = arrows[label]
            maps[label] = parse_matrix(text, dvec.get(a.target, 0), dvec.get(a.source, 0), path, k)
        M = Representation(alg, dvec, maps, name=name, check=False)
        for rel in alg.relations:
            single = _single_relation(M, rel)
            if single:
                lines = [raw_maps[x][0] for _, pth in rel.terms for x in pth if x in raw_maps]
                raise _invariant(path, min(lines) if lines else None,
                                 f"relation {rel} does not vanish on the module")
        return M

    # morphisms, sequences, complexes

    def _vertex_maps(self, path, entries, source, target):
        alg = source.algebra
        maps = {}
        for v, (k, text) in entries.items():
            if v not in alg.vertices:
                raise ParseError(path, k, f"unknown vertex {v!r}")
            maps[v] = parse_matrix(text, target.dim_at(v), source.dim_at(v), path, k)
        return maps

    def morphism(self, ref: str, base: FsPath | None = None) -> ModuleMorphism:
        path = self._resolve(ref, base)
        key = str(path)
        if key in self._morphisms:
            return self._morphisms[key]
        src = tgt = None
        entries = {}
        for k, line in _lines(path):
            head, _, rest = line.partition(" ")
            rest = rest.strip()
            if head == "source":
                src = self.module(rest, path)
            elif head == "target":
                tgt = self.module(rest, path)
            elif head == "vertex":
                m = re.fullmatch(r"(\S+)\s*=\s*(.+)", rest)
                if m is None:
                    raise ParseError(path, k, "expected 'vertex <v> = <matrix>'")
                entries[m.group(1)] = (k, m.group(2))
            else:
                raise ParseError(path, k, f"unknown directive {head!r}")
        if src is None or tgt is None:
            raise ParseError(path, None, "morphism needs 'source' and 'target' lines")
        if src.algebra is not tgt.algebra:
            raise _invariant(path, None, "source and target live over different algebras")
        maps = self._vertex_maps(path, entries, src, tgt)
        try:
            f = ModuleMorphism(src, tgt, maps)
        except ModuleError as exc:
            raise _invariant(path, None, str(exc)) from None
        self._morphisms[key] = f
        return f

    def sequence(self, ref: str, base: FsPath | None = None) -> ShortSequence:
        path = self._resolve(ref, base)
        mods, inj, surj = {}, {}, {}
        for k, line in _lines(path):
            head, _, rest = line.partition(" ")
            rest = rest.strip()
            if head in ("A", "B", "C"):
                mods[head] = self.module(rest, path)
            elif head in ("inj", "surj"):
                m = re.fullmatch(r"(\S+)\s*=\s*(.+)", rest)
                if m is None:
                    raise ParseError(path, k, f"expected '{head} <v> = <matrix>'")
                (inj if head == "inj" else surj)[m.group(1)] = (k, m.group(2))
            else:
                raise ParseError(path, k, f"unknown directive {head!r}")
        missing = [x for x in "ABC" if x not in mods]
        if missing:
            raise ParseError(path, None, f"missing module line(s) {missing}")
        A, B, C = mods["A"], mods["B"], mods["C"]
        try:
            f = ModuleMorphism(A, B, self._vertex_maps(path, inj, A, B))
            g = ModuleMorphism(B, C, self._vertex_maps(path, surj, B, C))
            seq = ShortSequence(f, g)
            seq.check()
        except ModuleError as exc:
            raise _invariant(path, None, str(exc)) from None
        return seq

    def gluing(self, ref: str, base: FsPath | None = None) -> tuple[str, TriangularGluing]:
        path = self._resolve(ref, base)
        S = T = None
        name = path.stem
        conn, rel_lines = [], []
        for k, line in _lines(path):
            head, _, rest = line.partition(" ")
            rest = rest.strip()
            if head == "S":
                S = self.algebra(rest, path)
            elif head == "T":
                T = self.algebra(rest, path)
            elif head == "connect":
                m = re.fullmatch(r"(\S+)\s*:\s*(\S+)\s*->\s*(\S+)", rest)
                if m is None:
                    raise ParseError(path, k, "expected 'connect <label>: <T-vertex> -> <S-vertex>'")
                conn.append((k, m.groups()))
            elif head == "relation":
                rel_lines.append((k, rest))
            elif head == "name":
                name = rest
            else:
                raise ParseError(path, k, f"unknown directive {head!r}")
        if S is None or T is None:
            raise ParseError(path, None, "gluing needs 'S' and 'T' lines")
        for k, (label, tv, sv) in conn:
            if tv not in T.vertices or sv not in S.vertices:
                raise ParseError(path, k, f"connecting arrow {label!r} must run from a T-vertex to an S-vertex")
        g = TriangularGluing(S, T, tuple(c for _, c in conn))
        try:
            labels = _gluing_labels(g)
            rels = tuple(parse_relation(text, labels, path, k) for k, text in rel_lines)
            g = TriangularGluing(S, T, g.connecting, rels)
            glue_triangular(g, name=name)
        except AlgebraError as exc:
            raise _invariant(path, None, str(exc)) from None
        return name, g

    def complex(self, ref: str, base: FsPath | None = None) -> BoundedComplex:
        path = self._resolve(ref, base)
        terms, diffs = {}, {}
        for k, line in _lines(path):
            head, _, rest = line.partition(" ")
            m = re.fullmatch(r"(-?\d+)\s*=\s*(\S+)", rest.strip())
            if head not in ("term", "diff"):
                raise ParseError(path, k, f"unknown directive {head!r}")
            if m is None:
                raise ParseError(path, k, f"expected '{head} <degree> = <file>'")
            deg = int(m.group(1))
            table = terms if head == "term" else diffs
            if deg in table:
                raise ParseError(path, k, f"degree {deg} given twice")
            table[deg] = (k, m.group(2))
        if not terms:
            raise ParseError(path, None, "complex has no terms")
        mods = {d: self.module(f, path) for d, (_, f) in terms.items()}
        algs = {id(M.algebra) for M in mods.values()}
        if len(algs) != 1:
            raise _invariant(path, None, "terms live over different algebras")
        alg = next(iter(mods.values())).algebra
        lo, hi = min(mods), max(mods)
        from .repmod import zero_map, zero_module
        seq = [mods.get(d, zero_module(alg)) for d in range(lo, hi + 1)]
        ds = []
        for d in range(lo, hi):
            if d in diffs:
                k, f = diffs[d]
                mor = self.morphism(f, path)
                if mor.source is not seq[d - lo] or mor.target is not seq[d - lo + 1]:
                    raise _invariant(path, k, f"differential {d} must go from term {d} to term {d + 1}")
                ds.append(mor)
            else:
                ds.append(zero_map(seq[d - lo], seq[d - lo + 1]))
        for d, (k, _) in diffs.items():
            if not lo <= d < hi:
                raise ParseError(path, k, f"differential {d} outside the term range")
        try:
            return BoundedComplex(alg, lo, seq, ds)
        except (ComplexError, ModuleError) as exc:
            raise _invariant(path, None, str(exc)) from None


def _gluing_labels(g: TriangularGluing) -> set[str]:
    """Arrow labels of the glued quiver, before the extra relations are added."""
    bare = TriangularGluing(g.S, g.T, g.connecting)
    return {a.label for a in glue_triangular(bare).arrows}


def _single_relation(M: Representation, rel: Relation) -> bool:
    """True when ``rel`` fails to vanish on M."""
    acc = None
    for c, labels in rel.terms:
        term = (c * M.path_matrix(M.algebra.quiver.path(labels))) % M.p
        acc = term if acc is None else (acc + term) % M.p
    return acc is not None and bool(acc.any())


# writing

def format_matrix(m: np.ndarray) -> str:
    return json.dumps(np.asarray(m, dtype=np.int64).tolist(), separators=(",", ":"))


def algebra_text(alg: BoundQuiverAlgebra) -> str:
    return alg.signature()


def module_text(M: Representation, algebra_ref: str) -> str:
    lines = [f"algebra {algebra_ref}"]
    lines += [f"dim {v} = {M.dim_at(v)}" for v in M.algebra.vertices]
    lines += [f"map {a.label} = {format_matrix(M.maps[a.label])}" for a in M.algebra.arrows]
    return "\n".join(lines) + "\n"
