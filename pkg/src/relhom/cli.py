"""Command line front end: one subcommand per invariant, plus the verifier suites.

Machine mode prints one line per verdict::

    VERDICT <question> value=<...> bounds=d:<d>,B:<B> witness=<...>

followed by ``certified=no`` when a dimension was computed over an inventory
not known to be exhaustive, and ``caveats=<ids>`` when caveats apply.
Exit codes: 0 when every verdict is decisive, 2 when some verdict is
unknown or uncertified, 1 on errors or failed verifier checks.
"""
from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import dataclass, field

from . import complexes as cx
from . import suites
from .cache import cache_dir, cached_inventory
from .fileio import Loader, ParseError
from .homalg import ext, fpd, gldim, injective_dimension, pd
from .quiveralg import AlgebraError
from .relative import (
    build_test_class,
    fd_n_gldim,
    is_n_exact,
    is_n_projective,
    n_ext,
    n_id,
    n_label,
    n_pd,
    n_resolution,
    parse_n,
)
from .repmod import ModuleError, ModuleMorphism, Representation, ShortSequence
from .singularity import InternalInconsistency, check_kernel_closure, n_singularity_vanishes, \
    recollement_corollary_check
from .verdict import DimVerdict, Verdict

SUBCOMMANDS = ("gldim", "fpd", "indecs", "pd", "id", "ext", "npd", "nid", "next", "nexact", "nproj",
               "nresolve", "cinfo", "cnpd", "cnid", "sing", "closure", "recollement", "verify")


@dataclass
class RunConfig:
    command: str
    algebra: str | None = None
    n: float | int | None = None
    i: int = 1
    dim_bound: int = 6
    cutoff: int = 16
    module: str | None = None
    module2: str | None = None
    seq: str | None = None
    complex: str | None = None
    gluing: str | None = None
    theorem: str | None = None
    machine: bool = False
    cache_dir: str | None = None
    minimize_precovers: bool = False

    def __post_init__(self):
        if self.dim_bound < 1:
            raise ValueError("--dim-bound must be at least 1")
        if self.cutoff < 0:
            raise ValueError("--cutoff must be nonnegative")


@dataclass
class Record:
    question: str
    value: str
    decisive: bool
    witness: str = "-"
    certified: bool = True
    notes: tuple[str, ...] = ()


@dataclass
class Report:
    config: RunConfig
    records: list[Record] = field(default_factory=list)
    details: list[str] = field(default_factory=list)
    failed: bool = False

    @property
    def exit_code(self) -> int:
        if self.failed:
            return 1
        return 0 if all(r.decisive and r.certified for r in self.records) else 2

    def lines(self) -> list[str]:
        c = self.config
        bounds = f"d:{c.dim_bound},B:{c.cutoff}"
        out = []
        if c.machine:
            out += self.details
            for r in self.records:
                line = f"VERDICT {r.question} value={r.value} bounds={bounds} witness={r.witness}"
                if not r.certified:
                    line += " certified=no"
                ids = caveat_ids(r.notes)
                if ids:
                    line += " caveats=" + ",".join(ids)
                out.append(line)
            return out
        out += self.details
        for r in self.records:
            qual = "" if r.certified else " (not certified)"
            out.append(f"{r.question}: {r.value}{qual}  [bounds {bounds}; witness {r.witness}]")
            for note in r.notes:
                out.append(f"  {note}")
        return out


def caveat_ids(notes) -> list[str]:
    ids = []
    for n in notes:
        m = re.match(r"caveat\[([\w-]+)\]", n)
        if m and m.group(1) not in ids:
            ids.append(m.group(1))
    return ids


# witness formatting (no spaces, stable across runs)

def _dims(M: Representation) -> str:
    return "(" + ",".join(str(x) for x in M.dims) + ")"


def fmt_witness(w) -> str:
    if w is None:
        return "-"
    if isinstance(w, Representation):
        name = re.sub(r"\s+", "", w.name) if w.name else ""
        return f"module:{name}{_dims(w)}" if name else f"module:{_dims(w)}"
    if isinstance(w, ShortSequence):
        return f"seq:{_dims(w.A)}->{_dims(w.B)}->{_dims(w.C)}"
    if isinstance(w, ModuleMorphism):
        return f"map:{_dims(w.source)}->{_dims(w.target)}"
    if isinstance(w, tuple) and len(w) == 2 and all(isinstance(x, int) for x in w):
        return f"period:{w[0]}-{w[1]}"
    if isinstance(w, (tuple, list)):
        return "+".join(fmt_witness(x) for x in w)
    return re.sub(r"\s+", "", str(w))


def _dim_record(q: str, v: DimVerdict) -> Record:
    return Record(q, v.token(), v.decisive or v.kind in ("finite", "infinite", "neginf"),
                  fmt_witness(v.witness), v.certified, tuple(v.notes))


def _verdict_record(q: str, v: Verdict) -> Record:
    return Record(q, v.value, v.decisive, fmt_witness(v.witness), True, tuple(v.notes))


def _squash(text: str) -> str:
    return re.sub(r"\s+", "", text)


def _ext_token(x: float) -> str:
    if x == math.inf:
        return "+inf"
    if x == -math.inf:
        return "-inf"
    return str(int(x))


# subcommand implementations

class Runner:
    def __init__(self, config: RunConfig):
        self.c = config
        self.loader = Loader()
        self.report = Report(config)
        self._alg = None

    def need(self, attr: str, flag: str):
        val = getattr(self.c, attr)
        if val is None:
            raise UsageError(f"{self.c.command} needs {flag}")
        return val

    def algebra(self):
        if self._alg is None:
            if self.c.algebra is None:
                mods = [x for x in (self.c.module, self.c.seq, self.c.complex) if x]
                if not mods:
                    raise UsageError(f"{self.c.command} needs --algebra")
                self._alg = self._object_algebra()
            else:
                self._alg = self.loader.algebra(self.c.algebra)
            # warms the in-memory inventory, through the persistent cache when enabled
            cached_inventory(self._alg, self.c.dim_bound, cache_dir(self.c.cache_dir))
        return self._alg

    def _object_algebra(self):
        if self.c.module:
            return self.loader.module(self.c.module).algebra
        if self.c.seq:
            return self.loader.sequence(self.c.seq).A.algebra
        return self.loader.complex(self.c.complex).algebra

    def _same_algebra(self, obj_alg):
        alg = self.algebra()
        if obj_alg is not alg:
            raise ModuleError("input files refer to a different algebra than --algebra")
        return alg

    def module(self, which: str = "module") -> Representation:
        ref = self.need(which, "--" + which.replace("_", "-"))
        M = self.loader.module(ref)
        self._same_algebra(M.algebra)
        return M

    def cls(self):
        n = self.need("n", "--n")
        return build_test_class(self.algebra(), n, self.c.dim_bound, self.c.cutoff)

    def add(self, rec: Record):
        self.report.records.append(rec)

    # commands

    def gldim(self):
        if self.c.n is None:
            self.add(_dim_record("gldim", gldim(self.algebra(), self.c.cutoff)))
        else:
            v = fd_n_gldim(self.algebra(), self.c.n, self.c.dim_bound, self.c.cutoff)
            self.add(_dim_record(f"n-gldim[n={n_label(self.c.n)}]", v))

    def fpd(self):
        self.add(_dim_record("fpd", fpd(self.algebra(), self.c.dim_bound, self.c.cutoff)))

    def indecs(self):
        from .inventory import enumerate_indecomposables
        inv = enumerate_indecomposables(self.algebra(), self.c.dim_bound)
        for k, M in enumerate(inv):
            self.report.details.append(f"INDEC {k} dims={_dims(M)}" + (f" name={M.name}" if M.name else ""))
        notes = [f"certificate: {inv.certificate}"] + list(inv.notes)
        if inv.covers_all:
            notes.append("no indecomposables beyond this bound")
        self.add(Record("indecs", f"{inv.status.lower()}:{len(inv)}", inv.complete, "-", True, tuple(notes)))

    def pd(self):
        M = self.module()
        self.add(_dim_record("pd", pd(M, self.c.cutoff)))

    def id(self):
        M = self.module()
        self.add(_dim_record("id", injective_dimension(M, self.c.cutoff)))

    def ext(self):
        M, N = self.module(), self.module("module2")
        self.add(Record(f"ext[i={self.c.i}]", f"dim:{ext(M, N, self.c.i)}", True))

    def npd(self):
        M = self.module()
        self.add(_dim_record(f"n-pd[n={n_label(self.c.n)}]", n_pd(M, self.cls(), self.c.cutoff)))

    def nid(self):
        M = self.module()
        self.add(_dim_record(f"n-id[n={n_label(self.c.n)}]", n_id(M, self.cls(), self.c.cutoff)))

    def next(self):
        M, N = self.module(), self.module("module2")
        v = n_ext(M, N, self.c.i, self.cls(), self.c.cutoff)
        self.add(Record(f"n-ext[n={n_label(self.c.n)},i={self.c.i}]", f"dim:{v.value}", True, "-",
                        v.certified, tuple(v.notes)))

    def nexact(self):
        seq = self.loader.sequence(self.need("seq", "--seq"))
        self._same_algebra(seq.A.algebra)
        self.add(_verdict_record(f"n-exact[n={n_label(self.c.n)}]", is_n_exact(seq, self.cls())))

    def nproj(self):
        M = self.module()
        self.add(_verdict_record(f"n-projective[n={n_label(self.c.n)}]", is_n_projective(M, self.cls())))

    def nresolve(self):
        M = self.module()
        cls = self.cls()
        res = n_resolution(M, cls, self.c.cutoff, minimize=self.c.minimize_precovers)
        for k in range(res.depth):
            if res.status == "Finite" and k > res.length:
                break
            self.report.details.append(f"TERM {k} dims={_dims(res.term(k))}")
        v = n_pd(M, cls, self.c.cutoff)
        self.add(_dim_record(f"n-resolution[n={n_label(self.c.n)}]", v))

    def _complex(self):
        X = self.loader.complex(self.need("complex", "--complex"))
        self._same_algebra(X.algebra)
        return X

    def cinfo(self):
        X = self._complex()
        e = cx.n_extent(X, self.cls())
        tag = f"n={n_label(self.c.n)}"
        self.add(Record(f"inf-n[{tag}]", _ext_token(e.inf), e.certified))
        self.add(Record(f"sup-n[{tag}]", _ext_token(e.sup), e.certified))

    def cnpd(self):
        X = self._complex()
        self.add(_dim_record(f"complex-n-pd[n={n_label(self.c.n)}]", cx.complex_n_pd(X, self.cls(), self.c.cutoff)))

    def cnid(self):
        X = self._complex()
        self.add(_dim_record(f"complex-n-id[n={n_label(self.c.n)}]", cx.complex_n_id(X, self.cls(), self.c.cutoff)))

    def sing(self):
        n = self.need("n", "--n")
        rep = n_singularity_vanishes(self.algebra(), n, self.c.dim_bound, self.c.cutoff)
        rec = _verdict_record(f"n-singularity-vanishes[n={n_label(n)}]", rep.vanishing)
        rec.notes = (f"reason: {rep.reason}",) + rec.notes
        self.add(rec)

    def closure(self):
        n = self.need("n", "--n")
        v = check_kernel_closure(self.algebra(), n, self.c.dim_bound, self.c.cutoff)
        self.add(_verdict_record(f"kernel-closure[n={n_label(n)}]", v))

    def recollement(self):
        ns = [self.c.n] if self.c.n is not None else [0, 1, 2]
        if self.c.gluing:
            gluings = [self.loader.gluing(self.c.gluing)]
        else:
            gluings = suites.reference_gluings()
        for name, g in gluings:
            for n in ns:
                rep = recollement_corollary_check(g, n, self.c.dim_bound, self.c.cutoff, name=name)
                value = {True: "yes", False: "no", None: "unknown"}[rep.consistent]
                dims = ";".join(f"{k}={v.token()}" for k, v in rep.dims.items())
                rec = Record(f"recollement[{_squash(name)},n={n_label(n)}]", value,
                             rep.consistent is not None, dims)
                if rep.consistent is False or rep.monotone is False:
                    self.report.failed = True
                self.add(rec)

    def verify(self):
        th = self.need("theorem", "--theorem")
        alg = None if th == "recollement-corollary" else self.algebra()
        for res in suites.run_theorem(th, alg, self.c.n, self.c.dim_bound, self.c.cutoff):
            if res.failures:
                value = "fail"
                self.report.failed = True
            else:
                value = "pass"
            rec = Record(f"verify:{_squash(res.name)}", value,
                         res.decisive == res.checked or res.failures != [],
                         f"checked:{res.checked},decisive:{res.decisive},failures:{len(res.failures)}")
            self.add(rec)


class UsageError(ValueError):
    pass


def run(config: RunConfig) -> Report:
    runner = Runner(config)
    getattr(runner, config.command)()
    return runner.report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="algebra file or builtin:<name>[@p]")
    common.add_argument("--n", type=parse_n, help="nonnegative integer or inf")
    common.add_argument("--i", type=int, default=1, help="Ext degree")
    common.add_argument("--dim-bound", type=int, default=6)
    common.add_argument("--cutoff", type=int, default=16)
    common.add_argument("--module")
    common.add_argument("--module2")
    common.add_argument("--seq")
    common.add_argument("--complex")
    common.add_argument("--gluing", help="gluing file for recollement (default: reference gluings)")
    common.add_argument("--machine", action="store_true")
    common.add_argument("--cache-dir")
    common.add_argument("--minimize-precovers", action="store_true")
    parser = argparse.ArgumentParser(prog="relhom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "verify":
            sp.add_argument("--theorem", required=True, choices=suites.THEOREMS)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(**{k: v for k, v in vars(args).items()})
        report = run(cfg)
    except (ParseError, ModuleError, AlgebraError, UsageError, ValueError, InternalInconsistency) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for line in report.lines():
        print(line)
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
