"""Persistent text cache of indecomposable inventories, keyed by (algebra hash, d).

A record is self-describing: a version line, the SHA-256 of the algebra's
canonical text, the dimension bound and the completeness data, then one JSON
line per module.  Records whose header does not match are ignored, so a
stale entry is never served.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .inventory import Inventory, enumerate_indecomposables, install
from .quiveralg import BoundQuiverAlgebra
from .repmod import ModuleError, Representation

VERSION = "relhom-inventory v1"
ENV_VAR = "RELHOM_CACHE"


def algebra_hash(alg: BoundQuiverAlgebra) -> str:
    return hashlib.sha256(alg.signature().encode("utf-8")).hexdigest()


def cache_dir(explicit: str | None = None) -> Path | None:
    """--cache-dir wins, then $RELHOM_CACHE; None disables the cache."""
    d = explicit or os.environ.get(ENV_VAR)
    return Path(d) if d else None


def entry_path(directory: Path, alg: BoundQuiverAlgebra, dim_bound: int) -> Path:
    return directory / f"inv-{algebra_hash(alg)[:24]}-d{dim_bound}.txt"


def dumps(inv: Inventory) -> str:
    alg = inv.algebra
    lines = [
        VERSION,
        f"algebra-hash {algebra_hash(alg)}",
        f"dim-bound {inv.dim_bound}",
        f"status {inv.status}",
        f"certificate {inv.certificate}",
        f"covers-all {int(inv.covers_all)}",
    ]
    lines += [f"note {n}" for n in inv.notes]
    lines.append(f"count {len(inv.modules)}")
    for M in inv.modules:
        rec = {"name": M.name, "dims": list(M.dims),
               "maps": {a.label: M.maps[a.label].tolist() for a in alg.arrows}}
        lines.append("module " + json.dumps(rec, sort_keys=True, separators=(",", ":")))
    lines.append("end")
    return "\n".join(lines) + "\n"


def loads(text: str, alg: BoundQuiverAlgebra, dim_bound: int) -> Inventory | None:
    """Parse a record; None when it is stale, truncated or malformed."""
    lines = text.splitlines()
    if not lines or lines[0] != VERSION or lines[-1] != "end":
        return None
    head: dict[str, str] = {}
    notes, mods = [], []
    try:
        for line in lines[1:-1]:
            key, _, val = line.partition(" ")
            if key == "note":
                notes.append(val)
            elif key == "module":
                rec = json.loads(val)
                mods.append(Representation(alg, rec["dims"], rec["maps"], name=rec.get("name", "")))
            else:
                head[key] = val
        if head.get("algebra-hash") != algebra_hash(alg) or int(head["dim-bound"]) != dim_bound:
            return None
        if int(head["count"]) != len(mods):
            return None
        return Inventory(alg, dim_bound, mods, head["status"], head.get("certificate", ""),
                         covers_all=head["covers-all"] == "1", notes=notes)
    except (KeyError, ValueError, TypeError, ModuleError):
        return None


def store(directory: Path, inv: Inventory) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = entry_path(directory, inv.algebra, inv.dim_bound)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(dumps(inv), encoding="utf-8")
    os.replace(tmp, path)
    return path


def load(directory: Path, alg: BoundQuiverAlgebra, dim_bound: int) -> Inventory | None:
    path = entry_path(directory, alg, dim_bound)
    if not path.is_file():
        return None
    return loads(path.read_text(encoding="utf-8"), alg, dim_bound)


def cached_inventory(alg: BoundQuiverAlgebra, dim_bound: int, directory: Path | None) -> tuple[Inventory, str]:
    """Inventory through the persistent cache; returns (inventory, 'hit'|'miss'|'off')."""
    if directory is None:
        return enumerate_indecomposables(alg, dim_bound), "off"
    inv = load(directory, alg, dim_bound)
    if inv is not None:
        install(inv)
        return inv, "hit"
    inv = enumerate_indecomposables(alg, dim_bound)
    store(directory, inv)
    return inv, "miss"
