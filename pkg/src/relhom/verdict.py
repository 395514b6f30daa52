"""Answers to semi-decidable questions, qualified by the search bounds used."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class Bounds:
    dim_bound: int | None = None
    cutoff: int | None = None

    def __str__(self):
        d = "-" if self.dim_bound is None else self.dim_bound
        b = "-" if self.cutoff is None else self.cutoff
        return f"d:{d},B:{b}"


@dataclass(frozen=True)
class Verdict:
    value: str
    bounds: Bounds = Bounds()
    witness: Any = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.value not in (YES, NO, UNKNOWN):
            raise ValueError(f"bad verdict value {self.value!r}")

    @property
    def is_yes(self) -> bool:
        return self.value == YES

    @property
    def is_no(self) -> bool:
        return self.value == NO

    @property
    def is_unknown(self) -> bool:
        return self.value == UNKNOWN

    @property
    def decisive(self) -> bool:
        return self.value != UNKNOWN

    def with_notes(self, *notes: str) -> Verdict:
        return replace(self, notes=self.notes + tuple(notes))

    def __str__(self):
        return self.value


def yes(bounds: Bounds = Bounds(), witness=None, notes=()) -> Verdict:
    return Verdict(YES, bounds, witness, tuple(notes))


def no(bounds: Bounds = Bounds(), witness=None, notes=()) -> Verdict:
    return Verdict(NO, bounds, witness, tuple(notes))


def unknown(bounds: Bounds = Bounds(), witness=None, notes=()) -> Verdict:
    return Verdict(UNKNOWN, bounds, witness, tuple(notes))


FINITE, INFINITE, ATLEAST, NEGINF = "finite", "infinite", "atleast", "neginf"


@dataclass(frozen=True)
class DimVerdict:
    """A dimension: exact integer, infinite, at least some bound, or minus infinity.

    ``certified`` is False when the value was computed over an inventory that is
    not known to contain every module the quantifier ranges over.
    """

    kind: str
    value: int | None = None
    certified: bool = True
    bounds: Bounds = Bounds()
    witness: Any = None
    notes: tuple[str, ...] = field(default=())

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def is_infinite(self) -> bool:
        return self.kind == INFINITE

    @property
    def decisive(self) -> bool:
        return self.kind != ATLEAST and self.certified

    def le(self, m: int) -> bool | None:
        """Is the dimension at most m?  None when undetermined."""
        if self.kind == NEGINF:
            return True
        if self.kind == FINITE:
            return self.value <= m
        if self.kind == INFINITE:
            return False
        return False if self.value > m else None

    def with_notes(self, *notes: str) -> DimVerdict:
        return replace(self, notes=self.notes + tuple(n for n in notes if n not in self.notes))

    def uncertified(self, *notes: str) -> DimVerdict:
        return replace(self, certified=False).with_notes(*notes)

    def token(self) -> str:
        if self.kind in (FINITE, ATLEAST):
            return f"{self.kind}:{self.value}"
        return self.kind

    def __str__(self):
        return self.token()


def finite(m: int, **kw) -> DimVerdict:
    return DimVerdict(FINITE, m, **kw)


def infinite(**kw) -> DimVerdict:
    return DimVerdict(INFINITE, **kw)


def at_least(m: int, **kw) -> DimVerdict:
    return DimVerdict(ATLEAST, m, **kw)


def neginf(**kw) -> DimVerdict:
    return DimVerdict(NEGINF, **kw)


def dim_max(items, bounds: Bounds = Bounds()) -> DimVerdict:
    """Supremum of dimension verdicts (an empty supremum is minus infinity)."""
    items = list(items)
    certified = all(x.certified for x in items)
    notes = tuple(dict.fromkeys(n for x in items for n in x.notes))
    live = [x for x in items if x.kind != NEGINF]
    if not live:
        return neginf(certified=certified, bounds=bounds, notes=notes)
    inf = [x for x in live if x.kind == INFINITE]
    if inf:
        return infinite(certified=certified, bounds=bounds, witness=inf[0].witness, notes=notes)
    top = max(live, key=lambda x: (x.value, x.kind == ATLEAST))
    if any(x.kind == ATLEAST for x in live):
        lo = max(x.value for x in live)
        return at_least(lo, certified=certified, bounds=bounds, witness=top.witness, notes=notes)
    return finite(top.value, certified=certified, bounds=bounds, witness=top.witness, notes=notes)
