"""Binary relations over a universe and the revealed-preference machinery."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .core import ChoiceCorrespondence, ChoiceData, Universe, canonical_menus, members


@dataclass(frozen=True, eq=False)
class BinaryRelation:
    """``holds[x, y]`` means ``x`` stands in the relation to ``y``."""

    holds: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.holds, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"relation matrix must be square, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "holds", m)

    @classmethod
    def empty(cls, n: int) -> BinaryRelation:
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def total(cls, n: int) -> BinaryRelation:
        return cls(np.ones((n, n), dtype=bool))

    @classmethod
    def from_pairs(cls, universe: Universe, pairs) -> BinaryRelation:
        m = np.zeros((universe.n, universe.n), dtype=bool)
        for a, b in pairs:
            m[universe.index(a), universe.index(b)] = True
        return cls(m)

    @property
    def n(self) -> int:
        return self.holds.shape[0]

    def __call__(self, x: int, y: int) -> bool:
        return bool(self.holds[x, y])

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in np.argwhere(self.holds)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryRelation):
            return NotImplemented
        return self.holds.shape == other.holds.shape and bool(np.array_equal(self.holds, other.holds))

    def __hash__(self) -> int:
        return hash((self.n, self.holds.tobytes()))

    def to_dict(self, universe: Universe) -> dict[str, Any]:
        return {"relation": [[universe.labels[a], universe.labels[b]] for a, b in self.pairs()]}

    def format(self, universe: Universe, symbol: str = ">") -> str:
        return ", ".join(f"{universe.labels[a]}{symbol}{universe.labels[b]}" for a, b in self.pairs())

    def __repr__(self) -> str:
        return f"BinaryRelation(n={self.n}, pairs={self.pairs()})"


def relation_from_dict(doc: dict[str, Any], universe: Universe) -> BinaryRelation:
    return BinaryRelation.from_pairs(universe, [tuple(p) for p in doc["relation"]])


# --- revealed preference -----------------------------------------------------


def _pair_choices(data: ChoiceData) -> np.ndarray:
    """``out[x, y]`` is the choice from ``{x, y}`` (``-1`` if unobserved)."""
    table = data.array if isinstance(data, ChoiceCorrespondence) else np.asarray(data.choice_table())
    bits = 1 << np.arange(data.n, dtype=np.int64)
    return table[bits[:, None] | bits[None, :]]


def strict_revealed(data: ChoiceData) -> BinaryRelation:
    """``x`` beats ``y`` iff ``{x}`` is the choice from ``{x, y}``.

    Pairs whose menu is unobserved in a partial dataset hold in neither
    direction.
    """
    pc = _pair_choices(data)
    single = 1 << np.arange(data.n)
    m = pc == single[:, None]
    np.fill_diagonal(m, False)
    return BinaryRelation(m)


def weak_revealed(data: ChoiceData) -> BinaryRelation:
    """``x`` is weakly revealed preferred to ``y`` iff ``x`` is chosen from ``{x, y}``."""
    pc = _pair_choices(data)
    single = 1 << np.arange(data.n)
    m = (pc >= 0) & ((pc & single[:, None]) != 0)
    return BinaryRelation(m)


def strict_from_weak(r: BinaryRelation) -> BinaryRelation:
    return BinaryRelation(r.holds & ~r.holds.T)


def weak_from_strict(r: BinaryRelation) -> BinaryRelation:
    return BinaryRelation(~r.holds.T)


# --- property predicates -----------------------------------------------------


def is_asymmetric(r: BinaryRelation) -> bool:
    return not bool(np.any(r.holds & r.holds.T))


def is_complete(r: BinaryRelation) -> bool:
    return bool(np.all(r.holds | r.holds.T))


def _negative_transitivity_failures(h: np.ndarray) -> np.ndarray:
    # [x, y, z]: x not> y, y not> z, x > z
    return ~h[:, :, None] & ~h[None, :, :] & h[:, None, :]


def _transitivity_failures(h: np.ndarray) -> np.ndarray:
    # [x, y, z]: x R y, y R z, not x R z
    return h[:, :, None] & h[None, :, :] & ~h[:, None, :]


def is_negatively_transitive(r: BinaryRelation) -> bool:
    return not bool(np.any(_negative_transitivity_failures(r.holds)))


def is_transitive(r: BinaryRelation) -> bool:
    return not bool(np.any(_transitivity_failures(r.holds)))


def is_strict_preference(r: BinaryRelation) -> bool:
    return is_asymmetric(r) and is_negatively_transitive(r)


def is_weak_preference(r: BinaryRelation) -> bool:
    return is_complete(r) and is_transitive(r)


def negative_transitivity_witness(r: BinaryRelation) -> tuple[int, int, int] | None:
    """First ``(x, y, z)`` with ``x`` not over ``y``, ``y`` not over ``z`` and ``x`` over ``z``."""
    hits = np.argwhere(_negative_transitivity_failures(r.holds))
    if len(hits) == 0:
        return None
    x, y, z = hits[0]
    return int(x), int(y), int(z)


def asymmetry_witness(r: BinaryRelation) -> tuple[int, int] | None:
    hits = np.argwhere(r.holds & r.holds.T)
    return None if len(hits) == 0 else (int(hits[0][0]), int(hits[0][1]))


# --- induced choices ---------------------------------------------------------


def _dominators(r: BinaryRelation) -> list[int]:
    # dom[x] = mask of every y with y R x
    h = r.holds
    weights = 1 << np.arange(r.n, dtype=np.int64)
    return [int(v) for v in (h.astype(np.int64) * weights[:, None]).sum(axis=0)]


def undominated(menu: int, r: BinaryRelation) -> int:
    """Alternatives of ``menu`` that nothing in ``menu`` stands over. May be empty."""
    dom = _dominators(r)
    out = 0
    for x in members(menu):
        if not dom[x] & menu:
            out |= 1 << x
    return out


def v_maximal(menu: int, v: BinaryRelation) -> int:
    """Alternatives of ``menu`` related by ``v`` to every member of ``menu``."""
    out = 0
    for x in members(menu):
        row = 0
        for y in members(menu):
            if v.holds[x, y]:
                row |= 1 << y
        if row == menu:
            out |= 1 << x
    return out


@dataclass(frozen=True)
class Rationalization:
    """Whether a relation's undominated choices reproduce the data.

    On a partial dataset only observed menus are compared. ``holds`` is
    ``None`` when the outcome depends on unobserved menus.
    """

    holds: bool | None
    menu: int | None = None
    expected: int | None = None
    actual: int | None = None
    failures: tuple[tuple[int, int, int], ...] = field(default=())

    def to_dict(self, universe: Universe) -> dict[str, Any]:
        out: dict[str, Any] = {"rationalized": self.holds}
        if self.holds is False:
            out["menu"] = universe.names(self.menu)
            out["expected"] = universe.names(self.expected)
            out["actual"] = universe.names(self.actual)
        if len(self.failures) > 1:
            out["failure_count"] = len(self.failures)
        return out

    def __bool__(self) -> bool:
        return self.holds is True


def rationalizes(data: ChoiceData, r: BinaryRelation, verbose: bool = False) -> Rationalization:
    """Compare ``data`` with the ``r``-undominated choices menu by menu.

    Stops at the first failing menu in canonical order unless ``verbose``,
    in which case every failing menu is collected.
    """
    dom = _dominators(r)
    failures = []
    for menu in canonical_menus(data.n):
        actual = data.get(menu)
        if actual is None:
            continue
        expected = 0
        for x in members(menu):
            if not dom[x] & menu:
                expected |= 1 << x
        if expected != actual:
            failures.append((menu, expected, actual))
            if not verbose:
                break
    if not failures:
        return Rationalization(True)
    menu, expected, actual = failures[0]
    return Rationalization(False, menu, expected, actual, tuple(failures) if verbose else ())


def v_relation(data: ChoiceData) -> BinaryRelation:
    """``x V y`` iff some known menu contains both and ``x`` is chosen from it."""
    n = data.n
    rows = [0] * n
    for menu in canonical_menus(n):
        choice = data.get(menu)
        if choice is None:
            continue
        for x in members(choice):
            rows[x] |= menu
    m = np.zeros((n, n), dtype=bool)
    for x in range(n):
        for y in members(rows[x]):
            m[x, y] = True
    return BinaryRelation(m)


def pairs_observed(data: ChoiceData) -> bool:
    return bool(np.all(_pair_choices(data) >= 0))


def revealed_rationalization(data: ChoiceData) -> Rationalization:
    """Does the strict revealed preference rationalize ``data``, as far as the
    observations decide?

    With every pair menu observed this is ``rationalizes(data,
    strict_revealed(data))``. Otherwise a menu fails only when it chooses an
    alternative already beaten inside it, or leaves out one that no pair in
    the menu can beat; ``expected`` then lists the alternatives not known to
    be beaten.
    """
    if pairs_observed(data):
        return rationalizes(data, strict_revealed(data))
    n = data.n
    pc = _pair_choices(data)
    beaten = [0] * n  # y known to beat x
    unknown = [0] * n  # pair {x, y} unobserved
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            if pc[x, y] < 0:
                unknown[x] |= 1 << y
            elif pc[x, y] == 1 << y:
                beaten[x] |= 1 << y
    for menu in canonical_menus(n):
        actual = data.get(menu)
        if actual is None:
            continue
        possible = sure = 0
        for x in members(menu):
            if not beaten[x] & menu:
                possible |= 1 << x
                if not unknown[x] & menu:
                    sure |= 1 << x
        if actual & ~possible or sure & ~actual:
            return Rationalization(False, menu, possible, actual)
    return Rationalization(None)
