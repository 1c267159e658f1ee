"""Axiom checkers with three-valued verdicts and counterexample witnesses.

Every checker accepts a total :class:`ChoiceCorrespondence` or a
:class:`PartialChoiceDataset`. On partial data each axiom instance is
evaluated in three-valued logic: membership facts about unobserved menus are
unknown, and an instance counts as violated only when the observed menus
already force it to fail. A violation found this way therefore survives every
completion of the data. ``SATISFIED`` requires every instance to be decided.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Union

from .core import (
    ChoiceData,
    Universe,
    canonical_menus,
    canonical_subsets,
    members,
    proper_menus,
)
from .relations import v_maximal, v_relation

MAX_WITNESSES = 1000


class Status(str, enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class TauWitness:
    """``z`` chosen from ``{z, y}`` and ``x`` uniquely from ``{x, z}``, yet not uniquely from ``{x, y}``."""

    x: int
    y: int
    z: int

    def to_dict(self, u: Universe) -> dict[str, Any]:
        return {"x": u.labels[self.x], "z": u.labels[self.z], "y": u.labels[self.y]}


@dataclass(frozen=True)
class RhoWitness:
    """``forward``: x chosen from {x,y} and B+x but not from B+x+y.
    ``backward``: x chosen from B+x+y but not from both {x,y} and B+x."""

    x: int
    y: int
    B: int
    direction: str

    def to_dict(self, u: Universe) -> dict[str, Any]:
        return {
            "x": u.labels[self.x],
            "y": u.labels[self.y],
            "B": u.names(self.B),
            "direction": self.direction,
        }


@dataclass(frozen=True)
class WarpWitness:
    A: int
    B: int
    x: int
    y: int

    def to_dict(self, u: Universe) -> dict[str, Any]:
        return {"A": u.names(self.A), "B": u.names(self.B), "x": u.labels[self.x], "y": u.labels[self.y]}


@dataclass(frozen=True)
class DeltaWitness:
    S: int
    T: int
    x: int
    y: int

    def to_dict(self, u: Universe) -> dict[str, Any]:
        return {"S": u.names(self.S), "T": u.names(self.T), "x": u.labels[self.x], "y": u.labels[self.y]}


@dataclass(frozen=True)
class VAxiomWitness:
    menu: int
    expected: int
    actual: int

    def to_dict(self, u: Universe) -> dict[str, Any]:
        return {"menu": u.names(self.menu), "expected": u.names(self.expected), "actual": u.names(self.actual)}


Witness = Union[TauWitness, RhoWitness, WarpWitness, DeltaWitness, VAxiomWitness]


@dataclass(frozen=True)
class Verdict:
    axiom: str
    status: Status
    witnesses: tuple[Witness, ...] = field(default=())
    violation_count: int = 0

    def __post_init__(self) -> None:
        if (self.status is Status.VIOLATED) != bool(self.witnesses):
            raise ValueError("witnesses must be present exactly when the verdict is a violation")

    @property
    def satisfied(self) -> bool:
        return self.status is Status.SATISFIED

    @property
    def violated(self) -> bool:
        return self.status is Status.VIOLATED

    @property
    def witness(self) -> Witness | None:
        return self.witnesses[0] if self.witnesses else None

    def to_dict(self, universe: Universe) -> dict[str, Any]:
        return {
            "axiom": self.axiom,
            "status": self.status.value,
            "violation_count": self.violation_count,
            "witnesses": [w.to_dict(universe) for w in self.witnesses],
        }


def _verdict(axiom: str, witnesses: list, count: int, undecided: bool) -> Verdict:
    if count:
        return Verdict(axiom, Status.VIOLATED, tuple(witnesses), count)
    return Verdict(axiom, Status.UNDETERMINED if undecided else Status.SATISFIED)


def _pair(a: int, b: int) -> int:
    return (1 << a) | (1 << b)


# --- Axiom tau ---------------------------------------------------------------


def check_tau(data: ChoiceData) -> Verdict:
    """If ``z`` is chosen from ``{z, y}`` and ``{x}`` from ``{x, z}``, then ``{x}`` from ``{x, y}``.

    Ranges over ``x, y, z`` with ``z != x``: with ``z == x`` the premise about
    ``{x, z}`` is trivially true and any tie in ``{x, y}`` would count as a
    violation. Instances with ``y == z`` or ``x == y`` are tautologies.
    Witnesses come out in ``(x, y, z)`` lexicographic order.
    """
    n = data.n
    t = data.choice_table()
    witnesses: list[TauWitness] = []
    count = 0
    undecided = False
    for x in range(n):
        bx = 1 << x
        for y in range(n):
            cxy = t[bx | (1 << y)]
            concl = None if cxy < 0 else cxy == bx
            if concl is True:
                continue
            for z in range(n):
                if z == x or z == y:
                    continue
                czy = t[(1 << z) | (1 << y)]
                p1 = None if czy < 0 else bool(czy >> z & 1)
                if p1 is False:
                    continue
                cxz = t[bx | (1 << z)]
                p2 = None if cxz < 0 else cxz == bx
                if p2 is False:
                    continue
                if p1 and p2 and concl is False:
                    count += 1
                    if len(witnesses) < MAX_WITNESSES:
                        witnesses.append(TauWitness(x, y, z))
                else:
                    undecided = True
    return _verdict("tau", witnesses, count, undecided)


# --- Axiom rho ---------------------------------------------------------------


def _rho_outcomes(t: list[int], x: int, pair: int, m1: int, m2: int) -> set[bool]:
    """Possible truth values of one rho instance across completions."""
    bx = 1 << x
    unknown = sorted({m for m in (pair, m1, m2) if t[m] < 0})
    outcomes = set()
    for bits in range(1 << len(unknown)):
        assign = {m: bool(bits >> k & 1) for k, m in enumerate(unknown)}

        def chosen(m: int) -> bool:
            return assign[m] if m in assign else bool(t[m] & bx)

        outcomes.add((chosen(pair) and chosen(m1)) == chosen(m2))
    return outcomes


def check_rho(data: ChoiceData) -> Verdict:
    """``x`` chosen from ``{x, y}`` and from ``B+x`` iff ``x`` chosen from ``B+x+y``.

    ``B`` ranges over every subset of the universe, the empty set and sets
    holding ``x`` or ``y`` included. Witnesses are ordered by ``x``, then
    ``y``, then ``B`` in canonical order.
    """
    n = data.n
    t = data.choice_table()
    subsets = canonical_subsets(n)
    witnesses: list[RhoWitness] = []
    count = 0
    undecided = False
    for x in range(n):
        bx = 1 << x
        for y in range(n):
            pair = bx | (1 << y)
            in_pair = t[pair] >= 0 and bool(t[pair] & bx)
            for B in subsets:
                m1, m2 = B | bx, B | pair
                if t[pair] < 0 or t[m1] < 0 or t[m2] < 0:
                    outcomes = _rho_outcomes(t, x, pair, m1, m2)
                    if outcomes == {False}:
                        left = not (t[m2] >= 0 and t[m2] & bx)
                    elif True in outcomes:
                        undecided = undecided or False in outcomes
                        continue
                else:
                    left = in_pair and bool(t[m1] & bx)
                    if left == bool(t[m2] & bx):
                        continue
                count += 1
                if len(witnesses) < MAX_WITNESSES:
                    witnesses.append(RhoWitness(x, y, B, "forward" if left else "backward"))
    return _verdict("rho", witnesses, count, undecided)


# --- WARP --------------------------------------------------------------------


def check_warp(data: ChoiceData) -> Verdict:
    """If ``x, y`` lie in both ``A`` and ``B``, ``x`` is chosen from ``A`` and ``y`` from ``B``, then ``x`` is chosen from ``B``.

    Witnesses are ordered by ``A``, ``B`` (canonical), then ``x``, ``y``.
    """
    n = data.n
    t = data.choice_table()
    menus = proper_menus(n)
    witnesses: list[WarpWitness] = []
    count = 0
    undecided = False
    for A in menus:
        cA = t[A]
        for B in menus:
            common = A & B
            if A == B or common.bit_count() < 2:
                continue
            cB = t[B]
            if cB < 0:
                # x in c(B) and y in c(B) are unknown; decided only when no
                # member of the overlap is chosen from A.
                if cA < 0 or cA & common:
                    undecided = True
                continue
            ys = cB & common
            xs = common & ~cB
            if not ys or not xs:
                continue
            if cA < 0:
                undecided = True
                continue
            xs &= cA
            if not xs:
                continue
            count += xs.bit_count() * ys.bit_count()
            if len(witnesses) < MAX_WITNESSES:
                for x in members(xs):
                    for y in members(ys):
                        if len(witnesses) < MAX_WITNESSES:
                            witnesses.append(WarpWitness(A, B, x, y))
    return _verdict("warp", witnesses, count, undecided)


# --- V-axiom -----------------------------------------------------------------


def check_v_axiom(data: ChoiceData) -> Verdict:
    """``c(A)`` equals the V-maximal elements of ``A`` on every menu.

    V quantifies over all menus, so partial data is always undetermined.
    """
    if not data.is_total:
        return Verdict("v-axiom", Status.UNDETERMINED)
    v = v_relation(data)
    witnesses = []
    count = 0
    for menu in canonical_menus(data.n):
        expected = v_maximal(menu, v)
        actual = data.get(menu)
        if expected != actual:
            count += 1
            if len(witnesses) < MAX_WITNESSES:
                witnesses.append(VAxiomWitness(menu, expected, actual))
    return _verdict("v-axiom", witnesses, count, False)


# --- Axiom delta -------------------------------------------------------------


def check_delta(data: ChoiceData) -> Verdict:
    """For menus ``S`` strictly inside ``T`` and distinct ``x, y`` chosen from ``S``, ``c(T) != {x}``.

    Witnesses are ordered by ``S``, ``T`` (canonical), then ``y``.
    """
    n = data.n
    t = data.choice_table()
    menus = proper_menus(n)
    witnesses = []
    count = 0
    undecided = False
    for S in menus:
        cS = t[S]
        if cS >= 0 and cS.bit_count() < 2:
            continue
        for T in menus:
            if T == S or S & ~T:
                continue
            cT = t[T]
            if cT < 0:
                undecided = True
                continue
            if cT.bit_count() != 1 or not cT & S:
                continue
            if cS < 0:
                undecided = True
                continue
            if not cT & cS:
                continue
            x = cT.bit_length() - 1
            for y in members(cS & ~cT):
                count += 1
                if len(witnesses) < MAX_WITNESSES:
                    witnesses.append(DeltaWitness(S, T, x, y))
    return _verdict("delta", witnesses, count, undecided)


CHECKERS = {
    "tau": check_tau,
    "rho": check_rho,
    "warp": check_warp,
    "v-axiom": check_v_axiom,
    "delta": check_delta,
}


def check_all(data: ChoiceData) -> dict[str, Verdict]:
    return {name: fn(data) for name, fn in CHECKERS.items()}


# --- reference points --------------------------------------------------------


@dataclass(frozen=True)
class ReferencePoint:
    """``z`` helps ``x`` beat ``y``; ``clauses`` lists which definition(s) fired (1 and/or 2)."""

    z: int
    x: int
    y: int
    clauses: tuple[int, ...]

    def to_dict(self, u: Universe) -> dict[str, Any]:
        return {
            "reference": u.labels[self.z],
            "x": u.labels[self.x],
            "y": u.labels[self.y],
            "clauses": list(self.clauses),
        }


def detect_reference_points(data: ChoiceData) -> list[ReferencePoint]:
    """All ``(z, x, y)`` where ``z`` is a reference point for choosing ``x`` over ``y``.

    Clause 1: ``x`` chosen from ``{x, y, z}`` but not from ``{x, y}``.
    Clause 2: ``y`` chosen from ``{x, y}`` but only ``x`` of the pair survives in ``{x, y, z}``.
    Only clauses decided by observed menus are reported.
    """
    n = data.n
    t = data.choice_table()
    found = []
    for z in range(n):
        for x in range(n):
            for y in range(n):
                if len({x, y, z}) < 3:
                    continue
                pair = _pair(x, y)
                cp, ct = t[pair], t[pair | (1 << z)]
                if cp < 0 or ct < 0:
                    continue
                clauses = []
                if ct >> x & 1 and not cp >> x & 1:
                    clauses.append(1)
                if cp >> y & 1 and ct & pair == 1 << x:
                    clauses.append(2)
                if clauses:
                    found.append(ReferencePoint(z, x, y, tuple(clauses)))
    return found
