"""Universes, menus, choice correspondences and partial choice datasets.

Menus are plain ``int`` bit masks over alternative indices ``0..n-1``. The
canonical menu order used everywhere (witness ordering, serialization,
enumeration) is by cardinality ascending, then by numeric mask ascending.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Any, Union

import numpy as np

from .errors import (
    ChoiceOutsideMenu,
    DuplicateConflict,
    EmptyChoice,
    IncompleteData,
    MissingMenu,
    ParseError,
    UniverseTooLarge,
    UnknownAlternative,
)

MAX_ALTERNATIVES = 16
MAX_ENUMERATION = 5

COMPLETION_POLICIES = ("full-menu", "fail")

MenuLike = Union[int, Iterable[str]]


def popcount(mask: int) -> int:
    return mask.bit_count()


def members(mask: int) -> list[int]:
    """Indices set in ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@lru_cache(maxsize=None)
def canonical_menus(n: int) -> tuple[int, ...]:
    """All nonempty menus over ``n`` alternatives in canonical order."""
    return tuple(sorted(range(1, 1 << n), key=lambda m: (m.bit_count(), m)))


@lru_cache(maxsize=None)
def canonical_subsets(n: int) -> tuple[int, ...]:
    """Like :func:`canonical_menus` but starting with the empty set."""
    return (0,) + canonical_menus(n)


@lru_cache(maxsize=None)
def proper_menus(n: int) -> tuple[int, ...]:
    """Menus with at least two alternatives, canonical order."""
    return tuple(m for m in canonical_menus(n) if m.bit_count() >= 2)


@dataclass(frozen=True)
class Universe:
    """A finite, ordered set of distinctly labelled alternatives."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ParseError("a universe needs at least one alternative")
        if len(set(labels)) != len(labels):
            raise ParseError(f"alternative labels are not distinct: {list(labels)}")
        if any(not isinstance(lab, str) for lab in labels):
            raise ParseError("alternative labels must be strings")
        if len(labels) > MAX_ALTERNATIVES:
            raise UniverseTooLarge(
                f"{len(labels)} alternatives given, at most {MAX_ALTERNATIVES} supported"
            )

    @classmethod
    def of_size(cls, n: int) -> Universe:
        """Universe with labels ``x0 .. x{n-1}``."""
        return cls(tuple(f"x{i}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownAlternative(f"unknown alternative {label!r}") from None

    def mask(self, menu: MenuLike) -> int:
        """Bit mask for a menu given as a mask or an iterable of labels."""
        if isinstance(menu, (int, np.integer)):
            menu = int(menu)
            if menu < 0 or menu >> self.n:
                raise UnknownAlternative(f"mask {menu:#x} has bits outside the universe")
            return menu
        if isinstance(menu, str):
            menu = [menu]
        out = 0
        for label in menu:
            out |= 1 << self.index(label)
        return out

    def names(self, mask: int) -> list[str]:
        """Labels of the alternatives in ``mask``, in declaration order."""
        return [self.labels[i] for i in members(mask)]

    def format(self, mask: int) -> str:
        return "{" + ",".join(self.names(mask)) + "}"


def _check_pair(universe: Universe, menu: int, choice: int) -> None:
    if menu == 0:
        raise ParseError("menus must be nonempty")
    if choice == 0:
        raise EmptyChoice(f"empty choice from menu {universe.format(menu)}")
    if choice >> universe.n or menu >> universe.n:
        raise UnknownAlternative(f"menu {menu:#x} or choice {choice:#x} has bits outside the universe")
    if choice & ~menu:
        raise ChoiceOutsideMenu(
            f"choice {universe.format(choice)} is not contained in menu {universe.format(menu)}"
        )


@dataclass(frozen=True)
class ChoiceCorrespondence:
    """A total choice correspondence.

    ``table[m]`` is the chosen sub-menu of menu mask ``m``; ``table[0]`` is
    unused and always 0.
    """

    universe: Universe
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        table = tuple(int(v) for v in self.table)
        object.__setattr__(self, "table", table)
        if len(table) != 1 << self.universe.n:
            raise ParseError(
                f"table has {len(table)} entries, expected {1 << self.universe.n}"
            )
        if table[0] != 0:
            raise ParseError("table[0] must be 0")
        for menu in range(1, len(table)):
            _check_pair(self.universe, menu, table[menu])

    @classmethod
    def _trusted(cls, universe: Universe, table: tuple[int, ...]) -> ChoiceCorrespondence:
        # Skips validation; callers guarantee the invariants.
        obj = object.__new__(cls)
        object.__setattr__(obj, "universe", universe)
        object.__setattr__(obj, "table", table)
        return obj

    @property
    def n(self) -> int:
        return self.universe.n

    is_total = True

    def __call__(self, menu: MenuLike) -> int:
        return self.table[self.universe.mask(menu)]

    def get(self, menu: int) -> int:
        return self.table[menu]

    def choice_table(self) -> list[int]:
        return list(self.table)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.asarray(self.table, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    def items(self) -> list[tuple[int, int]]:
        """(menu, choice) pairs in canonical menu order."""
        return [(m, self.table[m]) for m in canonical_menus(self.n)]

    def __repr__(self) -> str:
        body = ", ".join(
            f"{self.universe.format(m)}->{self.universe.format(c)}"
            for m, c in self.items()
            if m.bit_count() > 1
        )
        return f"ChoiceCorrespondence({body})"


@dataclass(frozen=True)
class PartialChoiceDataset:
    """Observed (menu, choice) pairs, not necessarily covering every menu.

    Singleton menus are always known, since their choice is forced.
    """

    universe: Universe
    observations: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        seen: dict[int, int] = {}
        for menu, choice in self.observations:
            menu, choice = int(menu), int(choice)
            if menu >> self.universe.n or choice >> self.universe.n:
                raise UnknownAlternative("observation refers to alternatives outside the universe")
            _check_pair(self.universe, menu, choice)
            if menu in seen and seen[menu] != choice:
                raise DuplicateConflict(
                    f"menu {self.universe.format(menu)} observed with choices "
                    f"{self.universe.format(seen[menu])} and {self.universe.format(choice)}"
                )
            seen[menu] = choice
        ordered = tuple(sorted(seen.items(), key=lambda mc: (mc[0].bit_count(), mc[0])))
        object.__setattr__(self, "observations", ordered)

    @property
    def n(self) -> int:
        return self.universe.n

    @cached_property
    def _lookup(self) -> dict[int, int]:
        return dict(self.observations)

    def get(self, menu: int) -> int | None:
        """Observed choice for ``menu``, or ``None`` when unobserved."""
        if menu.bit_count() == 1:
            return menu
        return self._lookup.get(menu)

    def __call__(self, menu: MenuLike) -> int | None:
        return self.get(self.universe.mask(menu))

    def choice_table(self) -> list[int]:
        """Choice per menu mask, ``-1`` where unknown."""
        table = [-1] * (1 << self.n)
        table[0] = 0
        for i in range(self.n):
            table[1 << i] = 1 << i
        for menu, choice in self.observations:
            table[menu] = choice
        return table

    @property
    def missing(self) -> list[int]:
        """Unobserved menus of size two or more, canonical order."""
        return [m for m in proper_menus(self.n) if m not in self._lookup]

    @property
    def is_total(self) -> bool:
        return not self.missing

    @property
    def coverage(self) -> float:
        """Fraction of all nonempty menus whose choice is known."""
        total = (1 << self.n) - 1
        return (total - len(self.missing)) / total

    def __len__(self) -> int:
        return len(self.observations)


ChoiceData = Union[ChoiceCorrespondence, PartialChoiceDataset]


def _entries_to_masks(
    universe: Universe, entries: Iterable[tuple[MenuLike, MenuLike]] | Mapping[Any, Any]
) -> list[tuple[int, int]]:
    if isinstance(entries, Mapping):
        entries = entries.items()
    return [(universe.mask(menu), universe.mask(choice)) for menu, choice in entries]


def build_correspondence(
    universe: Universe, entries: Iterable[tuple[MenuLike, MenuLike]] | Mapping[Any, Any]
) -> ChoiceCorrespondence:
    """Validate ``entries`` into a total correspondence.

    Singleton menus may be omitted. Raises :class:`MissingMenu` if any menu of
    size two or more is absent.
    """
    table = [0] * (1 << universe.n)
    seen = [False] * len(table)
    for menu, choice in _entries_to_masks(universe, entries):
        _check_pair(universe, menu, choice)
        if seen[menu] and table[menu] != choice:
            raise DuplicateConflict(
                f"menu {universe.format(menu)} listed with choices "
                f"{universe.format(table[menu])} and {universe.format(choice)}"
            )
        table[menu] = choice
        seen[menu] = True
    for menu in canonical_menus(universe.n):
        if seen[menu]:
            continue
        if menu.bit_count() == 1:
            table[menu] = menu
        else:
            raise MissingMenu(f"no choice given for menu {universe.format(menu)}")
    return ChoiceCorrespondence._trusted(universe, tuple(table))


def make_dataset(
    universe: Universe, entries: Iterable[tuple[MenuLike, MenuLike]] | Mapping[Any, Any]
) -> PartialChoiceDataset:
    return PartialChoiceDataset(universe, tuple(_entries_to_masks(universe, entries)))


def complete(data: ChoiceData, policy: str = "full-menu") -> ChoiceCorrespondence:
    """Turn a partial dataset into a total correspondence.

    ``"full-menu"`` sets ``c(A) = A`` for each unobserved ``A``; ``"fail"``
    raises :class:`IncompleteData` instead.
    """
    if isinstance(data, ChoiceCorrespondence):
        return data
    if policy not in COMPLETION_POLICIES:
        raise ValueError(f"unknown completion policy {policy!r}")
    missing = data.missing
    if missing and policy == "fail":
        names = ", ".join(data.universe.format(m) for m in missing[:5])
        raise IncompleteData(f"{len(missing)} menus unobserved (first: {names})")
    table = data.choice_table()
    for menu in missing:
        table[menu] = menu
    return ChoiceCorrespondence._trusted(data.universe, tuple(table))


def as_dataset(data: ChoiceData) -> PartialChoiceDataset:
    if isinstance(data, PartialChoiceDataset):
        return data
    return PartialChoiceDataset(data.universe, tuple(data.items()))


# --- serialization -----------------------------------------------------------


def dataset_to_dict(data: ChoiceData) -> dict[str, Any]:
    """JSON-ready dict; correspondences emit every menu, singletons included."""
    u = data.universe
    pairs = data.items() if isinstance(data, ChoiceCorrespondence) else data.observations
    return {
        "alternatives": list(u.labels),
        "observations": [{"menu": u.names(m), "choice": u.names(c)} for m, c in pairs],
    }


def dumps_dataset(data: ChoiceData, indent: int | None = 2) -> str:
    return json.dumps(dataset_to_dict(data), indent=indent)


def _label_list(value: Any, where: str) -> list[str]:
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise ParseError(f"{where} must be a list of strings")
    return value


def dataset_from_dict(doc: Any) -> PartialChoiceDataset:
    if not isinstance(doc, dict):
        raise ParseError("dataset must be a JSON object")
    if "alternatives" not in doc or "observations" not in doc:
        raise ParseError("dataset needs 'alternatives' and 'observations'")
    universe = Universe(tuple(_label_list(doc["alternatives"], "alternatives")))
    obs = doc["observations"]
    if not isinstance(obs, list):
        raise ParseError("'observations' must be a list")
    pairs = []
    for k, item in enumerate(obs):
        if not isinstance(item, dict) or "menu" not in item or "choice" not in item:
            raise ParseError(f"observation {k} needs 'menu' and 'choice'")
        menu = universe.mask(_label_list(item["menu"], f"observation {k} menu"))
        choice = universe.mask(_label_list(item["choice"], f"observation {k} choice"))
        if menu == 0:
            raise ParseError(f"observation {k} has an empty menu")
        pairs.append((menu, choice))
    return PartialChoiceDataset(universe, tuple(pairs))


def ingest_dataset(text: str | bytes) -> PartialChoiceDataset:
    """Parse and validate a serialized dataset."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return dataset_from_dict(doc)


def load_dataset(path: str | Path) -> PartialChoiceDataset:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return ingest_dataset(text)
