"""Exhaustive and random choice correspondences, plus behavioural constructions.

Exhaustive enumeration uses a mixed-radix index with one digit per menu of
size two or more, menus taken in canonical order with the first menu most
significant. Digit ``d`` of menu ``A`` selects the nonempty subset of ``A``
whose member pattern is the binary expansion of ``d + 1``.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .axioms import Status
from .core import (
    MAX_ALTERNATIVES,
    MAX_ENUMERATION,
    ChoiceCorrespondence,
    PartialChoiceDataset,
    Universe,
    build_correspondence,
    canonical_menus,
    make_dataset,
    members,
    proper_menus,
)
from .errors import EmptyChoiceUnderRelation, UniverseTooLarge
from .relations import BinaryRelation, is_complete, is_transitive, undominated, v_maximal


def deposit(k: int, menu: int) -> int:
    """Scatter the low bits of ``k`` onto the members of ``menu``."""
    out = 0
    for j, x in enumerate(members(menu)):
        if k >> j & 1:
            out |= 1 << x
    return out


def compress(subset: int, menu: int) -> int:
    """Inverse of :func:`deposit`."""
    out = 0
    for j, x in enumerate(members(menu)):
        if subset >> x & 1:
            out |= 1 << j
    return out


@lru_cache(maxsize=None)
def radix_bases(n: int) -> tuple[int, ...]:
    """Digit bases ``2^|A| - 1`` for each proper menu, canonical order."""
    return tuple((1 << m.bit_count()) - 1 for m in proper_menus(n))


def count_correspondences(n: int) -> int:
    """Number of total correspondences on ``n`` alternatives."""
    return math.prod(radix_bases(n))


def _check_enumerable(n: int) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > MAX_ENUMERATION:
        raise UniverseTooLarge(f"enumeration supports n <= {MAX_ENUMERATION}, got {n}")


def index_to_digits(n: int, index: int) -> list[int]:
    bases = radix_bases(n)
    if not 0 <= index < math.prod(bases):
        raise IndexError(f"index {index} out of range for n={n}")
    digits = [0] * len(bases)
    for i in range(len(bases) - 1, -1, -1):
        index, digits[i] = divmod(index, bases[i])
    return digits


def digits_to_index(n: int, digits: Sequence[int]) -> int:
    index = 0
    for d, b in zip(digits, radix_bases(n)):
        index = index * b + d
    return index


def from_index(n: int, index: int, universe: Universe | None = None) -> ChoiceCorrespondence:
    _check_enumerable(n)
    universe = universe or Universe.of_size(n)
    table = [0] * (1 << n)
    for i in range(n):
        table[1 << i] = 1 << i
    for menu, d in zip(proper_menus(n), index_to_digits(n, index)):
        table[menu] = deposit(d + 1, menu)
    return ChoiceCorrespondence._trusted(universe, tuple(table))


def index_of(c: ChoiceCorrespondence) -> int:
    """Position of ``c`` in the exhaustive enumeration."""
    _check_enumerable(c.n)
    return digits_to_index(c.n, [compress(c.table[m], m) - 1 for m in proper_menus(c.n)])


def enumerate_all(
    n: int, lo: int = 0, hi: int | None = None, universe: Universe | None = None
) -> Iterator[ChoiceCorrespondence]:
    """Yield every total correspondence with index in ``[lo, hi)``, in index order."""
    _check_enumerable(n)
    total = count_correspondences(n)
    hi = total if hi is None else min(hi, total)
    if lo >= hi:
        return
    universe = universe or Universe.of_size(n)
    menus = proper_menus(n)
    bases = radix_bases(n)
    choices = [[deposit(d + 1, m) for d in range(b)] for m, b in zip(menus, bases)]
    digits = index_to_digits(n, lo)
    table = [0] * (1 << n)
    for i in range(n):
        table[1 << i] = 1 << i
    for menu, d, opts in zip(menus, digits, choices):
        table[menu] = opts[d]
    last = len(menus) - 1
    for _ in range(hi - lo):
        yield ChoiceCorrespondence._trusted(universe, tuple(table))
        i = last
        while i >= 0:
            digits[i] += 1
            if digits[i] < bases[i]:
                table[menus[i]] = choices[i][digits[i]]
                break
            digits[i] = 0
            table[menus[i]] = choices[i][0]
            i -= 1


# --- random sampling ---------------------------------------------------------


def iter_sample(
    n: int, count: int, seed: int | None = None, universe: Universe | None = None
) -> Iterator[ChoiceCorrespondence]:
    """Stream ``count`` correspondences; each menu's choice is uniform over its
    nonempty subsets, independently across menus. Deterministic given ``seed``."""
    if not 1 <= n <= MAX_ALTERNATIVES:
        raise UniverseTooLarge(f"sampling supports 1 <= n <= {MAX_ALTERNATIVES}, got {n}")
    universe = universe or Universe.of_size(n)
    rng = np.random.default_rng(seed)
    size = 1 << n
    menus = np.arange(size, dtype=np.int64)
    chunk = max(1, (1 << 18) >> n)
    done = 0
    while done < count:
        k = min(chunk, count - done)
        tables = rng.integers(0, size, size=(k, size), dtype=np.int64) & menus
        tables[:, 0] = 0
        # rejection sampling of the empty subset keeps the draw uniform
        empty = tables[:, 1:] == 0
        while empty.any():
            rows, cols = np.nonzero(empty)
            cols = cols + 1
            tables[rows, cols] = rng.integers(0, size, size=len(rows), dtype=np.int64) & cols
            empty = tables[:, 1:] == 0
        for row in tables.tolist():
            yield ChoiceCorrespondence._trusted(universe, tuple(row))
        done += k


def sample(n: int, count: int, seed: int | None = None) -> list[ChoiceCorrespondence]:
    return list(iter_sample(n, count, seed))


# --- constructions from relations -------------------------------------------


def from_preference(r: BinaryRelation, universe: Universe | None = None) -> ChoiceCorrespondence:
    """Correspondence choosing the ``r``-undominated alternatives of every menu.

    Raises :class:`EmptyChoiceUnderRelation` naming the first menu (canonical
    order) on which nothing is undominated.
    """
    universe = universe or Universe.of_size(r.n)
    table = [0] * (1 << r.n)
    for menu in canonical_menus(r.n):
        chosen = undominated(menu, r)
        if not chosen:
            raise EmptyChoiceUnderRelation(
                f"every alternative of {universe.format(menu)} is dominated"
            )
        table[menu] = chosen
    return ChoiceCorrespondence._trusted(universe, tuple(table))


def enumerate_weak_orders(n: int) -> Iterator[BinaryRelation]:
    """Brute force: every complete and transitive relation on ``n`` alternatives."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in itertools.product((False, True), repeat=len(off)):
        m = np.eye(n, dtype=bool)
        for (i, j), b in zip(off, bits):
            m[i, j] = b
        r = BinaryRelation(m)
        if is_complete(r) and is_transitive(r):
            yield r


def parse_ranking(text: str, universe: Universe | None = None) -> tuple[Universe, BinaryRelation]:
    """Parse ``"a>b=k>d"`` into a universe and the weak order it describes.

    ``>`` separates indifference classes best first; ``=`` or ``~`` joins tied
    alternatives.
    """
    groups = [[lab.strip() for lab in g.replace("~", "=").split("=")] for g in text.split(">")]
    labels = [lab for g in groups for lab in g]
    if any(not lab for lab in labels):
        raise ValueError(f"malformed ranking {text!r}")
    universe = universe or Universe(tuple(labels))
    if sorted(universe.index(lab) for lab in labels) != list(range(universe.n)):
        raise ValueError(f"ranking {text!r} must list every alternative exactly once")
    rank = {universe.index(lab): k for k, g in enumerate(groups) for lab in g}
    m = np.array([[rank[x] <= rank[y] for y in range(universe.n)] for x in range(universe.n)])
    return universe, BinaryRelation(m)


# --- categorize then choose --------------------------------------------------


@dataclass(frozen=True)
class Categorization:
    """A partition of one menu into categories, ranked best first."""

    blocks: tuple[int, ...]

    def validate(self, menu: int) -> None:
        seen = 0
        for b in self.blocks:
            if not b:
                raise ValueError("categories must be nonempty")
            if b & seen:
                raise ValueError("categories must be pairwise disjoint")
            seen |= b
        if seen != menu:
            raise ValueError("categories must cover the menu exactly")


def categorize_then_choose(
    universe: Universe,
    categorizations: Mapping[int, Categorization] | Callable[[int], Categorization],
    base_preference: BinaryRelation,
) -> ChoiceCorrespondence:
    """Drop every alternative outside the top-ranked category, then choose the
    ``base_preference``-best survivors.

    ``base_preference`` is a weak preference. Menus absent from a mapping are
    treated as a single category.
    """
    if not (is_complete(base_preference) and is_transitive(base_preference)):
        raise ValueError("base_preference must be complete and transitive")
    lookup = categorizations if callable(categorizations) else (
        lambda m: categorizations.get(m, Categorization((m,)))
    )
    table = [0] * (1 << universe.n)
    for menu in canonical_menus(universe.n):
        cat = lookup(menu)
        cat.validate(menu)
        table[menu] = v_maximal(cat.blocks[0], base_preference)
    return ChoiceCorrespondence(universe, tuple(table))


def categorize_globally(
    universe: Universe, categories: Sequence[Sequence[str]], base_preference: BinaryRelation
) -> ChoiceCorrespondence:
    """Menu-independent special case: one fixed ranked partition of the universe."""
    masks = [universe.mask(c) for c in categories]
    Categorization(tuple(masks)).validate(universe.full)

    def per_menu(menu: int) -> Categorization:
        return Categorization(tuple(b & menu for b in masks if b & menu))

    return categorize_then_choose(universe, per_menu, base_preference)


# --- fixtures ----------------------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    name: str
    dataset: PartialChoiceDataset
    expected: dict[str, Status] = field(default_factory=dict)
    note: str = ""


def fixtures() -> dict[str, Fixture]:
    """The four worked examples as datasets, with their known verdicts."""
    fruit = Universe(("a", "b", "k", "d"))
    example1 = make_dataset(
        fruit,
        [
            (["a", "b"], ["a"]),
            (["a", "k"], ["a"]),
            (["a", "d"], ["a"]),
            (["b", "k"], ["b", "k"]),
            (["k", "d"], ["k"]),
            (["b", "d"], ["b"]),
            (["a", "b", "k", "d"], ["a", "d"]),
        ],
    )
    trips = Universe(("a", "b", "k"))
    example2 = make_dataset(
        trips,
        [
            (["a"], ["a"]),
            (["b"], ["b"]),
            (["k"], ["k"]),
            (["a", "b"], ["a"]),
            (["b", "k"], ["b", "k"]),
            (["a", "k"], ["a", "k"]),
            (["a", "b", "k"], ["a", "k"]),
        ],
    )
    # x: steak tartare, y: chicken, z: frog legs
    diner = Universe(("x", "y", "z"))
    luce = make_dataset(diner, [(["x", "y"], ["y"]), (["x", "y", "z"], ["x"])])
    four = Universe(("x", "y", "z", "w"))
    set_ref = make_dataset(
        four,
        [
            (["x", "y"], ["x"]),
            (["x", "y", "z"], ["x"]),
            (["x", "y", "w"], ["x"]),
            (["x", "y", "z", "w"], ["y"]),
        ],
    )
    S, V = Status.SATISFIED, Status.VIOLATED
    return {
        "example1": Fixture(
            "example1", example1, {"tau": S, "rho": V},
            "revealed preference is a preference but does not rationalize choice",
        ),
        "example2": Fixture(
            "example2", example2, {"tau": V, "rho": S, "warp": V, "v-axiom": S, "delta": S},
            "revealed preference rationalizes choice but is not a preference",
        ),
        "luce-raiffa": Fixture(
            "luce-raiffa", luce, {}, "frog legs act as a reference point for steak tartare over chicken",
        ),
        "set-reference": Fixture(
            "set-reference", set_ref, {"rho": V},
            "only the pair {z, w} together overturns x over y",
        ),
    }


def fixture_correspondence(name: str) -> ChoiceCorrespondence:
    """A fixture as a total correspondence; only defined for total fixtures."""
    ds = fixtures()[name].dataset
    return build_correspondence(ds.universe, ds.observations)
