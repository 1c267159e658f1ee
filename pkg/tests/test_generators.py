import math

import numpy as np
import pytest

import oracles as O
from choiceaxioms.axioms import check_all, check_rho, check_tau
from choiceaxioms.core import ChoiceCorrespondence, Universe, proper_menus
from choiceaxioms.errors import EmptyChoiceUnderRelation, UniverseTooLarge
from choiceaxioms.generators import (
    Categorization,
    categorize_globally,
    categorize_then_choose,
    compress,
    count_correspondences,
    deposit,
    digits_to_index,
    enumerate_all,
    enumerate_weak_orders,
    fixtures,
    from_index,
    from_preference,
    index_of,
    index_to_digits,
    parse_ranking,
    radix_bases,
    sample,
)
from choiceaxioms.relations import (
    BinaryRelation,
    is_strict_preference,
    strict_from_weak,
    strict_revealed,
    weak_from_strict,
)


def product_formula(n):
    return math.prod(2 ** bin(m).count("1") - 1 for m in range(1, 1 << n))


class TestIndexing:
    @pytest.mark.parametrize("n, expected", [(1, 1), (2, 3), (3, 189), (4, 26_254_935)])
    def test_counts(self, n, expected):
        assert count_correspondences(n) == expected == product_formula(n)

    def test_n5_count(self):
        assert count_correspondences(5) == product_formula(5) > 10**20

    def test_deposit_compress(self):
        menu = 0b1011
        subs = [deposit(k, menu) for k in range(1, 8)]
        assert sorted(subs) == [s for s in range(1, 16) if s & ~menu == 0]
        assert all(compress(deposit(k, menu), menu) == k for k in range(8))

    def test_bases(self):
        assert radix_bases(3) == (3, 3, 3, 7)
        assert len(radix_bases(4)) == len(proper_menus(4))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_enumeration_exhaustive(self, n):
        seen = list(enumerate_all(n))
        assert len(seen) == product_formula(n)
        assert len({c.table for c in seen}) == len(seen)
        assert {frozenset(O.to_oracle(c).items()) for c in seen} == {
            frozenset(o.items()) for o in O.all_correspondences(Universe.of_size(n).labels)
        }
        for k, c in enumerate(seen):
            assert index_of(c) == k
            assert from_index(n, k) == c

    def test_range_slicing(self):
        full = list(enumerate_all(3))
        parts = list(enumerate_all(3, 0, 50)) + list(enumerate_all(3, 50, 120)) + list(enumerate_all(3, 120, 189))
        assert parts == full
        assert list(enumerate_all(4, 1000, 1010)) == [from_index(4, k) for k in range(1000, 1010)]

    def test_digits_round_trip(self):
        rng = np.random.default_rng(3)
        total = count_correspondences(5)
        for _ in range(200):
            k = int(rng.integers(0, 2**62)) * 97 % total
            assert digits_to_index(5, index_to_digits(5, k)) == k

    def test_n4_count_by_streaming(self):
        # a slice count, the full count is checked by the verifier
        assert sum(1 for _ in enumerate_all(4, 0, 20_000)) == 20_000

    def test_too_large(self):
        with pytest.raises(UniverseTooLarge):
            next(enumerate_all(6))


class TestSample:
    def test_deterministic(self):
        assert sample(3, 5, 42) == sample(3, 5, 42)
        assert sample(3, 5, 42) != sample(3, 5, 43)

    def test_single_alternative(self):
        (c,) = sample(1, 1, 7)
        assert c.table == (0, 1)

    def test_valid_n4(self):
        out = sample(4, 10_000, 5)
        assert len(out) == 10_000
        for c in out:
            ChoiceCorrespondence(c.universe, c.table)  # re-run validation

    def test_uniform_per_menu(self):
        out = sample(2, 6000, 1)
        counts = np.bincount([c.table[3] for c in out], minlength=4)[1:]
        assert counts.min() > 1800  # three equally likely outcomes

    def test_large_universe(self):
        (c,) = sample(12, 1, 0)
        assert c.universe.n == 12


class TestFromPreference:
    def test_linear_order(self):
        u, weak = parse_ranking("a>b>k")
        c = from_preference(strict_from_weak(weak), u)
        for m in range(1, 8):
            assert c.get(m) == 1 << (m & -m).bit_length() - 1
        assert check_tau(c).satisfied and check_rho(c).satisfied

    def test_empty_relation(self):
        c = from_preference(BinaryRelation.empty(3))
        assert all(c.get(m) == m for m in range(1, 8))

    def test_cycle(self):
        u = Universe(("x", "y", "z"))
        cycle = BinaryRelation.from_pairs(u, [("x", "y"), ("y", "z"), ("z", "x")])
        with pytest.raises(EmptyChoiceUnderRelation, match=r"\{x,y,z\}"):
            from_preference(cycle, u)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_all_weak_orders(self, n):
        induced = set()
        u = Universe.of_size(n)
        for weak in enumerate_weak_orders(n):
            strict = strict_from_weak(weak)
            c = from_preference(strict, u)
            induced.add(c.table)
            assert all(v.satisfied for v in check_all(c).values())
            assert strict_revealed(c) == strict
        assert len(induced) == {1: 1, 2: 3, 3: 13, 4: 75}[n]

    def test_weak_orders_match_oracle(self):
        for n in (1, 2, 3):
            alts = Universe.of_size(n).labels
            ours = {frozenset((alts[a], alts[b]) for a, b in r.pairs()) for r in enumerate_weak_orders(n)}
            assert ours == {frozenset(r) for r in O.weak_orders(alts)}

    def test_rationalizable_count_n3(self):
        count = sum(1 for c in enumerate_all(3) if check_tau(c).satisfied and check_rho(c).satisfied)
        assert count == 13


class TestParseRanking:
    def test_ties(self):
        u, weak = parse_ranking("a>b=k")
        assert u.labels == ("a", "b", "k")
        assert weak(1, 2) and weak(2, 1) and weak(0, 1) and not weak(1, 0)

    @pytest.mark.parametrize("text", ["a>>b", "a>b>a"])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            parse_ranking(text, Universe(("a", "b")))


class TestCategorize:
    def test_dominated_category(self):
        # the burger is the best dish, but American food is ruled out on the full menu
        u, base = parse_ranking("burger>pasta>sushi")
        full = u.full
        cats = {full: Categorization((u.mask(["pasta", "sushi"]), u.mask(["burger"])))}
        c = categorize_then_choose(u, cats, base)
        assert u.names(c.get(full)) == ["pasta"]
        assert u.names(c.get(u.mask(["burger", "pasta"]))) == ["burger"]

    def test_rho_violation(self):
        # {y} beats the rest only on the full menu
        u, base = parse_ranking("x>y>z>w")
        cats = {u.full: Categorization((u.mask(["y"]), u.mask(["x", "z", "w"])))}
        c = categorize_then_choose(u, cats, base)
        rho = check_rho(c)
        assert rho.violated
        assert rho.witness.B == u.mask(["z", "w"])

    def test_single_block_is_maximization(self):
        for weak in enumerate_weak_orders(3):
            u = Universe.of_size(3)
            assert categorize_then_choose(u, {}, weak) == from_preference(strict_from_weak(weak), u)

    def test_global_categories(self):
        u, base = parse_ranking("a>b>c>d")
        c = categorize_globally(u, [["c", "d"], ["a", "b"]], base)
        assert u.names(c.get(u.full)) == ["c"]
        assert u.names(c.get(u.mask(["a", "b"]))) == ["a"]
        assert u.names(c.get(u.mask(["a", "d"]))) == ["d"]

    def test_invalid(self):
        u, base = parse_ranking("a>b")
        with pytest.raises(ValueError):
            categorize_then_choose(u, {3: Categorization((1,))}, base)
        with pytest.raises(ValueError):
            categorize_then_choose(u, {3: Categorization((3, 1))}, base)
        with pytest.raises(ValueError):
            categorize_then_choose(u, {}, BinaryRelation.empty(2))


class TestFixtures:
    def test_sizes(self):
        fx = fixtures()
        assert len(fx["example1"].dataset) == 7
        assert len(fx["example2"].dataset) == 7
        assert len(fx["luce-raiffa"].dataset) == 2
        assert set(fx) == {"example1", "example2", "luce-raiffa", "set-reference"}

    def test_partial_stay_partial(self):
        fx = fixtures()
        assert not fx["example1"].dataset.is_total
        assert fx["example2"].dataset.is_total

    def test_strict_preference_conversion(self):
        for weak in enumerate_weak_orders(3):
            assert is_strict_preference(strict_from_weak(weak))
            assert weak_from_strict(strict_from_weak(weak)) == weak
