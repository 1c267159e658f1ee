import json

import pytest
from hypothesis import given, settings, strategies as st

from choiceaxioms.core import (
    ChoiceCorrespondence,
    PartialChoiceDataset,
    Universe,
    build_correspondence,
    canonical_menus,
    complete,
    dataset_to_dict,
    dumps_dataset,
    ingest_dataset,
    make_dataset,
)
from choiceaxioms.errors import (
    ChoiceOutsideMenu,
    DuplicateConflict,
    EmptyChoice,
    IncompleteData,
    MissingMenu,
    ParseError,
    UniverseTooLarge,
    UnknownAlternative,
)
from choiceaxioms.generators import enumerate_all, sample

ABK = Universe(("a", "b", "k"))


class TestUniverse:
    def test_labels_and_masks(self):
        assert ABK.n == 3
        assert ABK.mask(["a", "k"]) == 0b101
        assert ABK.names(0b110) == ["b", "k"]
        assert ABK.format(0b011) == "{a,b}"

    def test_duplicate_labels(self):
        with pytest.raises(ParseError):
            Universe(("a", "a"))

    def test_empty(self):
        with pytest.raises(ParseError):
            Universe(())

    def test_too_large(self):
        Universe.of_size(16)
        with pytest.raises(UniverseTooLarge):
            Universe.of_size(17)

    def test_unknown_label(self):
        with pytest.raises(UnknownAlternative):
            ABK.mask(["z"])
        with pytest.raises(UnknownAlternative):
            ABK.mask(0b1000)


def test_canonical_order():
    assert canonical_menus(3) == (1, 2, 4, 3, 5, 6, 7)


class TestBuildCorrespondence:
    def test_example2(self):
        c = build_correspondence(
            ABK,
            [(["a", "b"], ["a"]), (["b", "k"], ["b", "k"]), (["a", "k"], ["a", "k"]), (["a", "b", "k"], ["a", "k"])],
        )
        assert c(["a", "b", "k"]) == ABK.mask(["a", "k"])
        assert c(["b"]) == ABK.mask(["b"])

    def test_singleton_universe(self):
        u = Universe(("a",))
        c = build_correspondence(u, [])
        assert c.table == (0, 1)

    def test_choice_outside_menu(self):
        with pytest.raises(ChoiceOutsideMenu):
            build_correspondence(ABK, [(["a", "b"], ["k"])])

    def test_empty_choice(self):
        with pytest.raises(EmptyChoice):
            build_correspondence(ABK, [(["a", "b"], [])])

    def test_missing(self):
        with pytest.raises(MissingMenu):
            build_correspondence(ABK, [(["a", "b"], ["a"])])

    def test_duplicate_conflict(self):
        with pytest.raises(DuplicateConflict):
            build_correspondence(ABK, [(["a", "b"], ["a"]), (["b", "a"], ["b"])])

    def test_direct_construction_validates(self):
        ab = Universe(("a", "b"))
        with pytest.raises(ChoiceOutsideMenu):
            ChoiceCorrespondence(ab, (0, 2, 2, 3))
        with pytest.raises(EmptyChoice):
            ChoiceCorrespondence(ab, (0, 1, 2, 0))
        with pytest.raises(UnknownAlternative):
            ChoiceCorrespondence(Universe(("a", "b")), (0, 1, 2, 1 | 4))


EX1_JSON = json.dumps(
    {
        "alternatives": ["a", "b", "k", "d"],
        "observations": [
            {"menu": ["a", "b"], "choice": ["a"]},
            {"menu": ["a", "k"], "choice": ["a"]},
            {"menu": ["a", "d"], "choice": ["a"]},
            {"menu": ["b", "k"], "choice": ["b", "k"]},
            {"menu": ["k", "d"], "choice": ["k"]},
            {"menu": ["b", "d"], "choice": ["b"]},
            {"menu": ["a", "b", "k", "d"], "choice": ["d", "a"]},
        ],
    }
)


class TestIngest:
    def test_example1(self, example1):
        ds = ingest_dataset(EX1_JSON)
        assert len(ds) == 7
        assert ds == example1
        assert ds(["a", "b", "k"]) is None

    def test_single_observation(self):
        ds = ingest_dataset('{"alternatives": ["a"], "observations": [{"menu": ["a"], "choice": ["a"]}]}')
        assert len(ds) == 1

    def test_conflicting_duplicate(self):
        doc = {
            "alternatives": ["a", "b"],
            "observations": [{"menu": ["a", "b"], "choice": ["a"]}, {"menu": ["b", "a"], "choice": ["b"]}],
        }
        with pytest.raises(DuplicateConflict):
            ingest_dataset(json.dumps(doc))

    def test_agreeing_duplicate_is_merged(self):
        doc = {
            "alternatives": ["a", "b"],
            "observations": [{"menu": ["a", "b"], "choice": ["a"]}, {"menu": ["b", "a"], "choice": ["a"]}],
        }
        assert len(ingest_dataset(json.dumps(doc))) == 1

    @pytest.mark.parametrize(
        "text, error",
        [
            ("not json", ParseError),
            ("[]", ParseError),
            ('{"alternatives": ["a"]}', ParseError),
            ('{"alternatives": ["a"], "observations": [{"menu": []}]}', ParseError),
            ('{"alternatives": ["a"], "observations": [{"menu": [], "choice": []}]}', ParseError),
            ('{"alternatives": [1], "observations": []}', ParseError),
            ('{"alternatives": ["a"], "observations": [{"menu": ["b"], "choice": ["b"]}]}', UnknownAlternative),
            ('{"alternatives": ["a", "b"], "observations": [{"menu": ["a"], "choice": ["b"]}]}', ChoiceOutsideMenu),
            ('{"alternatives": ["a", "b"], "observations": [{"menu": ["a", "b"], "choice": []}]}', EmptyChoice),
        ],
    )
    def test_errors(self, text, error):
        with pytest.raises(error):
            ingest_dataset(text)

    def test_labels_case_sensitive(self):
        with pytest.raises(UnknownAlternative):
            ingest_dataset('{"alternatives": ["a"], "observations": [{"menu": ["A"], "choice": ["A"]}]}')


class TestComplete:
    def test_total_identity(self, example2):
        c = complete(example2, "fail")
        assert [(m, c.get(m)) for m, _ in example2.observations] == list(example2.observations)
        assert complete(c, "fail") is c

    def test_full_menu(self, example1):
        c = complete(example1, "full-menu")
        u = example1.universe
        assert c(["a", "b", "k"]) == u.mask(["a", "b", "k"])
        assert c(["a", "b", "k", "d"]) == u.mask(["a", "d"])

    def test_fail(self, example1):
        with pytest.raises(IncompleteData):
            complete(example1, "fail")

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 4), keep=st.integers(0, 2**15 - 1))
    def test_full_menu_agrees_on_observed(self, seed, n, keep):
        c = sample(n, 1, seed)[0]
        obs = [(m, ch) for k, (m, ch) in enumerate(c.items()) if keep >> k & 1]
        ds = PartialChoiceDataset(c.universe, tuple(obs))
        filled = complete(ds, "full-menu")
        for m, ch in ds.observations:
            assert filled.get(m) == ch
        for m in ds.missing:
            assert filled.get(m) == m


class TestSerialization:
    def test_round_trip_exhaustive_small(self):
        for n in (1, 2, 3):
            for c in enumerate_all(n):
                text = dumps_dataset(c)
                back = complete(ingest_dataset(text), "fail")
                assert back == c
                assert dumps_dataset(back) == text

    def test_canonical_output(self, example1):
        doc = dataset_to_dict(example1)
        assert doc["alternatives"] == ["a", "b", "k", "d"]
        assert doc["observations"][-1] == {"menu": ["a", "b", "k", "d"], "choice": ["a", "d"]}
        # menus come out in canonical order regardless of input order
        shuffled = make_dataset(example1.universe, reversed([(example1.universe.names(m), example1.universe.names(c)) for m, c in example1.observations]))
        assert dumps_dataset(shuffled) == dumps_dataset(example1)
