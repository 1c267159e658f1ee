"""Exception hierarchy for choice data handling."""

from __future__ import annotations


class ChoiceDataError(ValueError):
    """Base class for every error raised on malformed choice data."""

    code = "choice-data-error"

    def to_dict(self) -> dict[str, str]:
        return {"error": self.code, "message": str(self)}


class ParseError(ChoiceDataError):
    code = "parse-error"


class UnknownAlternative(ChoiceDataError):
    code = "unknown-alternative"


class ChoiceOutsideMenu(ChoiceDataError):
    code = "choice-outside-menu"


class EmptyChoice(ChoiceDataError):
    code = "empty-choice"


class DuplicateConflict(ChoiceDataError):
    code = "duplicate-conflict"


class MissingMenu(ChoiceDataError):
    code = "missing-menu"


class IncompleteData(ChoiceDataError):
    code = "incomplete-data"


class UniverseTooLarge(ChoiceDataError):
    code = "universe-too-large"


class EmptyChoiceUnderRelation(ChoiceDataError):
    """A relation leaves some menu without an undominated alternative."""

    code = "empty-choice-under-relation"
