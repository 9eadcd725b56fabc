"""Configuration for clinical language-sample analyses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

from lsa_workbench.annotation.model import Speaker
from lsa_workbench.annotation.views import FORMS

#: Token/record classes an analysis can exclude.
EXCLUDABLE = ("punctuation", "placeholders", "separator_records", "interjections", "mazes")

DEFAULT_EXCLUDE = ("punctuation", "placeholders", "separator_records")

TAGSETS = ("upos", "stts")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class AnalysisConfig:
    """What to analyze and what to leave out.

    Defaults: both speakers, normalized forms, coarse tags, and exclusion of
    punctuation, placeholders, and separator records. Interjections and
    mazes (self-corrections and false starts, tagged X/XY) stay in unless
    switched off, mirroring common clinical practice.
    """

    speakers: tuple[Speaker, ...] = (Speaker.FP, Speaker.K)
    form: str = "normalized"
    tagset: str = "upos"
    exclude: frozenset[str] = field(default_factory=lambda: frozenset(DEFAULT_EXCLUDE))

    def __post_init__(self) -> None:
        object.__setattr__(self, "speakers", tuple(self.speakers))
        object.__setattr__(self, "exclude", frozenset(self.exclude))
        if not self.speakers:
            raise ConfigError("at least one speaker required")
        if len(set(self.speakers)) != len(self.speakers):
            raise ConfigError("duplicate speakers")
        if self.form not in FORMS:
            raise ConfigError(f"form must be one of {FORMS}, got {self.form!r}")
        if self.tagset not in TAGSETS:
            raise ConfigError(f"tagset must be one of {TAGSETS}, got {self.tagset!r}")
        unknown = self.exclude - set(EXCLUDABLE)
        if unknown:
            raise ConfigError(f"unknown exclude classes: {sorted(unknown)}")

    def excludes(self, what: str) -> bool:
        return what in self.exclude

    def to_dict(self) -> dict[str, Any]:
        return {
            "speakers": [s.value for s in self.speakers],
            "form": self.form,
            "tagset": self.tagset,
            "exclude": sorted(self.exclude),
        }

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]) -> "AnalysisConfig":
        allowed = {"speakers", "form", "tagset", "exclude"}
        unknown = set(raw) - allowed
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        kwargs: dict[str, Any] = {}
        if "speakers" in raw:
            try:
                kwargs["speakers"] = tuple(Speaker(s) for s in raw["speakers"])
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if "form" in raw:
            kwargs["form"] = raw["form"]
        if "tagset" in raw:
            kwargs["tagset"] = raw["tagset"]
        if "exclude" in raw:
            kwargs["exclude"] = frozenset(raw["exclude"])
        return cls(**kwargs)
