"""Tag inventories, fine-to-coarse conversion, morphology legality."""

from __future__ import annotations

import pytest

from lsa_workbench.tagsets import (
    AMBIGUOUS_STTS,
    MORPH_TEMPLATES,
    MORPH_VALUES,
    STTS_ORDER,
    STTS_PUNCT_TAGS,
    STTS_TO_UPOS_DEFAULT,
    STTS_VERB_TAGS,
    UPOS_ORDER,
    AmbiguousTemplateError,
    SttsTag,
    UposTag,
    allowed_upos,
    check_morph_legality,
    expected_morph_keys,
    is_ambiguous,
    resolve_template,
    stts_to_upos,
    templates_for,
    validate_morph,
)


class TestInventories:
    def test_upos_has_seventeen_tags(self):
        assert len(UPOS_ORDER) == 17
        assert len(set(UPOS_ORDER)) == 17

    def test_stts_has_fiftyfive_members(self):
        # 51 word-class tags (including the legacy PAV spelling), the
        # replacement PROAV, and three punctuation tags.
        assert len(STTS_ORDER) == 55
        assert SttsTag.PAV.value == "PAV"
        assert SttsTag.PROAV.value == "PROAV"
        assert {t.value for t in STTS_PUNCT_TAGS} == {"$.", "$,", "$("}

    def test_verb_tags(self):
        assert {t.value for t in STTS_VERB_TAGS} == {
            "VVFIN", "VVIMP", "VVINF", "VVIZU", "VVPP",
            "VAFIN", "VAIMP", "VAINF", "VAPP",
            "VMFIN", "VMINF", "VMPP",
        }


class TestConversion:
    def test_total_over_enum(self):
        assert set(STTS_TO_UPOS_DEFAULT) == set(SttsTag)

    @pytest.mark.parametrize(
        "stts,upos",
        [
            ("NN", "NOUN"),
            ("NE", "PROPN"),
            ("VVFIN", "VERB"),
            ("VAFIN", "AUX"),
            ("VMFIN", "AUX"),
            ("ART", "DET"),
            ("ADJA", "ADJ"),
            ("ADJD", "ADJ"),
            ("PROAV", "ADV"),
            ("PAV", "ADV"),
            ("ITJ", "INTJ"),
            ("PTKANT", "PART"),
            ("KON", "CCONJ"),
            ("KOUS", "SCONJ"),
            ("APPR", "ADP"),
            ("CARD", "NUM"),
            ("XY", "X"),
            ("$.", "PUNCT"),
        ],
    )
    def test_default_spot_checks(self, stts, upos):
        assert stts_to_upos(SttsTag(stts)) is UposTag(upos)

    def test_ambiguous_set(self):
        assert {t.value for t in AMBIGUOUS_STTS} == {
            "PPOSAT", "PDAT", "PIAT", "PIDAT", "PRELAT", "PWAT",
            "ADJD",
            "VAFIN", "VAIMP", "VAINF", "VAPP", "VMFIN", "VMINF", "VMPP",
        }
        for tag in AMBIGUOUS_STTS:
            assert is_ambiguous(tag)
            assert len(allowed_upos(tag)) >= 2

    def test_alternatives(self):
        assert allowed_upos(SttsTag.ADJD) == {UposTag.ADJ, UposTag.ADV}
        assert allowed_upos(SttsTag.VAFIN) == {UposTag.AUX, UposTag.VERB}
        assert allowed_upos(SttsTag.PPOSAT) == {UposTag.DET, UposTag.PRON}
        assert allowed_upos(SttsTag.NN) == {UposTag.NOUN}
        assert not is_ambiguous(SttsTag.NN)


class TestMorphLegality:
    def test_thirteen_keys(self):
        assert len(MORPH_VALUES) == 13
        assert set(MORPH_VALUES) == {
            "Case", "Number", "Gender", "Person", "PronType", "Mood",
            "Tense", "VerbForm", "Definite", "Degree", "Foreign", "Poss",
            "Reflex",
        }

    def test_value_spot_checks(self):
        assert MORPH_VALUES["Case"] == {"Nom", "Acc", "Dat", "Gen"}
        assert MORPH_VALUES["Number"] == {"Sing", "Plur"}
        assert MORPH_VALUES["Person"] == {"1", "2", "3"}
        assert "Part" in MORPH_VALUES["VerbForm"]

    def test_legal_morph_accepted(self):
        assert check_morph_legality({"Case": "Nom", "Number": "Sing"}) == []

    def test_unknown_key_rejected(self):
        findings = check_morph_legality({"VerForm": "Fin"})
        assert len(findings) == 1
        assert findings[0].code == "morph-key"

    def test_illegal_value_rejected(self):
        findings = check_morph_legality({"Case": "Norm"})
        assert len(findings) == 1
        assert findings[0].code == "morph-value"


class TestTemplates:
    def test_twentyone_templates(self):
        assert len(MORPH_TEMPLATES) == 21

    def test_every_stts_tag_in_templates_is_valid(self):
        for template in MORPH_TEMPLATES:
            for tag in template.tags:
                assert tag in set(SttsTag)
            for key in template.keys:
                assert key in MORPH_VALUES

    def test_finite_verb_template(self):
        keys = expected_morph_keys(SttsTag.VVFIN)
        assert keys == {"Mood", "Number", "Person", "Tense", "VerbForm"}
        assert expected_morph_keys(SttsTag.VAFIN) == keys
        assert expected_morph_keys(SttsTag.VMFIN) == keys

    def test_infinitive_and_participle(self):
        assert expected_morph_keys(SttsTag.VVINF) == {"VerbForm"}
        assert expected_morph_keys(SttsTag.VVIZU) == {"VerbForm"}
        assert expected_morph_keys(SttsTag.VVPP) == {"VerbForm"}

    def test_demonstrative_split_on_number(self):
        sing = resolve_template(SttsTag.PDS, {"Number": "Sing", "Case": "Nom"})
        plur = resolve_template(SttsTag.PDS, {"Number": "Plur", "Case": "Nom"})
        assert "Gender" in sing.keys
        assert "Gender" not in plur.keys

    def test_personal_pronoun_split_on_gender(self):
        with_gender = resolve_template(
            SttsTag.PPER, {"Gender": "Fem", "Case": "Nom", "Number": "Sing", "Person": "3"}
        )
        without_gender = resolve_template(
            SttsTag.PPER, {"Case": "Nom", "Number": "Sing", "Person": "2"}
        )
        assert "Gender" in with_gender.keys
        assert "Gender" not in without_gender.keys

    def test_ambiguous_without_hint_raises(self):
        with pytest.raises(AmbiguousTemplateError):
            expected_morph_keys(SttsTag.PDS)

    def test_untemplated_tag_has_no_templates(self):
        assert templates_for(SttsTag.KON) == ()

    def test_validate_morph_missing_key_warns(self):
        findings = validate_morph(
            SttsTag.VVFIN, {"Mood": "Ind", "Number": "Sing", "Person": "3", "Tense": "Pres"}
        )
        assert any(f.code == "morph-missing" and "VerbForm" in f.message for f in findings)

    def test_validate_morph_unexpected_key_warns(self):
        findings = validate_morph(SttsTag.VVINF, {"VerbForm": "Inf", "Case": "Nom"})
        assert any(f.code == "morph-unexpected" and "Case" in f.message for f in findings)

    def test_validate_morph_clean(self):
        assert validate_morph(SttsTag.VVINF, {"VerbForm": "Inf"}) == []


class TestFixtureConsistency:
    def test_fixture_tags_agree_with_conversion(self, fixture_transcript):
        for utt, token in fixture_transcript.iter_tokens():
            if token.upos is None or token.stts is None:
                continue
            assert token.upos in allowed_upos(token.stts), (
                utt.send_id, token.word_id, token.surface
            )

    def test_fixture_morph_is_legal_and_template_clean(self, fixture_transcript):
        for _, token in fixture_transcript.iter_tokens():
            if token.stts is None:
                continue
            assert validate_morph(token.stts, token.morph) == [], token
