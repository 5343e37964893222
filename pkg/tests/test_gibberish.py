"""Unit and property tests for stage-1 gibberish screening."""

import pytest

from respeval import gibberish, markov, textstat
from respeval.records import SurveyItem


def en_item(response: str) -> SurveyItem:
    return SurveyItem(id="x", question="", response=response, language=textstat.ENGLISH)


def ko_item(response: str) -> SurveyItem:
    return SurveyItem(id="x", question="", response=response, language=textstat.KOREAN)


@pytest.fixture(scope="module")
def en_model():
    return markov.load_bundled(textstat.ENGLISH)


@pytest.fixture(scope="module")
def ko_model():
    return markov.load_bundled(textstat.KOREAN)


@pytest.fixture(scope="module")
def en_config():
    return gibberish.GibberishConfig.for_language(textstat.ENGLISH)


@pytest.fixture(scope="module")
def ko_config():
    return gibberish.GibberishConfig.for_language(textstat.KOREAN)


class TestWhitelist:
    def test_exact_match_case_insensitive(self):
        wl = frozenset({"lol"})
        assert gibberish.is_whitelisted("LOL", wl)
        assert gibberish.is_whitelisted(" lol ", wl)

    def test_whole_token_repetition(self):
        assert gibberish.is_whitelisted("hahaha", frozenset({"ha"}))
        assert gibberish.is_whitelisted("ㅋㅋㅋㅋㅋ", frozenset({"ㅋ"}))

    def test_last_letter_elongation(self):
        assert gibberish.is_whitelisted("soooo", frozenset({"so"}))
        assert gibberish.is_whitelisted("okkk", frozenset({"ok"}))

    def test_non_matches(self):
        wl = frozenset({"ha", "so"})
        assert not gibberish.is_whitelisted("hat", wl)
        assert not gibberish.is_whitelisted("soha", wl)
        assert not gibberish.is_whitelisted("", wl)

    def test_whitelist_dominance(self, en_model):
        # whatever the thresholds, a whitelisted string is never gibberish
        config = gibberish.GibberishConfig(
            ll_threshold=-0.0001,
            run_threshold=1,
            valid_word_threshold=1.0,
            whitelist=frozenset({"lol"}),
        )
        verdict = gibberish.detect(en_item("lollollol"), en_model, config)
        assert not verdict.is_gibberish
        assert verdict.whitelisted
        assert verdict.triggered_rules == ()
        assert verdict.avg_ll is None

    def test_load_bundled_whitelists(self):
        assert "lol" in gibberish.load_whitelist(textstat.ENGLISH)
        assert "ㅋㅋ" in gibberish.load_whitelist(textstat.KOREAN)


class TestConfig:
    def test_threshold_validation(self):
        with pytest.raises(ValueError):
            gibberish.GibberishConfig(ll_threshold=0.5)
        with pytest.raises(ValueError):
            gibberish.GibberishConfig(valid_word_threshold=1.5)

    def test_language_defaults(self, en_config, ko_config):
        assert en_config.ll_threshold == -4.0
        assert ko_config.ll_threshold == -3.5
        assert en_config.run_threshold == 10
        assert en_config.valid_word_threshold == 0.4
        assert ko_config.syllable_ratio_threshold == 0.6
        assert ko_config.jamo_diversity_threshold == 4


class TestEnglishDetection:
    def test_keyboard_mash_is_gibberish(self, en_model, en_config):
        verdict = gibberish.detect(en_item("asdf"), en_model, en_config)
        assert verdict.is_gibberish
        assert gibberish.RULE_LOG_LIKELIHOOD in verdict.triggered_rules

    def test_repeated_characters_are_gibberish(self, en_model, en_config):
        assert gibberish.detect(en_item("ddddd"), en_model, en_config).is_gibberish

    def test_long_class_run_triggers(self, en_model, en_config):
        verdict = gibberish.detect(en_item("the aaaaaaaaaaaa option"), en_model, en_config)
        assert gibberish.RULE_CLASS_RUN in verdict.triggered_rules

    def test_whitelisted_slang_is_clean(self, en_model, en_config):
        for text in ("lol", "brb", "haha", "soooo"):
            assert not gibberish.detect(en_item(text), en_model, en_config).is_gibberish

    def test_normal_sentence_is_clean(self, en_model, en_config):
        verdict = gibberish.detect(
            en_item("i like the ambience and security"), en_model, en_config
        )
        assert not verdict.is_gibberish
        assert verdict.triggered_rules == ()

    def test_empty_response_is_gibberish(self, en_model, en_config):
        verdict = gibberish.detect(en_item(""), en_model, en_config)
        assert verdict.is_gibberish
        assert verdict.avg_ll is None
        assert gibberish.RULE_LOG_LIKELIHOOD in verdict.triggered_rules

    def test_escape_hatch_retains_plausible_unknown_words(self, en_model):
        # empty lexicon forces a valid-word failure on any text; a fluent
        # sentence is still retained because its likelihood clears the bar
        config = gibberish.GibberishConfig(
            ll_threshold=-4.0, lexicon=frozenset(), whitelist=frozenset()
        )
        verdict = gibberish.detect(
            en_item("the service was quick and friendly"), en_model, config
        )
        assert not verdict.is_gibberish
        assert verdict.triggered_rules == ()

    def test_no_escape_when_likelihood_also_fails(self, en_model):
        config = gibberish.GibberishConfig(
            ll_threshold=-0.5, lexicon=frozenset(), whitelist=frozenset()
        )
        verdict = gibberish.detect(
            en_item("the service was quick and friendly"), en_model, config
        )
        assert verdict.is_gibberish
        assert gibberish.RULE_LOG_LIKELIHOOD in verdict.triggered_rules
        assert gibberish.RULE_VALID_WORD_RATIO in verdict.triggered_rules


class TestKoreanDetection:
    def test_whitelisted_interjections_clean(self, ko_model, ko_config):
        for text in ("ㅋㅋㅋ", "ㅇㅇ", "헐", "ㅋㅋㅋㅋㅋㅋ"):
            assert not gibberish.detect(ko_item(text), ko_model, ko_config).is_gibberish

    def test_normal_sentence_clean(self, ko_model, ko_config):
        verdict = gibberish.detect(
            ko_item("호텔 분위기가 조용하고 보안이 잘 되어 있어서 좋았어요."),
            ko_model,
            ko_config,
        )
        assert not verdict.is_gibberish

    def test_isolated_jamo_triggers_syllable_ratio(self, ko_model, ko_config):
        verdict = gibberish.detect(ko_item("ㅁㄴㅇㄹㅁㄴㅇㄹ"), ko_model, ko_config)
        assert verdict.is_gibberish
        assert gibberish.RULE_SYLLABLE_RATIO in verdict.triggered_rules

    def test_repeated_syllable_triggers_diversity(self, ko_model, ko_config):
        verdict = gibberish.detect(ko_item("가가가가가"), ko_model, ko_config)
        assert verdict.is_gibberish
        assert gibberish.RULE_JAMO_DIVERSITY in verdict.triggered_rules

    def test_morpheme_oracle_plugged_in(self, ko_model):
        base = dict(
            ll_threshold=-3.5,
            whitelist=frozenset(),
        )
        text = "호텔 분위기가 조용하고 보안이 잘 되어 있어서 좋았어요."
        saying_no = gibberish.GibberishConfig(morpheme_oracle=lambda t: False, **base)
        saying_yes = gibberish.GibberishConfig(morpheme_oracle=lambda t: True, **base)
        verdict_no = gibberish.detect(ko_item(text), ko_model, saying_no)
        assert verdict_no.is_gibberish
        assert gibberish.RULE_NO_MORPHEMES in verdict_no.triggered_rules
        assert not gibberish.detect(ko_item(text), ko_model, saying_yes).is_gibberish


class TestContracts:
    def test_language_model_mismatch(self, en_model, ko_model, en_config, ko_config):
        with pytest.raises(gibberish.LanguageModelMismatch):
            gibberish.detect(en_item("hello"), ko_model, en_config)
        with pytest.raises(gibberish.LanguageModelMismatch):
            gibberish.detect(ko_item("네 좋아요"), en_model, ko_config)

    def test_determinism(self, en_model, en_config):
        first = gibberish.detect(en_item("asdf qwerty"), en_model, en_config)
        for _ in range(5):
            assert gibberish.detect(en_item("asdf qwerty"), en_model, en_config) == first

    def test_gibberish_implies_triggered_rules(self, en_model, en_config):
        for text in ("", "asdf", "zxzxzxzx", "a fine day"):
            verdict = gibberish.detect(en_item(text), en_model, en_config)
            assert verdict.is_gibberish == bool(verdict.triggered_rules)

    def test_threshold_monotonicity(self, en_model):
        # raising ll_threshold toward zero can only widen the gibberish set
        texts = ["asdf", "i like the ambience and security", "zx vb nm", "hello there"]
        thresholds = [-6.0, -4.0, -3.0, -2.0, -1.0]
        lexicon = gibberish.GibberishConfig.for_language(textstat.ENGLISH).lexicon
        for text in texts:
            previous = False
            for threshold in thresholds:
                config = gibberish.GibberishConfig(
                    ll_threshold=threshold, lexicon=lexicon, whitelist=frozenset()
                )
                flagged = gibberish.detect(en_item(text), en_model, config).is_gibberish
                assert flagged or not previous
                previous = flagged

    def test_verdict_to_dict(self, en_model, en_config):
        doc = gibberish.detect(en_item("asdf"), en_model, en_config).to_dict()
        assert set(doc) == {"is_gibberish", "avg_ll", "triggered_rules", "whitelisted"}
        assert isinstance(doc["triggered_rules"], list)
