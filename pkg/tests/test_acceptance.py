"""Acceptance suite: one test per release criterion, at the stated tolerances."""

import json
import math
import time
from importlib import resources

import numpy as np
import pytest

from respeval import aggregate, cli, gibberish, judge, markov, metrics, textstat
from respeval.cache import ScriptedChatClient
from respeval.records import SurveyItem

from conftest import judgment_script
from test_cli import batch_items, write_jsonl
from test_judge import FIXTURES, fixture_text
from test_metrics import (
    oracle_auc,
    oracle_kendall,
    oracle_qwk,
    oracle_spearman,
    random_vector,
)

GIBBERISH_FIXTURES = {
    "english": {
        "gibberish": ["asdf", "ddddd"],
        "clean": [
            "lol",
            "brb",
            "haha",
            "soooo",
            "i like the ambience and security",
        ],
    },
    "korean": {
        "gibberish": [],
        "clean": [
            "ㅋㅋㅋ",
            "ㅇㅇ",
            "헐",
            "A80이랑 W15를 비교해 보면 W15가 기존 양파 크림 맛이랑 똑같고 "
            "프링글스 같은 익숙한 브랜드 맛이 나요.",
        ],
    },
}


def data_text(name: str) -> str:
    return resources.files("respeval.data").joinpath(name).read_text(encoding="utf-8")


def test_gibberish_fixture_set_classifies_perfectly():
    started = time.perf_counter()
    for language, cases in GIBBERISH_FIXTURES.items():
        model = markov.load_bundled(language)
        config = gibberish.GibberishConfig.for_language(language)
        for text in cases["gibberish"]:
            item = SurveyItem(id="f", question="", response=text, language=language)
            assert gibberish.detect(item, model, config).is_gibberish, text
        for text in cases["clean"]:
            item = SurveyItem(id="f", question="", response=text, language=language)
            assert not gibberish.detect(item, model, config).is_gibberish, text
    assert time.perf_counter() - started < 1.0


def test_desk_scale_detection_f1_at_least_090_per_language():
    started = time.perf_counter()
    corpora = {
        "english": ["corpus_en.txt", "corpus_en_supplement.txt"],
        "korean": ["corpus_ko.txt"],
    }
    units = {"english": markov.UNIT_CHAR, "korean": markov.UNIT_JAMO}
    for language in ("english", "korean"):
        lines = []
        total_bytes = 0
        for name in corpora[language]:
            text = data_text(name)
            total_bytes += len(text.encode("utf-8"))
            lines.extend(text.splitlines())
        assert total_bytes <= 1_000_000
        model = markov.train(lines, unit=units[language])
        config = gibberish.GibberishConfig.for_language(language)
        tp = fp = fn = 0
        desk = data_text(f"desk/{language}.jsonl")
        for line in desk.splitlines():
            record = json.loads(line)
            item = SurveyItem(
                id=record["id"], question="", response=record["text"], language=language
            )
            predicted = gibberish.detect(item, model, config).is_gibberish
            if record["label"] == 1 and predicted:
                tp += 1
            elif record["label"] == 1:
                fn += 1
            elif predicted:
                fp += 1
        f1 = 2 * tp / (2 * tp + fp + fn)
        assert f1 >= 0.90, f"{language} F1 {f1:.4f}"
    assert time.perf_counter() - started < 10.0


def test_markov_abab_oracle_and_probability_normalization():
    model = markov.train(["abab"], unit=markov.UNIT_CHAR)
    value = markov.avg_log_likelihood(model, "ab")
    assert value == pytest.approx(math.log(0.6), abs=1e-12)

    rng = np.random.default_rng(515)
    alphabet = "abcdefgh"
    for _ in range(25):
        lines = [
            "".join(alphabet[i] for i in rng.integers(0, len(alphabet), size=30))
            for _ in range(4)
        ]
        alpha = float(rng.uniform(0.2, 3.0))
        random_model = markov.train(lines, unit=markov.UNIT_CHAR, smoothing_alpha=alpha)
        for context in random_model.vocabulary:
            total = sum(
                math.exp(random_model.log_prob(context, target))
                for target in random_model.vocabulary
            )
            assert total == pytest.approx(1.0, abs=1e-9)


def test_jamo_round_trip_over_ten_thousand_syllables():
    assert textstat.decompose_jamo("한").jamo_chars() == ["ㅎ", "ㅏ", "ㄴ"]
    rng = np.random.default_rng(808)
    codepoints = rng.integers(0xAC00, 0xD7A3 + 1, size=10_000)
    for cp in codepoints:
        syllable = chr(int(cp))
        jamo = textstat.decompose_jamo(syllable).jamo_chars()
        assert textstat.compose_jamo(jamo) == syllable


def test_statistics_match_brute_force_oracles_on_1000_vectors():
    rng = np.random.default_rng(20240904)
    for trial in range(1000):
        n = int(rng.integers(2, 9))
        with_ties = bool(trial % 2)
        x = random_vector(rng, n, with_ties)
        y = random_vector(rng, n, with_ties)

        got = metrics.spearman_rho(x, y)
        want = oracle_spearman(list(x), list(y))
        assert (got is None) == (want is None)
        if want is not None:
            assert got == pytest.approx(want, abs=1e-9)

        got = metrics.kendall_tau(x, y)
        want = oracle_kendall(list(x), list(y))
        assert (got is None) == (want is None)
        if want is not None:
            assert got == pytest.approx(want, abs=1e-9)

        if with_ties:
            a = [int(v) for v in x]
            b = [int(v) for v in y]
            assert metrics.quadratic_weighted_kappa(a, b, range(4)) == pytest.approx(
                oracle_qwk(a, b, range(4)), abs=1e-9
            )

        labels = rng.integers(0, 2, size=n)
        if 0 < labels.sum() < n:
            assert metrics.roc_auc(x, labels).auc == pytest.approx(
                oracle_auc(list(x), list(labels)), abs=1e-9
            )
            # monotone-transform invariance on the same trial
            transformed = np.exp(2.0 * x) - 1.0
            assert metrics.roc_auc(transformed, labels).auc == pytest.approx(
                metrics.roc_auc(x, labels).auc, abs=1e-9
            )
        base_rho = metrics.spearman_rho(x, y)
        base_tau = metrics.kendall_tau(x, y)
        if base_rho is not None:
            transformed = np.exp(2.0 * x) - 1.0
            assert metrics.spearman_rho(transformed, y) == pytest.approx(
                base_rho, abs=1e-9
            )
            assert metrics.kendall_tau(transformed, y) == pytest.approx(
                base_tau, abs=1e-9
            )


def test_ridge_oracle_recovery_and_shrinkage():
    rng = np.random.default_rng(31)
    X = rng.uniform(0, 1, size=(60, 3))
    true_w = np.array([0.5, 0.3, 0.2])
    y = X @ true_w + 0.02
    exact = aggregate.fit_ridge(X, y, lam=0.0)
    assert exact.as_array() == pytest.approx(true_w, abs=1e-8)
    assert exact.intercept == pytest.approx(0.02, abs=1e-8)

    shrunk = aggregate.fit_ridge(X, y, lam=1e9)
    assert np.all(np.abs(shrunk.as_array()) < 1e-6)


def test_bootstrap_confidence_interval_behavior():
    rng = np.random.default_rng(99)
    human = rng.uniform(size=100)

    same = metrics.bootstrap_ci_diff(human, human, human, resamples=200, seed=1)
    assert (same.lower, same.upper) == (0.0, 0.0)

    close = human + rng.normal(0, 0.05, size=100)
    permuted = rng.permutation(human)
    ci = metrics.bootstrap_ci_diff(human, close, permuted, resamples=2000, seed=7)
    assert ci.lower > 0.0 or ci.upper < 0.0

    again = metrics.bootstrap_ci_diff(human, close, permuted, resamples=2000, seed=7)
    assert (ci.lower, ci.upper) == (again.lower, again.upper)


def test_prompt_fidelity_and_parser_strictness(hotel_item):
    for dimension in (judge.EFFORT, judge.RELEVANCE, judge.COMPLETENESS):
        system, user = judge.build_prompt(dimension, hotel_item)
        assert system == fixture_text("system")
        assert user == fixture_text(dimension)

    fenced = 'Here you go:\n```json\n{"effort": 3, "reason": "fair detail"}\n```'
    assert judge.parse_judgment(fenced, judge.EFFORT).score == 3
    prose = 'I think {"relevance": 4, "reason": "fully on point"} covers it.'
    assert judge.parse_judgment(prose, judge.RELEVANCE).score == 4
    with pytest.raises(judge.ScoreOutOfRange):
        judge.parse_judgment('{"effort": 9, "reason": "x"}', judge.EFFORT)


def test_end_to_end_determinism_with_warm_cache(tmp_path, capsys):
    model = markov.load_bundled("english")
    model_path = tmp_path / "model.json"
    markov.save(model, str(model_path))
    input_path = tmp_path / "in.jsonl"
    write_jsonl(
        input_path,
        [
            {
                "id": "en-001",
                "question": "Which was the most important reason for staying at "
                "the hotel and why?",
                "response": "i like the ambience and security",
                "language": "english",
            },
            {"id": "en-002", "question": "q", "response": "ddddd", "language": "english"},
        ],
    )
    out_path = tmp_path / "out.jsonl"

    def run():
        client = ScriptedChatClient(
            judgment_script({"effort": 2, "relevance": 3, "completeness": 2})
        )
        args = cli.build_parser().parse_args(
            [
                "evaluate", str(input_path),
                "--model", str(model_path),
                "--cache-dir", str(tmp_path / "cache"),
                "--out", str(out_path),
            ]
        )
        code = cli.cmd_evaluate(args, client=client)
        stderr = capsys.readouterr().err
        return code, out_path.read_bytes(), stderr

    code1, bytes1, _ = run()
    code2, bytes2, stderr2 = run()
    assert code1 == code2 == cli.EXIT_OK
    assert bytes1 == bytes2
    assert " 0 network calls" in stderr2

    records = [json.loads(line) for line in bytes1.decode("utf-8").splitlines()]
    assert records[0]["overall"]["overall"] == pytest.approx(0.5119, abs=1e-4)
    assert records[1]["overall"]["gibberish_short_circuit"]


def test_pipeline_economy_three_calls_per_clean_item():
    model = markov.load_bundled("english")
    config = gibberish.GibberishConfig.for_language("english")
    clean = [
        "i like the ambience and security",
        "the service was quick and friendly",
        "the burger was hot and the fries were crisp",
        "we stayed for the quiet rooms and the helpful staff",
    ]
    noisy = ["asdf", "ddddddddddddd", "zxcv mnbv", "qqqq zzzz"]
    items = [
        SurveyItem(id=f"i{k}", question="q", response=text, language="english")
        for k, text in enumerate(clean + noisy)
    ]
    client = ScriptedChatClient(
        judgment_script({"effort": 4, "relevance": 3, "completeness": 3})
    )
    records = cli.evaluate_batch(
        items, model, config, judge.JudgeConfig(), client, cli.EvaluateOptions()
    )
    short_circuited = sum(
        1 for r in records if r.overall and r.overall["gibberish_short_circuit"]
    )
    assert short_circuited == len(noisy)
    assert client.calls == 3 * (len(items) - short_circuited)
