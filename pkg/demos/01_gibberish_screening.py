"""Stage-1 gibberish screening walkthrough.

Runs canonical English and Korean responses through the bundled bigram
models and default filter configuration, printing the verdict, the average
log-likelihood, and which rules fired for each.
"""

from respeval import gibberish, markov
from respeval.records import SurveyItem

SAMPLES = {
    "english": [
        "i like the ambience and security",
        "the service was quick and friendly",
        "asdf",
        "ddddd",
        "lol",
        "soooo",
        "qqqq zzzz",
    ],
    "korean": [
        "호텔 분위기가 조용하고 보안이 잘 되어 있어서 좋았어요.",
        "ㅋㅋㅋ",
        "ㅇㅇ",
        "ㅁㄴㅇㄹㅁㄴㅇㄹ",
        "가가가가가",
    ],
}


def main():
    for language, texts in SAMPLES.items():
        model = markov.load_bundled(language)
        config = gibberish.GibberishConfig.for_language(language)
        print(f"\n== {language} (ll threshold {config.ll_threshold}) ==")
        for text in texts:
            item = SurveyItem(id="demo", question="", response=text, language=language)
            verdict = gibberish.detect(item, model, config)
            label = "GIBBERISH" if verdict.is_gibberish else "clean"
            ll = "n/a" if verdict.avg_ll is None else f"{verdict.avg_ll:.3f}"
            notes = []
            if verdict.whitelisted:
                notes.append("whitelisted")
            notes.extend(verdict.triggered_rules)
            print(f"  {label:9s} ll={ll:>7s}  {text!r}  [{', '.join(notes) or 'no rules'}]")


if __name__ == "__main__":
    main()
