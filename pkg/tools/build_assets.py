"""Regenerate the committed data assets: pretrained bigram models and the
seeded desk-scale detection corpora.

Run from the repository root after editing the bundled corpora:

    python tools/build_assets.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from respeval import markov, synthetic, textstat  # noqa: E402

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "respeval", "data")

SEEDS = {textstat.ENGLISH: 20240901, textstat.KOREAN: 20240902}


def main():
    for language, corpus_names, unit, model_name in (
        (
            textstat.ENGLISH,
            ["corpus_en.txt", "corpus_en_supplement.txt"],
            markov.UNIT_CHAR,
            "english_char.json",
        ),
        (textstat.KOREAN, ["corpus_ko.txt"], markov.UNIT_JAMO, "korean_jamo.json"),
    ):
        lines = []
        for corpus_name in corpus_names:
            with open(os.path.join(DATA, corpus_name), encoding="utf-8") as fh:
                lines.extend(line.rstrip("\n") for line in fh)
        model = markov.train(lines, unit=unit, metadata={"corpus": "+".join(corpus_names)})
        path = os.path.join(DATA, "models", model_name)
        markov.save(model, path)
        print(f"{model_name}: vocabulary {len(model.vocabulary)}, lines {len(lines)}")

        records = synthetic.build_desk_corpus(language, per_class=50, seed=SEEDS[language])
        desk_path = os.path.join(DATA, "desk", f"{language}.jsonl")
        with open(desk_path, "w", encoding="utf-8") as fh:
            for record in records:
                fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
        print(f"desk/{language}.jsonl: {len(records)} records (seed {SEEDS[language]})")


if __name__ == "__main__":
    main()
