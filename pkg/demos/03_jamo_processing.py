"""Hangul jamo decomposition, recomposition and the Korean text statistics."""

from respeval import textstat


def main():
    for text in ("한", "한국어", "값", "ㅋㅋㅋ"):
        jamo = textstat.decompose_jamo(text).jamo_chars()
        rebuilt = textstat.compose_jamo(jamo)
        print(f"{text!r} -> {jamo} -> {rebuilt!r} (round trip: {rebuilt == text})")

    for text in ("호텔 분위기가 좋았어요", "ㅁㄴㅇㄹ", "가가가가"):
        print(
            f"{text!r}: syllable ratio {textstat.hangul_syllable_ratio(text):.2f}, "
            f"jamo diversity {textstat.jamo_diversity(text)}"
        )

    # English-side statistics used by the stage-1 filters
    normalized = textstat.normalize_english("Sooo GOOD!!! 10/10")
    print("normalized:", normalized.normalized)
    print("longest class run of 'aaaaaa':",
          textstat.longest_class_run(textstat.normalize_english("aaaaaa")))


if __name__ == "__main__":
    main()
