"""Training and scoring bigram Markov models.

Shows the smoothing arithmetic on a toy corpus, then contrasts fluent and
mashed text under the bundled English model, and round-trips a model file.
"""

import math
import tempfile

from respeval import markov


def main():
    # Toy corpus: "abab" yields counts {(a,b): 2, (b,a): 1}. With add-one
    # smoothing over the 3-symbol vocabulary {a, b, <unk>}:
    # P(b|a) = (2 + 1) / (2 + 3) = 0.6
    toy = markov.train(["abab"], unit=markov.UNIT_CHAR)
    print("toy counts:", toy.transition_counts)
    print("avg ll of 'ab':", markov.avg_log_likelihood(toy, "ab"), "=", math.log(0.6))

    english = markov.load_bundled("english")
    for text in ("the staff were friendly", "asdf jkl", "zxqv wpk"):
        print(f"{text!r}: {markov.avg_log_likelihood(english, text):.3f}")

    korean = markov.load_bundled("korean")
    print("korean jamo model vocabulary size:", len(korean.vocabulary))
    print("'좋아요':", f"{markov.avg_log_likelihood(korean, '좋아요'):.3f}")

    with tempfile.NamedTemporaryFile(suffix=".json") as handle:
        markov.save(toy, handle.name)
        loaded = markov.load(handle.name)
        print("round-trip equal:", loaded.transition_counts == toy.transition_counts)


if __name__ == "__main__":
    main()
