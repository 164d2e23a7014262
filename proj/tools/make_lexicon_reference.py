#!/usr/bin/env python3
# Copyright 2026 The VoiceLens Authors
# SPDX-License-Identifier: Apache-2.0
"""Write tests/data/lexicon_sentences.tsv with reference compound scores.

Each sentence belongs to a triple (base, negated, boosted) sharing a group id.
The parity column marks sentences expected to score the same under the
simplified rule set and the reference VADER implementation: no capitals, no
'!' or '?', no 'but', 'least' or 'no', at most one negator, and no
negator-booster combination.
"""

import csv
import pathlib
import sys

from vaderSentiment.vaderSentiment import SentimentIntensityAnalyzer

# (group, variant, parity, text)
SENTENCES = [
    ("g01", "base", 1, "the program was good for our students"),
    ("g01", "negated", 1, "the program was not good for our students"),
    ("g01", "boosted", 1, "the program was very good for our students"),
    ("g02", "base", 1, "the district training was helpful this year"),
    ("g02", "negated", 1, "the district training was not helpful this year"),
    ("g02", "boosted", 1, "the district training was extremely helpful this year"),
    ("g03", "base", 1, "funding for the schools is inadequate"),
    ("g03", "negated", 1, "funding for the schools is not inadequate"),
    ("g03", "boosted", 1, "funding for the schools is totally inadequate"),
    ("g04", "base", 1, "teachers were happy with the new schedule"),
    ("g04", "negated", 1, "teachers were never happy with the new schedule"),
    ("g04", "boosted", 1, "teachers were really happy with the new schedule"),
    ("g05", "base", 1, "the board made a bad decision"),
    ("g05", "negated", 1, "the board did not make a bad decision"),
    ("g05", "boosted", 1, "the board made a very bad decision"),
    ("g06", "base", 1, "parents feel hopeful about the reform"),
    ("g06", "negated", 1, "parents don't feel hopeful about the reform"),
    ("g06", "boosted", 1, "parents feel incredibly hopeful about the reform"),
    ("g07", "base", 1, "the rollout was a failure"),
    ("g07", "negated", 1, "the rollout wasn't a failure"),
    ("g07", "boosted", 1, "the rollout was a total failure"),
    ("g08", "base", 1, "our coalition has strong partners"),
    ("g08", "negated", 1, "our coalition has not found strong partners"),
    ("g08", "boosted", 1, "our coalition has remarkably strong partners"),
    ("g09", "base", 1, "the data system is useful and effective"),
    ("g09", "negated", 1, "the data system is not useful and effective"),
    ("g09", "boosted", 1, "the data system is quite useful and effective"),
    ("g10", "base", 1, "students struggle with the tests"),
    ("g10", "negated", 0, "students do not really struggle with the tests"),
    ("g10", "boosted", 1, "students greatly struggle with the tests"),
]


def main() -> int:
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "tests/data/lexicon_sentences.tsv")
    sia = SentimentIntensityAnalyzer()
    with out.open("w", newline="") as f:
        w = csv.writer(f, delimiter="\t", lineterminator="\n")
        w.writerow(["group", "variant", "parity", "reference_compound", "text"])
        for group, variant, parity, text in SENTENCES:
            ref = sia.polarity_scores(text)["compound"]
            w.writerow([group, variant, parity, f"{ref:.4f}", text])
    return 0


if __name__ == "__main__":
    sys.exit(main())
