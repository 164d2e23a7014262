#!/usr/bin/env python3
# Copyright 2026 The VoiceLens Authors
# SPDX-License-Identifier: Apache-2.0
"""Transcribe the two boxed prompt templates from a LaTeX-flavoured markdown
source into plain-text golden files for the prompt fidelity tests.

Usage: transcribe_prompts.py SOURCE.md OUT_DIR

Conversion: itemize environments become '- ' bullet lines, LaTeX escapes
(\\_ \\{ \\}) are unescaped, leading indentation is dropped, and the text
between the f-string triple quotes is kept. Slot markers stay in place.
"""

import pathlib
import re
import sys


def boxed_templates(source: str) -> list[str]:
    return re.findall(r'prompt\\_base = f"""\n(.*?)"""', source, flags=re.S)


def convert(block: str) -> str:
    out = []
    for line in block.split("\n"):
        s = line.strip()
        if s in (r"\begin{itemize}", r"\end{itemize}"):
            continue
        if s.startswith(r"\item "):
            s = "- " + s[len(r"\item "):]
        s = s.replace(r"\_", "_").replace(r"\{", "{").replace(r"\}", "}")
        out.append(s)
    # A closing itemize followed by a blank line leaves exactly one blank line.
    text = "\n".join(out)
    return re.sub(r"\n{3,}", "\n\n", text)


def main() -> int:
    source = pathlib.Path(sys.argv[1]).read_text(encoding="utf-8")
    out_dir = pathlib.Path(sys.argv[2])
    cot, sentiment = boxed_templates(source)
    (out_dir / "cot_thematic.txt").write_text(convert(cot), encoding="utf-8")
    # The sentiment template closes its quotes on the last sentence, and the
    # line after the opening quote keeps its trailing space.
    (out_dir / "sentiment.txt").write_text(sentiment, encoding="utf-8")
    return 0


if __name__ == "__main__":
    sys.exit(main())
