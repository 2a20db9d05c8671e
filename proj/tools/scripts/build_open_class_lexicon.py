#!/usr/bin/env python3
# Copyright 2026 The MNPP Forge Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds core/data/open_class.tsv from the Brill tagger lexicon.

The Brill lexicon (MIT license) lists the majority Penn Treebank tag of each
word in the Brown corpus and the WSJ treebank. A copy ships inside the
textblob wheel as textblob/en/en-lexicon.txt:

    pip download --no-deps textblob
    python3 -m zipfile -e textblob-*.whl /tmp/textblob
    build_open_class_lexicon.py /tmp/textblob/textblob/en/en-lexicon.txt \
        > core/data/open_class.tsv
"""

import re
import sys

PENN_TO_COARSE = {
    "NN": "NOUN", "NNS": "NOUN",
    "NNP": "PROPN", "NNPS": "PROPN",
    "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ",
    "VB": "VERB", "VBD": "VERB", "VBG": "VERB", "VBN": "VERB",
    "VBP": "VERB", "VBZ": "VERB", "MD": "VERB",
    "RB": "OTHER", "RBR": "OTHER", "RBS": "OTHER", "WRB": "OTHER",
    "CD": "NUM",
    "IN": "ADP", "TO": "ADP",
    "DT": "DET", "PDT": "DET", "WDT": "DET", "PRP$": "DET", "WP$": "DET",
    "PRP": "PRON", "WP": "PRON", "EX": "PRON",
    "CC": "OTHER", "UH": "OTHER", "RP": "OTHER", "FW": "OTHER",
    "POS": "OTHER", "LS": "OTHER", "SYM": "OTHER",
}

WORD = re.compile(r"^[A-Za-z][A-Za-z'-]*$")


def main(path):
    lower = {}
    proper = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.startswith(";;;"):
                continue
            parts = line.split()
            if len(parts) != 2:
                continue
            word, penn = parts
            penn = penn.split("|")[0]
            tag = PENN_TO_COARSE.get(penn)
            if tag is None or not WORD.match(word):
                continue
            if word.islower():
                lower[word] = tag
            elif word[0].isupper() and tag == "PROPN":
                proper.setdefault(word.lower(), tag)
    for key, tag in proper.items():
        lower.setdefault(key, tag)

    out = sys.stdout
    out.write("# Open-class lexicon: word<TAB>majority coarse tag.\n")
    out.write("# Derived from the Brill tagger lexicon (Brown corpus + Penn\n")
    out.write("# Treebank), Copyright 1993 MIT and the University of\n")
    out.write("# Pennsylvania, MIT license. Regenerate with\n")
    out.write("# tools/scripts/build_open_class_lexicon.py.\n")
    for word in sorted(lower):
        out.write(f"{word}\t{lower[word]}\n")


if __name__ == "__main__":
    main(sys.argv[1])
