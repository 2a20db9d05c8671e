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
"""Regenerates data/demo: synthetic corpora, a toy embedding table and small
downstream samples. Output is a pure function of --seed."""

import argparse
import json
import pathlib
import random

CATEGORIES = {
    "container": {
        "nouns": ["cup", "mug", "bottle", "jar", "bowl", "kettle", "pot", "bucket", "flask", "pitcher"],
        "cues": [
            "spilled hot coffee on the rug", "was full of cold milk", "leaked water onto the floor",
            "held the last of the tea", "overflowed with fresh juice", "was filled with soup",
            "needed a good rinse after the coffee", "kept the water warm",
        ],
    },
    "furniture": {
        "nouns": ["chair", "table", "sofa", "desk", "bench", "stool", "shelf", "cabinet", "dresser", "couch"],
        "cues": [
            "had a wobbly wooden leg", "was made of polished oak", "creaked under the weight of the cushions",
            "needed new varnish on its legs", "was covered with an oak veneer", "had a loose drawer",
            "lost a leg during the move", "was upholstered in green velvet",
        ],
    },
    "animal": {
        "nouns": ["dog", "cat", "horse", "goat", "rabbit", "parrot", "sheep", "donkey", "puppy", "kitten"],
        "cues": [
            "barked at the mailman", "purred loudly on the windowsill", "chewed on a bone",
            "wagged its tail happily", "galloped across the meadow", "needed to be fed twice a day",
            "was hungry for more hay", "licked its paws clean",
        ],
    },
    "vehicle": {
        "nouns": ["car", "truck", "bus", "bicycle", "van", "tractor", "motorcycle", "taxi", "wagon", "scooter"],
        "cues": [
            "ran out of fuel on the highway", "needed new tires and brakes", "stalled at the intersection",
            "had a flat tire", "was parked in the garage", "burned too much gasoline",
            "needed an engine repair", "skidded on the wet road",
        ],
    },
    "food": {
        "nouns": ["apple", "cake", "bread", "pie", "sandwich", "cookie", "pizza", "soup", "salad", "muffin"],
        "cues": [
            "tasted sweet and delicious", "was baked fresh that morning", "smelled of cinnamon and sugar",
            "was eaten before dinner", "had too much salt in it", "was still warm from the oven",
            "was sliced for the guests", "tasted of butter and honey",
        ],
    },
    "tool": {
        "nouns": ["hammer", "wrench", "saw", "drill", "shovel", "screwdriver", "axe", "chisel", "rake", "ladder"],
        "cues": [
            "pounded the nails into the board", "needed a sharper blade", "loosened the rusty bolt",
            "cut through the lumber", "was left in the toolbox", "had a cracked handle",
            "dug a hole in the garden", "was covered in sawdust",
        ],
    },
    "clothing": {
        "nouns": ["coat", "shirt", "hat", "scarf", "jacket", "sweater", "dress", "glove", "boot", "sock"],
        "cues": [
            "kept her warm in the winter", "was made of soft wool", "needed to be washed and ironed",
            "had a torn sleeve", "was knitted from cotton yarn", "fit perfectly after the tailoring",
            "was too tight around the collar", "was stained with mud after the walk",
        ],
    },
    "instrument": {
        "nouns": ["piano", "guitar", "violin", "drum", "flute", "trumpet", "cello", "harp", "banjo", "clarinet"],
        "cues": [
            "played a sad melody", "needed to be tuned before the concert", "sounded beautiful in the hall",
            "had a broken string", "filled the room with music", "was out of tune",
            "played the song too loudly", "accompanied the choir at the recital",
        ],
    },
}

NAMES = ["Anna", "Peter", "Maria", "James", "Laura", "Thomas", "Emily", "Daniel", "Sophie", "Henry",
         "Clara", "Oliver", "Grace", "Samuel", "Alice", "Edward"]
PRONOUNS = ["he", "she", "they"]
ADJS = ["old", "new", "small", "large", "red", "blue", "heavy", "bright"]

# {a}/{b} are candidate phrases, {g} is the repeated (gold) phrase.
TEMPLATES = [
    "{name} put {a} on {b}, but {pron} forgot that {g} {cue}.",
    "{a} and {b} were in the room, and {g} {cue}.",
    "When {name} came home, {a} was next to {b}, and {g} {cue}.",
    "{name} bought {a} and {b} at the market, although {g} {cue}.",
    "{name} looked at {a} and then at {b}, because {g} {cue}.",
    "Nobody noticed {a} beside {b} until {g} {cue}.",
    "{name} carried {a} past {b}, and later {g} {cue}.",
    "After the storm, {a} and {b} were still there, but {g} {cue}.",
]

WORDS_OUTSIDE_TABLE = {"the", "a", "an", "and", "of", "on", "in", "to", "was", "were", "its", "her",
                       "his", "for", "with", "at", "that", "too", "after", "before", "into", "onto"}


def phrase(rng, noun):
    if rng.random() < 0.25:
        return "the " + rng.choice(ADJS) + " " + noun
    return "the " + noun


def cap_first(text):
    return text[0].upper() + text[1:]


def make_sentence(rng):
    cats = list(CATEGORIES)
    cat_a = rng.choice(cats)
    cat_b = rng.choice(cats)
    noun_a = rng.choice(CATEGORIES[cat_a]["nouns"])
    noun_b = rng.choice([n for n in CATEGORIES[cat_b]["nouns"] if n != noun_a])
    a = phrase(rng, noun_a)
    b = phrase(rng, noun_b)
    gold_is_a = rng.random() < 0.5
    g = a if gold_is_a else b
    cue = rng.choice(CATEGORIES[cat_a if gold_is_a else cat_b]["cues"])
    text = rng.choice(TEMPLATES).format(
        name=rng.choice(NAMES), pron=rng.choice(PRONOUNS), a=a, b=b, g=g, cue=cue)
    return cap_first(text)


def filler(rng):
    fillers = [
        "It was a quiet afternoon.",
        "Nobody said anything.",
        "The weather had been strange all week, with rain in the morning and sun by noon.",
        "Everyone agreed that it had been a long day for the whole family.",
        "Later that evening the neighbors came over for a short visit.",
    ]
    return rng.choice(fillers)


def paragraph(rng, n):
    parts = []
    for _ in range(n):
        parts.append(make_sentence(rng) if rng.random() < 0.85 else filler(rng))
    return " ".join(parts)


def wrap(text, width=72):
    lines, line = [], ""
    for word in text.split(" "):
        if line and len(line) + 1 + len(word) > width:
            lines.append(line)
            line = word
        else:
            line = word if not line else line + " " + word
    if line:
        lines.append(line)
    return lines


def write(path, text, crlf=False):
    path.parent.mkdir(parents=True, exist_ok=True)
    data = text.replace("\n", "\r\n") if crlf else text
    path.write_bytes(data.encode("utf-8"))


def cnn_story(rng, paragraphs):
    body = "\n\n".join(paragraph(rng, rng.randint(2, 4)) for _ in range(paragraphs))
    body = "(CNN) -- " + body
    highlights = "".join("\n\n@highlight\n\n" + make_sentence(rng).rstrip(".") for _ in range(3))
    return body + highlights + "\n"


def quoref_article(rng, paragraphs):
    title = "Article " + str(rng.randint(100, 999))
    paras = [paragraph(rng, rng.randint(3, 6)) for _ in range(paragraphs)]
    # A stray control character and typographic quotes, as scraped text tends to have.
    paras[0] = paras[0].replace(" and ", " “and” ", 1) + "\x07"
    return title + "\n\n" + "\n\n".join(paras) + "\n"


def gutenberg_chapter(rng, number, paragraphs):
    out = ["CHAPTER " + str(number), ""]
    for _ in range(paragraphs):
        out.extend(wrap(paragraph(rng, rng.randint(3, 6))))
        out.append("")
    return "\n".join(out)


def make_corpora(root, rng, scale):
    for i in range(scale["cnn"]):
        write(root / "cnn" / "stories" / f"story_{i:04d}.txt", cnn_story(rng, 8))
    for i in range(scale["quoref"]):
        write(root / "quoref" / f"article_{i:04d}.txt", quoref_article(rng, 6))
    for book in range(scale["gutenberg_books"]):
        for ch in range(1, scale["chapters"] + 1):
            write(root / "gutenberg" / f"book_{book:02d}" / f"chapter_{ch:02d}.txt",
                  gutenberg_chapter(rng, ch, 8), crlf=True)


def make_embeddings(path, rng, dim=50):
    centroids = {c: [rng.gauss(0, 1) for _ in range(dim)] for c in CATEGORIES}
    words = {}
    for cat, spec in CATEGORIES.items():
        vocab = set(spec["nouns"])
        for cue in spec["cues"]:
            vocab.update(w for w in cue.split() if w not in WORDS_OUTSIDE_TABLE)
        for w in sorted(vocab):
            words.setdefault(w, [c + 0.6 * rng.gauss(0, 1) for c in centroids[cat]])
    for w in sorted(set(ADJS) | {"room", "market", "home", "storm", "afternoon", "evening", "day"}):
        words.setdefault(w, [0.8 * rng.gauss(0, 1) for _ in range(dim)])
    lines = []
    for w in sorted(words):
        lines.append(w + " " + " ".join(f"{x:.5f}" for x in words[w]))
    write(path, "\n".join(lines) + "\n")


def pronoun_record(rid, sentence, pronoun, occurrence, candidates, answer):
    start = -1
    for _ in range(occurrence):
        start = sentence.index(" " + pronoun + " ", start + 1)
    start += 1
    return {"id": rid, "sentence": sentence, "pronoun_char_start": start,
            "pronoun_char_end": start + len(pronoun), "candidates": candidates, "answer": answer}


def make_downstream(root):
    wsc = [
        pronoun_record("wsc-trophy-small",
                       "The trophy doesn't fit in the suitcase because it is too small.",
                       "it", 1, ["the trophy", "the suitcase"], 1),
        pronoun_record("wsc-trophy-big",
                       "The trophy doesn't fit in the suitcase because it is too big.",
                       "it", 1, ["the trophy", "the suitcase"], 0),
    ]
    write(root / "wsc_trophy.jsonl", "".join(json.dumps(r) + "\n" for r in wsc))

    placeholder = [
        {"qID": "wg-1", "sentence": "The trophy doesn't fit in the suitcase because _ is too small.",
         "option1": "the trophy", "option2": "the suitcase", "answer": "2"},
        {"qID": "wg-2", "sentence": "The trophy doesn't fit in the suitcase because _ is too big.",
         "option1": "the trophy", "option2": "the suitcase", "answer": "1"},
        {"qID": "wg-3", "sentence": "Anna poured coffee into the cup from the kettle until _ was full.",
         "option1": "the cup", "option2": "the kettle", "answer": "1"},
        {"qID": "wg-4", "sentence": "Anna poured coffee into the cup from the kettle until _ was empty.",
         "option1": "the cup", "option2": "the kettle", "answer": "2"},
    ]
    write(root / "placeholder_sample.jsonl", "".join(json.dumps(r) + "\n" for r in placeholder))
    unlabeled = [{k: v for k, v in r.items() if k != "answer"} for r in placeholder]
    write(root / "placeholder_unlabeled.jsonl", "".join(json.dumps(r) + "\n" for r in unlabeled))

    copa = [
        {"id": "copa-1", "premise": "The man broke his toe.", "choice1": "He dropped a hammer on his foot.",
         "choice2": "He got a hole in his sock.", "question": "cause", "answer": 0},
        {"id": "copa-2", "premise": "The woman tolerated her friend's difficult behavior.",
         "choice1": "The woman knew her friend was going through a hard time.",
         "choice2": "The woman felt that her friend took advantage of her kindness.",
         "question": "cause", "answer": 0},
        {"id": "copa-3", "premise": "The tenant misplaced his keys to his apartment.",
         "choice1": "His landlord unlocked the door.", "choice2": "His landlord repaired the door.",
         "question": "effect", "answer": 0},
    ]
    write(root / "copa_sample.jsonl", "".join(json.dumps(r) + "\n" for r in copa))


def write_ini(path, body):
    write(path, body.strip() + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parents[2] / "data" / "demo"))
    parser.add_argument("--seed", type=int, default=20210813)
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    rng = random.Random(args.seed)

    make_corpora(out / "corpora", rng, {"cnn": 120, "quoref": 120, "gutenberg_books": 8, "chapters": 15})
    make_corpora(out / "mini", rng, {"cnn": 1, "quoref": 1, "gutenberg_books": 1, "chapters": 1})
    make_embeddings(out / "toy_embeddings_50d.txt", rng)
    make_downstream(out / "downstream")

    write_ini(out / "hybrid.ini", """
[run]
name = demo-hybrid
seed = 13
out = ../../out/demo-hybrid

[corpus.cnn]
path = corpora/cnn

[corpus.gutenberg]
path = corpora/gutenberg

[corpus.quoref]
path = corpora/quoref

[difficulty]
embeddings = toy_embeddings_50d.txt

[assembly]
target_size = all
dev_fraction = 0.05

[training]
embeddings = toy_embeddings_50d.txt
""")
    write_ini(out / "mini.ini", """
[run]
name = demo-mini
seed = 13
out = ../../out/demo-mini

[corpus.cnn]
path = mini/cnn

[corpus.gutenberg]
path = mini/gutenberg

[corpus.quoref]
path = mini/quoref

[assembly]
dev_fraction = 0.2
""")


if __name__ == "__main__":
    main()
