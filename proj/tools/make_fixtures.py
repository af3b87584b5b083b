#!/usr/bin/env python3
"""Regenerates the synthetic fixtures under data/fixtures.

Sentence b is sentence a with k of its content words swapped; the label
falls with k. Two score columns are the label plus independent Gaussian
noise, and the word vectors are random, so cosine of averaged vectors
tracks the share of kept words.
"""

import argparse
import math
import random
from pathlib import Path

NOUNS = """dog cat man woman child girl boy horse bird car train plane boat
player team city river market house kitchen guitar piano ball road field
doctor teacher police storm fire bank company minister court price""".split()
VERBS = """running playing riding eating cutting walking jumping driving
singing reading cooking talking swimming climbing opening closing""".split()
PAST = """ran played rode ate cut walked jumped drove sang read cooked talked
swam climbed opened closed""".split()
ADJS = """small big young old happy angry red black white green quiet loud
famous dangerous beautiful careful""".split()
PLACES = """park street beach stage table floor garden office forest hill""".split()

GENRES = [
    ("main-news", ["MSRpar", "headlines"]),
    ("main-captions", ["MSRvid", "images"]),
    ("main-forum", ["answers-forums"]),
]


def sentence(rng):
    shape = rng.randrange(3)
    if shape == 0:
        return ["a", rng.choice(ADJS), rng.choice(NOUNS), "is", rng.choice(VERBS),
                "in", "the", rng.choice(PLACES)]
    if shape == 1:
        return ["the", rng.choice(NOUNS), rng.choice(PAST), "with", "a",
                rng.choice(ADJS), rng.choice(NOUNS)]
    return ["two", rng.choice(NOUNS) + "s", "are", rng.choice(VERBS), "near",
            "the", rng.choice(ADJS), rng.choice(PLACES)]


def swap(words, k, rng):
    content = [i for i, w in enumerate(words) if w not in {"a", "the", "is", "are",
                                                            "in", "with", "near", "two"}]
    rng.shuffle(content)
    out = list(words)
    pools = NOUNS + VERBS + ADJS + PLACES + PAST
    for i in content[:k]:
        choice = rng.choice(pools)
        while choice == out[i]:
            choice = rng.choice(pools)
        out[i] = choice
    return out, len(content)


def render(words):
    s = " ".join(words)
    return s[0].upper() + s[1:] + "."


def make_split(rng, n, year):
    rows = []
    for i in range(n):
        genre, files = GENRES[rng.randrange(len(GENRES))]
        a = sentence(rng)
        n_content = sum(1 for w in a if w not in {"a", "the", "is", "are", "in", "with",
                                                  "near", "two"})
        k = rng.randint(0, n_content)
        b, _ = swap(a, k, rng)
        label = 5.0 * (1.0 - k / n_content) + rng.gauss(0.0, 0.4)
        label = min(5.0, max(0.0, round(label * 5) / 5))
        rows.append((genre, rng.choice(files), year, f"{i:04d}", f"{label:.3f}",
                     render(a), render(b)))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "fixtures"))
    ap.add_argument("--seed", type=int, default=20240611)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)

    sizes = {"train": 400, "dev": 150, "test": 150}
    splits = {}
    for name, n in sizes.items():
        splits[name] = make_split(rng, n, "2016")
        with open(out / f"sts-{name}.csv", "w", encoding="utf-8", newline="\n") as f:
            for row in splits[name]:
                f.write("\t".join(row) + "\n")

    noise = {"model_a": 0.7, "model_b": 0.9}
    for model, sd in noise.items():
        for name, rows in splits.items():
            with open(out / f"{model}-{name}.csv", "w", encoding="utf-8", newline="\n") as f:
                f.write("# range=0..5\nid,score\n")
                for i, row in enumerate(rows):
                    f.write(f"{i},{float(row[4]) + rng.gauss(0.0, sd):.6f}\n")

    vocab = sorted({w.lower().strip(".") for rows in splits.values() for row in rows
                    for s in row[5:7] for w in s.split()})
    dim = 24
    with open(out / "vectors.txt", "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{len(vocab)} {dim}\n")
        for w in vocab:
            v = [rng.gauss(0.0, 1.0) for _ in range(dim)]
            norm = math.sqrt(sum(x * x for x in v))
            f.write(w + " " + " ".join(f"{x / norm:.6f}" for x in v) + "\n")


if __name__ == "__main__":
    main()
