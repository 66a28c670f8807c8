"""Shared fixtures: tiny annotation tables and synthetic gold corpora."""

from __future__ import annotations

from datetime import datetime, timedelta

import numpy as np
import pytest

from sentagree.corpus import GoldPost, SentimentLabel

FILLER = "the a on at today tomorrow city train coffee street people day time".split()
NEG_WORDS = "awful terrible horrid nasty angry worst hate broken sad gross".split()
NEU_WORDS = "update report schedule notice meeting agenda minutes record entry item".split()
POS_WORDS = "great lovely wonderful superb happy best love enjoy bright fine".split()


def write_table(path, rows, header=("TweetID", "HandLabel", "AnnotatorID", "Date", "Text"),
                delimiter=","):
    lines = [delimiter.join(header)]
    lines += [delimiter.join(str(cell) for cell in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def separable_corpus(n, seed=0, words_per_doc=4, fillers=3):
    """Time-ordered gold corpus with disjoint per-class lexicons."""
    rng = np.random.default_rng(seed)
    lexicon = {-1: NEG_WORDS, 0: NEU_WORDS, 1: POS_WORDS}
    start = datetime(2014, 1, 1)
    posts = []
    for i in range(n):
        code = int(rng.integers(-1, 2))
        words = list(rng.choice(lexicon[code], size=words_per_doc))
        words += list(rng.choice(FILLER, size=fillers))
        rng.shuffle(words)
        posts.append(
            GoldPost(
                post_id=f"t{i}",
                label=SentimentLabel(code),
                timestamp=start + timedelta(minutes=i),
                text=" ".join(words),
            )
        )
    return posts


def shift_corpus(n, shift_at, seed=0, wide=600):
    """Separable corpus whose lexicon is replaced mid-stream.

    The replacement lexicon is wide enough that right after the shift
    each new word stays under the default min_df of 5 and gets pruned;
    with more post-shift data the words clear the threshold again.
    """
    rng = np.random.default_rng(seed)
    old = {-1: NEG_WORDS, 0: NEU_WORDS, 1: POS_WORDS}
    new = {c: [f"w{c + 1}_{j}" for j in range(wide)] for c in (-1, 0, 1)}
    start = datetime(2014, 1, 1)
    posts = []
    for i in range(n):
        code = int(rng.integers(-1, 2))
        if i >= shift_at:
            words = list(rng.choice(new[code], size=6))
        else:
            words = list(rng.choice(old[code], size=4))
        words += list(rng.choice(FILLER, size=3))
        rng.shuffle(words)
        posts.append(
            GoldPost(
                post_id=f"t{i}",
                label=SentimentLabel(code),
                timestamp=start + timedelta(minutes=i),
                text=" ".join(words),
            )
        )
    return posts


@pytest.fixture
def annotations_csv(tmp_path):
    """A small annotation file: 3 posts, mixed self/inter annotations."""
    rows = [
        ("p1", "Negative", "ann1", "2014-01-01 10:00:00", "so bad :("),
        ("p1", "negative", "ann1", "2014-01-01 10:05:00", "so bad :("),
        ("p1", "Neutral", "ann2", "2014-01-01 10:10:00", "so bad :("),
        ("p2", "Positive", "ann1", "2014-01-02 09:00:00", "love it :)"),
        ("p2", "POSITIVE", "ann2", "2014-01-02 09:30:00", "love it :)"),
        ("p3", "Neutral", "ann2", "2014-01-03 08:00:00", "meeting at noon"),
    ]
    return write_table(tmp_path / "mini.csv", rows)
