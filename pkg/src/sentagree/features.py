"""Tweet normalization, n-gram vocabularies, and class-ratio term weights.

Normalization decision table (version 1, frozen)
------------------------------------------------
The tokenizer applies one left-to-right scan with the following match
priority; changing any rule below is a vocabulary-breaking change and
must bump the version reported by :data:`NORMALIZER_VERSION`.

1.  URLs (``http://``, ``https://``, ``www.``) become the single token
    ``<url>``.
2.  ``@mentions`` become ``<user>``.
3.  ``#hashtags`` become ``<hashtag>`` followed by the bare tag word,
    which is then treated like an ordinary word (lowercased, elongation
    collapsed).
4.  Emoticons from the fixed table below become ``<emo_pos>``,
    ``<emo_neg>``, or ``<emo_other>``.  Emoticons that start or end in
    a letter only match on non-word boundaries, so ``xD`` matches in
    ``haha xD`` but not inside ``exDescription``.
5.  Word tokens (``\\w`` runs, apostrophes allowed inside) are
    lowercased.  A run of three or more identical letters is collapsed
    to exactly two and the marker ``<elong>`` is appended right after
    the token: ``sooooo good`` -> ``soo <elong> good``.
6.  All remaining punctuation is dropped.

The weighting scheme scores a term ``t`` in document ``d`` as
``C_td * log2(((N_t + s) * (P + s)) / ((P_t + s) * (N + s)))`` where
``C_td`` is the raw term count, ``P_t``/``N_t`` are the number of
positive-/negative-side training documents containing ``t``, ``P``/``N``
are the side sizes, and ``s = 0.5`` smooths all four figures.  Swapping
the two sides negates every weight.
"""

from __future__ import annotations

import hashlib
import re
from collections import Counter
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .corpus import GoldPost
from .errors import CorpusFormatError, VocabularyError

__all__ = [
    "NORMALIZER_VERSION",
    "EMOTICONS",
    "normalize",
    "identity_stem",
    "english_suffix_stem",
    "SparseVector",
    "ClassSides",
    "Vocabulary",
    "expand_terms",
    "build_vocabulary",
    "vocabulary_from_token_docs",
    "count_vector",
    "class_sides",
    "delta_weights",
    "with_sides",
    "vectorize",
    "vocabulary_hash",
    "save_vocabulary",
    "load_vocabulary",
]

NORMALIZER_VERSION = 1

#: Fixed emoticon table (frozen with the normalizer version).
EMOTICONS: dict[str, str] = {}
EMOTICONS.update(dict.fromkeys(
    [":)", ":-)", ":))", "=)", ":]", ":-]", ":D", ":-D", "=D", ";)", ";-)",
     ";D", ":p", ":-p", ":P", ":-P", ";p", "<3", ":3", "^^", "^_^", "xD",
     "XD", ":'D"],
    "<emo_pos>",
))
EMOTICONS.update(dict.fromkeys(
    [":(", ":-(", "=(", ":[", ":-[", ":'(", ";(", "D:", "D-:", "</3", ":c",
     ":C", ">:(", ":{"],
    "<emo_neg>",
))
EMOTICONS.update(dict.fromkeys(
    [":|", ":-|", ":/", ":-/", ":\\", ":-\\", "=/", "=\\", ":o", ":-o",
     ":O", ":-O", ":s", ":-S", "o_O", "o_o", "O_o", "-_-"],
    "<emo_other>",
))


def _emoticon_piece(emo: str) -> str:
    piece = re.escape(emo)
    if emo[0].isalnum():
        piece = r"(?<!\w)" + piece
    if emo[-1].isalnum():
        piece = piece + r"(?!\w)"
    return piece


_EMOTICON_ALTERNATION = "|".join(
    _emoticon_piece(e) for e in sorted(EMOTICONS, key=len, reverse=True)
)

_TOKEN_RE = re.compile(
    r"""
    (?P<url>(?:https?://|www\.)\S+)
    | (?P<user>@\w+)
    | \#(?P<hashtag>\w+)
    | (?P<emoticon>%s)
    | (?P<word>\w+(?:'\w+)*)
    """ % _EMOTICON_ALTERNATION,
    re.VERBOSE,
)

_ELONG_RE = re.compile(r"([^\W\d_])\1{2,}")


def identity_stem(token: str) -> str:
    """The no-op stemmer."""
    return token


_SUFFIXES = (
    "ational", "iveness", "fulness", "ization", "ations",
    "ingly", "ments", "ness", "ment", "tion", "sion",
    "ing", "ies", "ed", "ly", "es", "s",
)


def english_suffix_stem(token: str) -> str:
    """Lightweight English stemmer: strip one common suffix.

    Deterministic and total; keeps at least three characters of stem
    and never touches marker tokens (you should not pass them anyway).
    """
    for suffix in _SUFFIXES:
        if token.endswith(suffix) and len(token) - len(suffix) >= 3:
            stem = token[: -len(suffix)]
            return stem + "y" if suffix == "ies" else stem
    return token


def _word_tokens(word: str, stemmer: Callable[[str], str] | None) -> list[str]:
    lowered = word.lower()
    collapsed = _ELONG_RE.sub(r"\1\1", lowered)
    elongated = collapsed != lowered
    if stemmer is not None:
        collapsed = stemmer(collapsed) or collapsed
    return [collapsed, "<elong>"] if elongated else [collapsed]


def normalize(text: str, stemmer: Callable[[str], str] | None = None) -> list[str]:
    """Normalize raw post text into a token list (see module docstring).

    The optional ``stemmer`` is applied to word tokens (including bare
    hashtag words) but never to ``<...>`` marker tokens.  Empty or
    all-punctuation input yields an empty list; no token is ever the
    empty string.
    """
    tokens: list[str] = []
    for match in _TOKEN_RE.finditer(text):
        kind = match.lastgroup
        if kind == "url":
            tokens.append("<url>")
        elif kind == "user":
            tokens.append("<user>")
        elif kind == "hashtag":
            tokens.append("<hashtag>")
            tokens.extend(_word_tokens(match.group("hashtag"), stemmer))
        elif kind == "emoticon":
            tokens.append(EMOTICONS[match.group("emoticon")])
        else:
            tokens.extend(_word_tokens(match.group("word"), stemmer))
    return tokens


@dataclass(frozen=True, eq=False)
class SparseVector:
    """Sparse feature vector with strictly increasing indices.

    Invariants: ``indices`` strictly increasing in ``[0, dim)``,
    ``values`` finite and nowhere zero, both arrays equally long.
    """

    indices: np.ndarray
    values: np.ndarray
    dim: int

    def __post_init__(self) -> None:
        indices = np.asarray(self.indices, dtype=np.intp)
        values = np.asarray(self.values, dtype=np.float64)
        if indices.shape != values.shape or indices.ndim != 1:
            raise ValueError("indices and values must be 1-D arrays of equal length")
        if indices.size:
            if indices[0] < 0 or indices[-1] >= self.dim:
                raise ValueError(f"indices out of range for dimension {self.dim}")
            if np.any(np.diff(indices) <= 0):
                raise ValueError("indices must be strictly increasing")
            if not np.all(np.isfinite(values)) or np.any(values == 0.0):
                raise ValueError("values must be finite and non-zero")
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "values", values)

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def dot(self, dense: np.ndarray) -> float:
        """Inner product with a dense vector of length ``dim``."""
        return float(self.values @ dense[self.indices])


@dataclass(frozen=True)
class ClassSides:
    """Per-side document frequencies of one binary subproblem."""

    pos_doc_freq: np.ndarray
    neg_doc_freq: np.ndarray
    n_pos: int
    n_neg: int


@dataclass(frozen=True)
class Vocabulary:
    """Deterministic term-to-index mapping with document frequencies.

    Terms are sorted lexicographically, so the mapping is a pure
    function of the training corpus and the configuration.  ``sides``
    is optional binary class-side statistics (see :func:`with_sides`).
    """

    terms: tuple[str, ...]
    doc_freq: np.ndarray
    n_docs: int
    min_df: int
    ngrams: tuple[int, ...]
    sides: ClassSides | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "doc_freq", np.asarray(self.doc_freq, dtype=np.int64))
        object.__setattr__(self, "_index", {t: i for i, t in enumerate(self.terms)})

    @property
    def index(self) -> dict[str, int]:
        return self._index  # type: ignore[attr-defined]

    @property
    def dim(self) -> int:
        return len(self.terms)


def expand_terms(tokens: Sequence[str], ngrams: tuple[int, ...] = (1, 2)) -> list[str]:
    """N-gram terms of a token stream; multi-token terms join on a space."""
    terms: list[str] = []
    for n in ngrams:
        if n == 1:
            terms.extend(tokens)
        else:
            terms.extend(" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
    return terms


def vocabulary_from_token_docs(
    token_docs: Sequence[Sequence[str]],
    min_df: int = 5,
    ngrams: tuple[int, ...] = (1, 2),
    count_mode: str = "documents",
) -> Vocabulary:
    """Build a vocabulary from already-normalized documents.

    ``count_mode`` selects what ``min_df`` prunes on: ``"documents"``
    (number of documents containing the term, the default) or
    ``"occurrences"`` (total term count across the corpus).
    """
    if min_df < 1:
        raise VocabularyError(f"min_df must be >= 1, got {min_df}")
    if count_mode not in ("documents", "occurrences"):
        raise VocabularyError(f"unknown count_mode {count_mode!r}")
    if not token_docs:
        raise VocabularyError("cannot build a vocabulary from an empty corpus")
    doc_freq: Counter[str] = Counter()
    occurrences: Counter[str] = Counter()
    for tokens in token_docs:
        terms = expand_terms(tokens, ngrams)
        occurrences.update(terms)
        doc_freq.update(set(terms))
    basis = doc_freq if count_mode == "documents" else occurrences
    kept = sorted(term for term, freq in basis.items() if freq >= min_df)
    return Vocabulary(
        terms=tuple(kept),
        doc_freq=np.array([doc_freq[t] for t in kept], dtype=np.int64),
        n_docs=len(token_docs),
        min_df=min_df,
        ngrams=tuple(ngrams),
    )


def _post_tokens(post: GoldPost, stemmer: Callable[[str], str] | None) -> list[str]:
    if post.text is None:
        raise CorpusFormatError(f"post {post.post_id!r} has no text")
    return normalize(post.text, stemmer)


def build_vocabulary(
    posts: Sequence[GoldPost],
    min_df: int = 5,
    ngrams: tuple[int, ...] = (1, 2),
    stemmer: Callable[[str], str] | None = None,
    count_mode: str = "documents",
) -> Vocabulary:
    """Normalize a gold corpus and build its n-gram vocabulary."""
    if not posts:
        raise VocabularyError("cannot build a vocabulary from an empty corpus")
    return vocabulary_from_token_docs(
        [_post_tokens(p, stemmer) for p in posts],
        min_df=min_df,
        ngrams=ngrams,
        count_mode=count_mode,
    )


def count_vector(tokens: Sequence[str], vocab: Vocabulary) -> SparseVector:
    """Raw term-count vector of one normalized document."""
    index = vocab.index
    counts: Counter[int] = Counter()
    for term in expand_terms(tokens, vocab.ngrams):
        idx = index.get(term)
        if idx is not None:
            counts[idx] += 1
    if not counts:
        return SparseVector(np.empty(0, dtype=np.intp), np.empty(0), vocab.dim)
    items = sorted(counts.items())
    return SparseVector(
        np.array([i for i, _ in items], dtype=np.intp),
        np.array([c for _, c in items], dtype=np.float64),
        vocab.dim,
    )


def class_sides(
    vectors: Sequence[SparseVector],
    positive: Sequence[bool],
    dim: int,
) -> ClassSides:
    """Per-side document frequencies from raw count vectors.

    A document counts toward a term's side frequency when the term
    occurs in it at all; multiplicity is ignored.
    """
    if len(vectors) != len(positive):
        raise ValueError("vectors and side mask differ in length")
    pos_df = np.zeros(dim, dtype=np.int64)
    neg_df = np.zeros(dim, dtype=np.int64)
    n_pos = 0
    for vec, is_pos in zip(vectors, positive):
        target = pos_df if is_pos else neg_df
        n_pos += bool(is_pos)
        np.add.at(target, vec.indices, 1)
    return ClassSides(
        pos_doc_freq=pos_df,
        neg_doc_freq=neg_df,
        n_pos=n_pos,
        n_neg=len(vectors) - n_pos,
    )


def delta_weights(sides: ClassSides, smoothing: float = 0.5) -> np.ndarray:
    """Per-term class-ratio weights (see module docstring for the formula)."""
    s = float(smoothing)
    if s <= 0:
        raise ValueError(f"smoothing must be positive, got {smoothing}")
    num = (sides.neg_doc_freq + s) * (sides.n_pos + s)
    den = (sides.pos_doc_freq + s) * (sides.n_neg + s)
    return np.log2(num / den)


def with_sides(
    vocab: Vocabulary,
    vectors: Sequence[SparseVector],
    positive: Sequence[bool],
) -> Vocabulary:
    """Attach binary class-side statistics to a vocabulary."""
    return replace(vocab, sides=class_sides(vectors, positive, vocab.dim))


def vectorize(
    post: GoldPost,
    vocab: Vocabulary,
    stemmer: Callable[[str], str] | None = None,
) -> SparseVector:
    """Weighted feature vector of one post: raw counts times the
    class-ratio weights of ``vocab.sides``.

    Exact zero weights are dropped so the no-zero-values invariant of
    :class:`SparseVector` holds.  Raises :class:`VocabularyError` when
    the vocabulary carries no class-side statistics.
    """
    if vocab.sides is None:
        raise VocabularyError("vocabulary has no class-side statistics; call with_sides first")
    raw = count_vector(_post_tokens(post, stemmer), vocab)
    weights = delta_weights(vocab.sides)
    values = raw.values * weights[raw.indices]
    keep = values != 0.0
    return SparseVector(raw.indices[keep], values[keep], vocab.dim)


# --- serialization ----------------------------------------------------------

_VOCAB_MAGIC = "sentagree-vocab"
_VOCAB_VERSION = 1


def _core_lines(vocab: Vocabulary) -> list[str]:
    lines = [f"n_docs {vocab.n_docs}"]
    for i, term in enumerate(vocab.terms):
        lines.append(f"{term}\t{i}\t{int(vocab.doc_freq[i])}")
    return lines


def vocabulary_hash(vocab: Vocabulary) -> str:
    """SHA-256 over the term/index/frequency core of the vocabulary.

    Class-side statistics do not enter the hash: two vocabularies with
    the same term mapping are interchangeable for a serialized model.
    """
    digest = hashlib.sha256()
    for line in _core_lines(vocab):
        digest.update(line.encode("utf-8"))
        digest.update(b"\n")
    return digest.hexdigest()


def save_vocabulary(vocab: Vocabulary, path: str | Path) -> None:
    """Write the vocabulary as versioned flat text (one term per line)."""
    for term in vocab.terms:
        if "\t" in term or "\n" in term:
            raise VocabularyError(f"term {term!r} contains a delimiter character")
    sides = vocab.sides
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"{_VOCAB_MAGIC} {_VOCAB_VERSION}\n")
        handle.write(f"n_docs {vocab.n_docs}\n")
        handle.write(f"min_df {vocab.min_df}\n")
        handle.write("ngrams " + ",".join(str(n) for n in vocab.ngrams) + "\n")
        if sides is not None:
            handle.write(f"sides {sides.n_pos} {sides.n_neg}\n")
        handle.write(f"terms {vocab.dim}\n")
        for i, term in enumerate(vocab.terms):
            row = f"{term}\t{i}\t{int(vocab.doc_freq[i])}"
            if sides is not None:
                row += f"\t{int(sides.pos_doc_freq[i])}\t{int(sides.neg_doc_freq[i])}"
            handle.write(row + "\n")


def load_vocabulary(path: str | Path) -> Vocabulary:
    """Read a vocabulary written by :func:`save_vocabulary`."""
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    if not lines or not lines[0].startswith(_VOCAB_MAGIC):
        raise VocabularyError(f"{path}: not a vocabulary file")
    version = lines[0].removeprefix(_VOCAB_MAGIC).strip()
    if version != str(_VOCAB_VERSION):
        raise VocabularyError(f"{path}: unsupported vocabulary version {version!r}")
    try:
        cursor = 1
        n_docs = int(lines[cursor].split()[1]); cursor += 1
        min_df = int(lines[cursor].split()[1]); cursor += 1
        ngrams = tuple(int(n) for n in lines[cursor].split()[1].split(",")); cursor += 1
        side_totals: tuple[int, int] | None = None
        if lines[cursor].startswith("sides "):
            _, n_pos, n_neg = lines[cursor].split()
            side_totals = (int(n_pos), int(n_neg))
            cursor += 1
        n_terms = int(lines[cursor].split()[1]); cursor += 1
        terms: list[str] = []
        doc_freq = np.zeros(n_terms, dtype=np.int64)
        pos_df = np.zeros(n_terms, dtype=np.int64)
        neg_df = np.zeros(n_terms, dtype=np.int64)
        for offset in range(n_terms):
            fields = lines[cursor + offset].split("\t")
            term, idx, df = fields[0], int(fields[1]), int(fields[2])
            if idx != offset:
                raise VocabularyError(f"{path}: term index {idx} out of order")
            terms.append(term)
            doc_freq[offset] = df
            if side_totals is not None:
                pos_df[offset] = int(fields[3])
                neg_df[offset] = int(fields[4])
    except (IndexError, ValueError) as exc:
        raise VocabularyError(f"{path}: malformed vocabulary file ({exc})") from None
    sides = None
    if side_totals is not None:
        sides = ClassSides(pos_doc_freq=pos_df, neg_doc_freq=neg_df,
                           n_pos=side_totals[0], n_neg=side_totals[1])
    return Vocabulary(
        terms=tuple(terms),
        doc_freq=doc_freq,
        n_docs=n_docs,
        min_df=min_df,
        ngrams=ngrams,
        sides=sides,
    )
