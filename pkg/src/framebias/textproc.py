"""Tokenization, sentence splitting and n-gram counting.

All metrics in the package go through :func:`tokenize`, so bias scores,
ROUGE and BLEU agree on what a token is.
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field

# Bump whenever tokenize() or split_sentences() behaviour changes; it feeds the
# report fingerprint.
TOKENIZER_VERSION = "ws-punctstrip-casefold/1"

ABBREVIATIONS = frozenset({"U.S.", "Mr.", "Dr.", "Jr.", "Sen.", "Rep."})

_CLOSERS = "\"'”’)]}"
_SENTENCE_END = re.compile(r"[.!?]+[" + re.escape(_CLOSERS) + r"]*(?=\s|$)")


def _is_edge_punct(ch: str) -> bool:
    # Unicode punctuation (P*) and symbols (S*): quotes, dashes, $, etc.
    return unicodedata.category(ch)[0] in "PS"


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple[str, ...]
    source_len_chars: int = 0

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, idx):
        return self.tokens[idx]

    def types(self) -> frozenset[str]:
        return frozenset(self.tokens)


@dataclass(frozen=True)
class SentenceList:
    sentences: tuple[str, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def __getitem__(self, idx):
        return self.sentences[idx]


def _strip_edges(piece: str) -> str:
    start, end = 0, len(piece)
    while start < end and _is_edge_punct(piece[start]):
        start += 1
    while end > start and _is_edge_punct(piece[end - 1]):
        end -= 1
    return piece[start:end]


def tokenize(text: str) -> TokenSequence:
    """Split ``text`` into case-folded word tokens.

    Pieces are separated on Unicode whitespace, leading and trailing
    punctuation/symbols are stripped, and whatever remains is case-folded.
    Internal apostrophes and hyphens survive, so ``don't`` and ``right-wing``
    stay single tokens.

    >>> tokenize("Trump blames 'fake news'!").tokens
    ('trump', 'blames', 'fake', 'news')
    """
    tokens = []
    for piece in text.split():
        core = _strip_edges(piece)
        if not core:
            continue
        folded = core.casefold()
        # casefold may expose edge punctuation in exotic scripts; strip again so
        # re-tokenizing the output is a fixed point
        folded = _strip_edges(folded)
        if folded:
            tokens.append(folded)
    return TokenSequence(tuple(tokens), len(text))


def _ends_with_abbreviation(text: str, end: int) -> bool:
    start = end
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    word = text[start:end].rstrip(_CLOSERS)
    word = word.lstrip("\"'“‘([{")
    return word in ABBREVIATIONS


def split_sentences(text: str) -> SentenceList:
    """Rule-based sentence segmentation.

    A sentence ends at ``.``, ``!`` or ``?`` (optionally followed by closing
    quotes or brackets) when whitespace or end-of-text follows. Tokens in
    :data:`ABBREVIATIONS` never end a sentence.
    """
    sentences = []
    start = 0
    for match in _SENTENCE_END.finditer(text):
        end = match.end()
        if _ends_with_abbreviation(text, end):
            continue
        chunk = " ".join(text[start:end].split())
        if chunk:
            sentences.append(chunk)
        start = end
    tail = " ".join(text[start:].split())
    if tail:
        sentences.append(tail)
    return SentenceList(tuple(sentences))


def ngrams(tokens, n: int) -> Counter:
    """Multiset of contiguous ``n``-grams as a Counter of tuples."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    seq = tuple(tokens)
    return Counter(seq[i:i + n] for i in range(len(seq) - n + 1))
