"""Continuous LexRank extractive baseline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.feature_extraction.text import TfidfVectorizer

from ._validation import check_fraction, check_positive_int, check_square_matrix, check_string_list
from .textproc import SentenceList, split_sentences, tokenize

DAMPING = 0.85
TOL = 1e-6
MAX_ITER = 200
MAX_WORDS = 80


@dataclass(frozen=True)
class SentenceGraph:
    sentences: SentenceList
    similarity: np.ndarray
    centrality: np.ndarray


def _tokens(text: str) -> list[str]:
    return list(tokenize(text).tokens)


def tfidf_cosine_matrix(sentences) -> np.ndarray:
    """Cosine similarity of sentence TF-IDF vectors.

    IDF is computed over the given sentences as ``ln((1 + N) / (1 + df)) + 1``.
    The diagonal is 1 even for sentences without tokens.
    """
    sentences = check_string_list(sentences, "sentences")
    if not sentences:
        raise ValueError("need at least one sentence")
    n = len(sentences)
    if not any(_tokens(s) for s in sentences):
        return np.eye(n)
    vec = TfidfVectorizer(tokenizer=_tokens, lowercase=False, token_pattern=None,
                          smooth_idf=True, sublinear_tf=False, norm="l2")
    X = vec.fit_transform(sentences)
    sim = np.asarray((X @ X.T).todense(), dtype=float)
    np.clip(sim, 0.0, 1.0, out=sim)
    sim = (sim + sim.T) / 2
    np.fill_diagonal(sim, 1.0)
    return sim


def transition_matrix(similarity) -> np.ndarray:
    """Row-normalize ``similarity``; all-zero rows become uniform."""
    S = np.asarray(similarity, dtype=float)
    n = S.shape[0]
    rows = S.sum(axis=1, keepdims=True)
    M = np.divide(S, rows, out=np.full_like(S, 1.0 / n), where=rows > 0)
    return M


def lexrank_centrality(similarity, damping: float = DAMPING, tol: float = TOL,
                       max_iter: int = MAX_ITER) -> np.ndarray:
    """Stationary distribution of the damped sentence random walk.

    Iterates ``p <- (1 - damping) / N + damping * M.T @ p`` from the uniform
    vector until the L1 change drops below ``tol``, where ``M`` is the
    row-normalized similarity matrix. ``damping`` is the probability of
    following a similarity edge rather than jumping uniformly.
    """
    S = check_square_matrix(similarity, nonnegative=True)
    damping = check_fraction(damping, "damping", inclusive=False)
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = S.shape[0]
    if n == 1:
        return np.ones(1)
    Mt = transition_matrix(S).T
    p = np.full(n, 1.0 / n)
    teleport = (1.0 - damping) / n
    for _ in range(max_iter):
        nxt = teleport + damping * (Mt @ p)
        nxt /= nxt.sum()
        delta = np.abs(nxt - p).sum()
        p = nxt
        if delta < tol:
            break
    return p


def build_graph(sentences, damping: float = DAMPING, tol: float = TOL,
                max_iter: int = MAX_ITER) -> SentenceGraph:
    sl = sentences if isinstance(sentences, SentenceList) else SentenceList(tuple(sentences))
    sim = tfidf_cosine_matrix(list(sl))
    return SentenceGraph(sl, sim, lexrank_centrality(sim, damping, tol, max_iter))


def extract_summary(articles, max_words: int = MAX_WORDS, *, damping: float = DAMPING,
                    tol: float = TOL, max_iter: int = MAX_ITER) -> str:
    """Pick the most central sentences across ``articles`` within a word budget.

    Sentences from all articles are pooled and ranked by LexRank centrality
    (ties go to the earlier position). Sentences are taken greedily until the
    next one would overflow ``max_words``; the top sentence is always taken.
    The selection is emitted in original order.
    """
    articles = check_string_list(articles, "articles")
    max_words = check_positive_int(max_words, "max_words")
    pool = [s for art in articles for s in split_sentences(art)]
    if not pool:
        raise ValueError("all articles are empty")
    centrality = build_graph(pool, damping, tol, max_iter).centrality
    # stable sort on -centrality keeps earlier positions first among ties
    order = sorted(range(len(pool)), key=lambda i: -centrality[i])
    chosen = []
    used = 0
    for i in order:
        words = len(pool[i].split())
        if chosen and used + words > max_words:
            break
        chosen.append(i)
        used += words
    return " ".join(pool[i] for i in sorted(chosen))


class LexRankSummarizer(BaseEstimator, TransformerMixin):
    """Stateless transformer: each sample is a list of articles, output its summary.

    >>> LexRankSummarizer(max_words=20).transform([["One sentence here."]])
    ['One sentence here.']
    """

    def __init__(self, max_words=MAX_WORDS, damping=DAMPING, tol=TOL, max_iter=MAX_ITER):
        self.max_words = max_words
        self.damping = damping
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X=None, y=None):
        check_positive_int(self.max_words, "max_words")
        check_fraction(self.damping, "damping", inclusive=False)
        return self

    def transform(self, X):
        if isinstance(X, str):
            raise ValueError("X must be a list of article lists, not a string")
        return [extract_summary([a] if isinstance(a, str) else a, self.max_words,
                                damping=self.damping, tol=self.tol, max_iter=self.max_iter)
                for a in X]

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.requires_fit = False
        return tags
