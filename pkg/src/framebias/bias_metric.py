"""Calibrated framing-bias metric based on VAD arousal.

For a generated summary and its neutral reference:

1. drop every hypothesis token whose type also occurs in the reference;
2. keep only surviving tokens whose lexicon valence is clearly positive
   (``v > pos_threshold``) or clearly negative (``v < neg_threshold``);
3. sum their arousal into a positive and a negative accumulator.

A corpus score is the plain average of the per-pair scores.
"""

from __future__ import annotations

import json
import logging
import math
from collections import Counter
from dataclasses import asdict, dataclass
from enum import Enum
from pathlib import Path

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_fraction, check_text_pairs
from .exceptions import ConfigurationError
from .lexicon import VadEntry, VadLexicon, load_lexicon
from .textproc import TokenSequence, tokenize

logger = logging.getLogger(__name__)

POS_THRESHOLD = 0.65
NEG_THRESHOLD = 0.35
COUNT_MODES = ("occurrence", "type")


class Polarity(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class PolarToken:
    term: str
    valence: float
    arousal: float
    polarity: Polarity
    occurrences: int
    pair_id: int | str | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["polarity"] = self.polarity.value
        return d


@dataclass(frozen=True)
class BiasScores:
    """Arousal scores for one pair, or their average over a corpus.

    ``polar_tokens`` lists the calibrated polar tokens that contributed.
    ``oov_ratio`` is the share of calibrated token occurrences missing from the
    lexicon. ``empty_hypotheses`` counts pairs whose hypothesis had no tokens.
    """

    arousal_pos: float
    arousal_neg: float
    arousal_sum: float
    polar_tokens: tuple[PolarToken, ...] = ()
    oov_ratio: float = 0.0
    empty_hypotheses: int = 0
    n_pairs: int = 1

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.arousal_pos, self.arousal_neg, self.arousal_sum)


def calibrated_unique_tokens(hypothesis, reference) -> Counter:
    """Hypothesis token types absent from the reference, with hypothesis counts."""
    ref_types = set(reference)
    counts = Counter()
    for tok in hypothesis:
        if tok not in ref_types:
            counts[tok] += 1
    return counts


def classify_polarity(entry: VadEntry | float, pos_threshold: float = POS_THRESHOLD,
                      neg_threshold: float = NEG_THRESHOLD) -> Polarity:
    """Strict-threshold polarity of a lexicon entry (or a bare valence)."""
    v = entry.valence if isinstance(entry, VadEntry) else float(entry)
    if v > pos_threshold:
        return Polarity.POSITIVE
    if v < neg_threshold:
        return Polarity.NEGATIVE
    return Polarity.NEUTRAL


def _check_config(lexicon, pos_threshold, neg_threshold, count_mode):
    if not isinstance(lexicon, VadLexicon):
        raise ConfigurationError(f"expected a VadLexicon, got {type(lexicon).__name__}")
    if len(lexicon) == 0:
        raise ConfigurationError("lexicon is empty")
    if count_mode not in COUNT_MODES:
        raise ConfigurationError(f"count_mode must be one of {COUNT_MODES}, got {count_mode!r}")
    try:
        pos = check_fraction(pos_threshold, "pos_threshold")
        neg = check_fraction(neg_threshold, "neg_threshold")
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from None
    if neg > pos:
        raise ConfigurationError("neg_threshold must not exceed pos_threshold")


def _as_tokens(text) -> tuple[str, ...]:
    if isinstance(text, TokenSequence):
        return text.tokens
    if isinstance(text, str):
        return tokenize(text).tokens
    return tuple(text)


def _score(hyp_tokens, ref_tokens, lexicon, pos_threshold, neg_threshold, count_mode,
           pair_id=None) -> BiasScores:
    unique = calibrated_unique_tokens(hyp_tokens, ref_tokens)
    pos_terms, neg_terms, polar = [], [], []
    oov = 0
    for term, count in unique.items():
        entry = lexicon.entries.get(term)
        if entry is None:
            oov += count
            continue
        polarity = classify_polarity(entry, pos_threshold, neg_threshold)
        if polarity is Polarity.NEUTRAL:
            continue
        weight = count if count_mode == "occurrence" else 1
        (pos_terms if polarity is Polarity.POSITIVE else neg_terms).append(entry.arousal * weight)
        polar.append(PolarToken(term, entry.valence, entry.arousal, polarity, count, pair_id))
    total = sum(unique.values())
    pos = math.fsum(pos_terms)
    neg = math.fsum(neg_terms)
    return BiasScores(
        arousal_pos=pos,
        arousal_neg=neg,
        arousal_sum=pos + neg,
        polar_tokens=tuple(polar),
        oov_ratio=oov / total if total else 0.0,
        empty_hypotheses=int(len(hyp_tokens) == 0),
    )


def score_pair(hypothesis, reference, lexicon: VadLexicon, *,
               pos_threshold: float = POS_THRESHOLD, neg_threshold: float = NEG_THRESHOLD,
               count_mode: str = "occurrence") -> BiasScores:
    """Score one hypothesis against its neutral reference.

    ``hypothesis`` and ``reference`` may be raw strings (tokenized with
    :func:`~framebias.textproc.tokenize`) or pre-tokenized sequences.
    With ``count_mode="occurrence"`` a surviving polar term contributes its
    arousal once per occurrence; with ``"type"`` only once.

    An empty hypothesis scores zero and is flagged via ``empty_hypotheses``.

    Raises:
        ConfigurationError: empty lexicon or invalid thresholds/count mode.
    """
    _check_config(lexicon, pos_threshold, neg_threshold, count_mode)
    hyp = _as_tokens(hypothesis)
    if not hyp:
        logger.warning("empty hypothesis after tokenization; scoring as zero")
    return _score(hyp, _as_tokens(reference), lexicon, pos_threshold, neg_threshold, count_mode)


def _record_fields(record, index):
    if hasattr(record, "hypothesis") and hasattr(record, "reference"):
        return getattr(record, "issue_id", index), record.hypothesis, record.reference
    hyp, ref = record
    return index, hyp, ref


def average_scores(per_pair: list[BiasScores]) -> BiasScores:
    """Arithmetic mean of per-pair scores; annotations are concatenated in order."""
    if not per_pair:
        raise ValueError("cannot average an empty list of scores")
    n = len(per_pair)
    pos = math.fsum(s.arousal_pos for s in per_pair) / n
    neg = math.fsum(s.arousal_neg for s in per_pair) / n
    total = math.fsum(s.arousal_sum for s in per_pair) / n
    tokens = tuple(t for s in per_pair for t in s.polar_tokens)
    return BiasScores(
        arousal_pos=pos,
        arousal_neg=neg,
        arousal_sum=total,
        polar_tokens=tokens,
        oov_ratio=math.fsum(s.oov_ratio for s in per_pair) / n,
        empty_hypotheses=sum(s.empty_hypotheses for s in per_pair),
        n_pairs=n,
    )


def score_corpus(pairs, lexicon: VadLexicon, *, pos_threshold: float = POS_THRESHOLD,
                 neg_threshold: float = NEG_THRESHOLD, count_mode: str = "occurrence",
                 return_pairs: bool = False):
    """Average :func:`score_pair` over a corpus.

    ``pairs`` holds ``EvalRecord``-like objects (``hypothesis``/``reference``
    attributes, optional ``issue_id``) or plain ``(hypothesis, reference)``
    tuples. Each polar token is tagged with its pair's ``issue_id`` (or index).
    With ``return_pairs=True`` the per-pair scores are returned as well.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("cannot score an empty corpus")
    _check_config(lexicon, pos_threshold, neg_threshold, count_mode)
    per_pair = []
    for i, record in enumerate(pairs):
        pair_id, hyp, ref = _record_fields(record, i)
        s = _score(_as_tokens(hyp), _as_tokens(ref), lexicon, pos_threshold, neg_threshold,
                   count_mode, pair_id)
        per_pair.append(s)
    empties = sum(s.empty_hypotheses for s in per_pair)
    if empties:
        logger.warning("%d of %d hypotheses were empty after tokenization", empties, len(per_pair))
    avg = average_scores(per_pair)
    return (avg, per_pair) if return_pairs else avg


def write_annotations(scores: BiasScores | list[BiasScores], path) -> int:
    """Write polar-token annotations as JSON lines; returns the number of lines."""
    if isinstance(scores, BiasScores):
        scores = [scores]
    n = 0
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for s in scores:
            for tok in s.polar_tokens:
                row = {
                    "pair_id": tok.pair_id,
                    "term": tok.term,
                    "valence": tok.valence,
                    "arousal": tok.arousal,
                    "polarity": tok.polarity.value,
                    "occurrences": tok.occurrences,
                }
                fh.write(json.dumps(row, ensure_ascii=False) + "\n")
                n += 1
    return n


class FramingBiasScorer(BaseEstimator, TransformerMixin):
    """Estimator wrapper around :func:`score_pair`.

    ``transform`` maps ``(hypothesis, reference)`` pairs to an ``(n, 3)``
    array of ``[arousal_pos, arousal_neg, arousal_sum]`` rows, so the metric
    can sit inside a scikit-learn pipeline or grid search over thresholds.

    Parameters
    ----------
    lexicon : VadLexicon or path-like
        Loaded lexicon, or a TSV path loaded at ``fit`` time.
    pos_threshold, neg_threshold : float
        Strict valence cut-offs for positive and negative tokens.
    count_mode : {"occurrence", "type"}
        Whether repeated polar tokens add their arousal per occurrence.
    """

    def __init__(self, lexicon=None, pos_threshold=POS_THRESHOLD, neg_threshold=NEG_THRESHOLD,
                 count_mode="occurrence"):
        self.lexicon = lexicon
        self.pos_threshold = pos_threshold
        self.neg_threshold = neg_threshold
        self.count_mode = count_mode

    def fit(self, X=None, y=None):
        if self.lexicon is None:
            raise ConfigurationError("no lexicon given")
        lex = self.lexicon if isinstance(self.lexicon, VadLexicon) else load_lexicon(self.lexicon)
        _check_config(lex, self.pos_threshold, self.neg_threshold, self.count_mode)
        self.lexicon_ = lex
        return self

    def _kwargs(self):
        return dict(pos_threshold=self.pos_threshold, neg_threshold=self.neg_threshold,
                    count_mode=self.count_mode)

    def transform(self, X):
        check_is_fitted(self, "lexicon_")
        pairs = check_text_pairs(X)
        out = np.zeros((len(pairs), 3))
        for i, (hyp, ref) in enumerate(pairs):
            out[i] = score_pair(hyp, ref, self.lexicon_, **self._kwargs()).as_tuple()
        return out

    def score_pairs(self, X) -> list[BiasScores]:
        check_is_fitted(self, "lexicon_")
        return [score_pair(h, r, self.lexicon_, **self._kwargs()) for h, r in check_text_pairs(X)]

    def score_corpus(self, X) -> BiasScores:
        check_is_fitted(self, "lexicon_")
        return score_corpus(check_text_pairs(X), self.lexicon_, **self._kwargs())

    def get_feature_names_out(self, input_features=None):
        return np.array(["arousal_pos", "arousal_neg", "arousal_sum"], dtype=object)
