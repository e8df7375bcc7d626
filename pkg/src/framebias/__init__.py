"""Framing-bias evaluation toolkit for neutral news summarization."""

from .bias_metric import (
    BiasScores,
    FramingBiasScorer,
    Polarity,
    PolarToken,
    calibrated_unique_tokens,
    classify_polarity,
    score_corpus,
    score_pair,
)
from .corpus import (
    EvalRecord,
    NewsTriplet,
    SourceArticle,
    format_mtl_input,
    format_mtl_target,
    load_corpus,
    shuffle_order,
    split_dataset,
)
from .lexicon import VadEntry, VadLexicon, coverage, load_lexicon, lookup
from .salient_metrics import BleuScore, RougeScore, bleu, rouge_l, rouge_n
from .stats import AbAnnotation, agreement_rate, majority_vote, spearman, spearman_test
from .summarizer import LexRankSummarizer, extract_summary, lexrank_centrality, tfidf_cosine_matrix
from .textproc import ngrams, split_sentences, tokenize

__version__ = "0.1.0"

__all__ = [
    "AbAnnotation", "BiasScores", "BleuScore", "EvalRecord", "FramingBiasScorer",
    "LexRankSummarizer", "NewsTriplet", "PolarToken", "Polarity", "RougeScore",
    "SourceArticle", "VadEntry", "VadLexicon", "agreement_rate", "bleu",
    "calibrated_unique_tokens", "classify_polarity", "coverage", "extract_summary",
    "format_mtl_input", "format_mtl_target", "lexrank_centrality", "load_corpus",
    "load_lexicon", "lookup", "majority_vote", "ngrams", "rouge_l", "rouge_n",
    "score_corpus", "score_pair", "shuffle_order", "spearman", "spearman_test",
    "split_dataset", "split_sentences", "tfidf_cosine_matrix", "tokenize",
]
