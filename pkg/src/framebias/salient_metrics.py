"""ROUGE-1/2/L and corpus BLEU-4 over the shared tokenizer."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._validation import check_same_length, check_string_list
from .textproc import ngrams, tokenize


@dataclass(frozen=True)
class RougeScore:
    recall: float
    precision: float
    f1: float

    @classmethod
    def from_counts(cls, overlap: int, hyp_total: int, ref_total: int) -> "RougeScore":
        if ref_total == 0:
            return cls(0.0, 0.0, 0.0)
        recall = overlap / ref_total
        precision = overlap / hyp_total if hyp_total else 0.0
        return cls(recall, precision, _f1(precision, recall))


@dataclass(frozen=True)
class BleuScore:
    score: float
    brevity_penalty: float
    precisions: tuple[float, float, float, float]
    hyp_length: int = 0
    ref_length: int = 0


def _f1(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


def _tokens(text):
    return tokenize(text).tokens if isinstance(text, str) else tuple(text)


def rouge_n(hypothesis, reference, n: int = 1) -> RougeScore:
    """ROUGE-N with clipped n-gram overlap.

    Recall is overlap over reference n-grams, precision is overlap over
    hypothesis n-grams. An empty reference gives an all-zero score.
    """
    if n not in (1, 2):
        raise ValueError(f"rouge_n supports n in {{1, 2}}, got {n!r}")
    hyp = ngrams(_tokens(hypothesis), n)
    ref = ngrams(_tokens(reference), n)
    overlap = sum((hyp & ref).values())
    return RougeScore.from_counts(overlap, sum(hyp.values()), sum(ref.values()))


def lcs_length(a, b) -> int:
    """Longest common subsequence length, O(len(a) * len(b)) time, O(len(b)) space."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            cur.append(prev[j] + 1 if x == y else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def rouge_l(hypothesis, reference) -> RougeScore:
    hyp, ref = _tokens(hypothesis), _tokens(reference)
    return RougeScore.from_counts(lcs_length(hyp, ref), len(hyp), len(ref))


def rouge_corpus(hypotheses, references) -> dict[str, RougeScore]:
    """Macro-average ROUGE-1, ROUGE-2 and ROUGE-L over aligned pairs.

    The averaged F1 is the mean of per-pair F1 values, not the F1 of the
    averaged precision and recall.
    """
    hypotheses = check_string_list(hypotheses, "hypotheses")
    references = check_string_list(references, "references")
    check_same_length(hypotheses, references, ("hypotheses", "references"))
    if not hypotheses:
        raise ValueError("need at least one pair")
    per = {"rouge1": [], "rouge2": [], "rougeL": []}
    for h, r in zip(hypotheses, references):
        ht, rt = tokenize(h).tokens, tokenize(r).tokens
        per["rouge1"].append(rouge_n(ht, rt, 1))
        per["rouge2"].append(rouge_n(ht, rt, 2))
        per["rougeL"].append(rouge_l(ht, rt))
    n = len(hypotheses)
    return {
        name: RougeScore(
            math.fsum(s.recall for s in scores) / n,
            math.fsum(s.precision for s in scores) / n,
            math.fsum(s.f1 for s in scores) / n,
        )
        for name, scores in per.items()
    }


def brevity_penalty(hyp_length: int, ref_length: int) -> float:
    if hyp_length == 0:
        return 0.0
    if hyp_length > ref_length:
        return 1.0
    return math.exp(1.0 - ref_length / hyp_length)


def bleu(hypotheses, references, max_n: int = 4) -> BleuScore:
    """Corpus-level BLEU with one reference per hypothesis.

    Modified n-gram precisions are micro-averaged over the corpus. When an
    order ``n >= 2`` has zero matches its precision becomes
    ``1 / (total + 1)`` (add-one on the zero count); a zero unigram match
    count makes the score 0.
    """
    hypotheses = check_string_list(hypotheses, "hypotheses")
    references = check_string_list(references, "references")
    check_same_length(hypotheses, references, ("hypotheses", "references"))
    if not hypotheses:
        raise ValueError("bleu needs at least one hypothesis")
    matches = [0] * max_n
    totals = [0] * max_n
    hyp_len = ref_len = 0
    for h, r in zip(hypotheses, references):
        ht, rt = tokenize(h).tokens, tokenize(r).tokens
        hyp_len += len(ht)
        ref_len += len(rt)
        for k in range(max_n):
            hc, rc = ngrams(ht, k + 1), ngrams(rt, k + 1)
            matches[k] += sum((hc & rc).values())
            totals[k] += sum(hc.values())

    precisions = []
    for k in range(max_n):
        if matches[k] == 0 and k >= 1:
            precisions.append(1.0 / (totals[k] + 1))
        elif totals[k] == 0:
            precisions.append(0.0)
        else:
            precisions.append(matches[k] / totals[k])

    bp = brevity_penalty(hyp_len, ref_len)
    if matches[0] == 0 or bp == 0.0:
        score = 0.0
    else:
        score = bp * math.exp(math.fsum(math.log(p) for p in precisions) / max_n)
    return BleuScore(min(score, 1.0), bp, tuple(precisions), hyp_len, ref_len)
