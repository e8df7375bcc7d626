"""Agreement statistics between human A/B judgments and the bias metric."""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import stats as sps

from ._validation import check_same_length
from .exceptions import CorpusParseError, SchemaError, UndefinedCorrelationError

CHOICES = ("A", "B")
EXACT_MAX_N = 8


@dataclass(frozen=True)
class AbAnnotation:
    """One A/B sample: which summary humans and the metric found more biased.

    ``metric_choice`` is ``"A"`` only when ``arousal_a > arousal_b``; equal
    scores resolve to ``"B"`` and set ``tie``.
    """

    sample_id: str
    human_choice: str
    metric_choice: str
    arousal_a: float
    arousal_b: float
    tie: bool = False
    votes: tuple[str, ...] = ()

    @classmethod
    def from_scores(cls, sample_id: str, human_choice: str, arousal_a: float, arousal_b: float,
                    votes=()) -> "AbAnnotation":
        if human_choice not in CHOICES:
            raise ValueError(f"human_choice must be 'A' or 'B', got {human_choice!r}")
        metric, tie = metric_choice(arousal_a, arousal_b)
        return cls(sample_id, human_choice, metric, float(arousal_a), float(arousal_b), tie,
                   tuple(votes))

    @property
    def human_vote_share(self) -> float:
        """Share of raw votes for A (falls back to the majority label)."""
        if not self.votes:
            return 1.0 if self.human_choice == "A" else 0.0
        return self.votes.count("A") / len(self.votes)


def metric_choice(arousal_a: float, arousal_b: float) -> tuple[str, bool]:
    """Return ``(choice, tie)`` for the summary with higher ``Arousal_sum``."""
    if arousal_a > arousal_b:
        return "A", False
    return "B", arousal_a == arousal_b


def _ranks(values) -> np.ndarray:
    return sps.rankdata(np.asarray(values, dtype=float), method="average")


def _pearson(rx: np.ndarray, ry: np.ndarray) -> float:
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedCorrelationError("correlation undefined: an input has zero rank variance")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def _check_xy(x, y):
    x = list(x)
    y = list(y)
    check_same_length(x, y)
    if len(x) < 2:
        raise ValueError(f"need at least 2 observations, got {len(x)}")
    return x, y


def spearman(x, y) -> float:
    """Spearman rank correlation with average ranks for ties.

    Raises:
        ValueError: fewer than two observations or mismatched lengths.
        UndefinedCorrelationError: either input is constant.
    """
    x, y = _check_xy(x, y)
    return _pearson(_ranks(x), _ranks(y))


def spearman_test(x, y, *, exact: bool | None = None) -> tuple[float, float]:
    """Spearman coefficient with a two-sided p-value.

    For ``n <= 8`` the p-value comes from enumerating every permutation of
    ``y``'s ranks; above that a Student-t approximation with ``n - 2``
    degrees of freedom is used. ``exact`` overrides the choice.
    """
    x, y = _check_xy(x, y)
    rx, ry = _ranks(x), _ranks(y)
    rho = _pearson(rx, ry)
    n = len(x)
    if exact is None:
        exact = n <= EXACT_MAX_N
    if exact:
        return rho, _exact_pvalue(rx, ry, rho)
    if abs(rho) >= 1.0:
        return rho, 0.0
    t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    return rho, float(2.0 * sps.t.sf(abs(t), n - 2))


def _exact_pvalue(rx: np.ndarray, ry: np.ndarray, rho: float) -> float:
    dx = rx - rx.mean()
    norm = math.sqrt(float(dx @ dx) * float(((ry - ry.mean()) ** 2).sum()))
    target = abs(rho) - 1e-12
    hits = total = 0
    for perm in itertools.permutations(ry):
        p = np.asarray(perm)
        r = float(dx @ (p - p.mean())) / norm
        hits += abs(r) >= target
        total += 1
    return hits / total


def agreement_rate(annotations, *, exclude_ties: bool = True) -> float:
    """Share of samples where the human majority matches the metric's choice."""
    annotations = list(annotations)
    if not annotations:
        raise ValueError("no annotations")
    kept = [a for a in annotations if not (exclude_ties and a.tie)]
    if not kept:
        raise ValueError("every annotation is a metric tie; agreement undefined")
    return sum(a.human_choice == a.metric_choice for a in kept) / len(kept)


def majority_vote(votes) -> list[str]:
    """Per-sample majority label over odd-sized vote lists."""
    out = []
    for i, sample in enumerate(votes):
        sample = list(sample)
        if not sample or len(sample) % 2 == 0:
            raise ValueError(f"sample {i}: need an odd number of votes, got {len(sample)}")
        bad = [v for v in sample if v not in CHOICES]
        if bad:
            raise ValueError(f"sample {i}: invalid votes {bad}")
        counts = Counter(sample)
        out.append("A" if counts["A"] > counts["B"] else "B")
    return out


def load_annotations(path) -> list[AbAnnotation]:
    """Read A/B annotations from JSON lines.

    Each line holds ``sample_id``, ``votes`` (list of ``"A"``/``"B"``),
    ``arousal_a`` and ``arousal_b``.
    """
    records = []
    errors = []
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusParseError(f"invalid JSON: {exc.msg}", lineno) from None
            if not isinstance(obj, dict):
                errors.append((lineno, "expected a JSON object"))
                continue
            missing = [k for k in ("sample_id", "votes", "arousal_a", "arousal_b") if k not in obj]
            if missing:
                errors.append((lineno, f"missing field(s): {', '.join(missing)}"))
                continue
            try:
                human = majority_vote([obj["votes"]])[0]
                records.append(AbAnnotation.from_scores(
                    str(obj["sample_id"]), human, float(obj["arousal_a"]),
                    float(obj["arousal_b"]), obj["votes"]))
            except (TypeError, ValueError) as exc:
                errors.append((lineno, str(exc)))
    if errors:
        raise SchemaError(errors)
    return records


def correlation_report(annotations, *, mode: str = "choice", exclude_ties: bool = True) -> dict:
    """Spearman, p-value, agreement and tie count for a set of annotations.

    ``mode="choice"`` correlates the binary human and metric labels (A=1,
    B=0). ``mode="graded"`` correlates the human vote share for A with the
    metric margin ``arousal_a - arousal_b``.
    """
    annotations = list(annotations)
    if len(annotations) < 2:
        raise ValueError(f"need at least 2 annotated samples, got {len(annotations)}")
    ties = sum(a.tie for a in annotations)
    kept = [a for a in annotations if not (exclude_ties and a.tie)]
    if mode == "choice":
        x = [1.0 if a.human_choice == "A" else 0.0 for a in kept]
        y = [1.0 if a.metric_choice == "A" else 0.0 for a in kept]
    elif mode == "graded":
        x = [a.human_vote_share for a in kept]
        y = [a.arousal_a - a.arousal_b for a in kept]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    rho, p = spearman_test(x, y)
    return {
        "mode": mode,
        "n_samples": len(annotations),
        "n_used": len(kept),
        "ties": ties,
        "spearman": rho,
        "p_value": p,
        "agreement_rate": agreement_rate(annotations, exclude_ties=exclude_ties),
    }
