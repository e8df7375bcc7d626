"""Corpus-level metric report rows (JSON and markdown)."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .bias_metric import BiasScores
from .textproc import TOKENIZER_VERSION


def config_fingerprint(pos_threshold: float, neg_threshold: float, count_mode: str,
                       tokenizer_version: str = TOKENIZER_VERSION) -> str:
    payload = json.dumps({
        "pos_threshold": float(pos_threshold),
        "neg_threshold": float(neg_threshold),
        "count_mode": count_mode,
        "tokenizer": tokenizer_version,
    }, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


@dataclass
class MetricReport:
    system_name: str
    bias: BiasScores
    bleu: float
    rouge: dict  # name -> RougeScore
    n_pairs: int
    config_fingerprint: str
    feqa_external: float | None = None
    skipped_ids: list[str] = field(default_factory=list)
    missing_ids: list[str] = field(default_factory=list)
    lexicon_name: str = ""
    config: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n_pairs < 1:
            raise ValueError("a report needs at least one scored pair")

    def to_dict(self) -> dict:
        rouge = {}
        for name, s in sorted(self.rouge.items()):
            rouge[f"{name}_recall"] = s.recall
            rouge[f"{name}_precision"] = s.precision
            rouge[f"{name}_f1"] = s.f1
        return {
            "system_name": self.system_name,
            "n_pairs": self.n_pairs,
            "arousal_pos": self.bias.arousal_pos,
            "arousal_neg": self.bias.arousal_neg,
            "arousal_sum": self.bias.arousal_sum,
            "oov_ratio": self.bias.oov_ratio,
            "empty_hypotheses": self.bias.empty_hypotheses,
            "bleu": self.bleu,
            **rouge,
            "feqa_external": self.feqa_external,
            "config_fingerprint": self.config_fingerprint,
            "config": self.config,
            "lexicon": self.lexicon_name,
            "skipped_ids": sorted(self.skipped_ids),
            "missing_ids": sorted(self.missing_ids),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_markdown(self) -> str:
        """Table row in the Arousal+/-/sum, BLEU, ROUGE1-R, FeQA order, then ROUGE extras.

        BLEU is scaled by 100; ROUGE and FeQA are shown as percentages.
        """
        r = self.rouge
        feqa = "-" if self.feqa_external is None else f"{100 * self.feqa_external:.2f}%"
        header = ["System", "Arousal+", "Arousal-", "Arousal_sum", "BLEU", "ROUGE1-R", "FeQA",
                  "ROUGE1-F1", "ROUGE2-F1", "ROUGEL-F1", "ROUGE2-R", "ROUGEL-R", "n"]
        row = [
            self.system_name,
            f"{self.bias.arousal_pos:.2f}",
            f"{self.bias.arousal_neg:.2f}",
            f"{self.bias.arousal_sum:.2f}",
            f"{100 * self.bleu:.2f}",
            f"{100 * r['rouge1'].recall:.2f}%",
            feqa,
            f"{100 * r['rouge1'].f1:.2f}%",
            f"{100 * r['rouge2'].f1:.2f}%",
            f"{100 * r['rougeL'].f1:.2f}%",
            f"{100 * r['rouge2'].recall:.2f}%",
            f"{100 * r['rougeL'].recall:.2f}%",
            str(self.n_pairs),
        ]
        lines = [
            "| " + " | ".join(header) + " |",
            "|" + "|".join("---" for _ in header) + "|",
            "| " + " | ".join(row) + " |",
        ]
        if self.skipped_ids:
            lines += ["", "Skipped hypothesis ids (not in corpus): " + ", ".join(sorted(self.skipped_ids))]
        lines += ["", f"config fingerprint: `{self.config_fingerprint}`"]
        return "\n".join(lines) + "\n"
