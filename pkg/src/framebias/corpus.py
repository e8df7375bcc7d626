"""AllSides-style news triplets: JSONL I/O, splitting and MTL serialization.

Corpus files hold one issue per line::

    {"issue_id": "...",
     "left": {"title": "...", "article": "..."},
     "center": {...}, "right": {...},
     "neutral_title": "...", "neutral_article": "...",
     "date": "2019-03-14", "topics": ["Politics"],
     "media_names": ["CNN", "Reuters", "Fox News"]}

``date``, ``topics`` and ``media_names`` are optional.
"""

from __future__ import annotations

import datetime as dt
import hashlib
import itertools
import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

from .exceptions import CorpusParseError, SchemaError, ValidationError

TITLE_MARK = "TITLE=> "
ARTICLE_MARK = "ARTICLE=> "
SEP = " [SEP] "
MARKERS = ("[SEP]", "TITLE=>", "ARTICLE=>")

SIDES = ("L", "C", "R")
PERMUTATIONS = tuple(itertools.permutations(SIDES))
_SIDE_FIELDS = {"L": "left", "C": "center", "R": "right"}

TRAINVAL_FRAC = 2 / 3
VAL_RATIO = 0.2
DEFAULT_TRAIN_FRAC = TRAINVAL_FRAC * (1 - VAL_RATIO)
DEFAULT_VAL_FRAC = TRAINVAL_FRAC * VAL_RATIO


@dataclass(frozen=True)
class SourceArticle:
    title: str
    article: str


@dataclass(frozen=True)
class NewsTriplet:
    issue_id: str
    left: SourceArticle
    center: SourceArticle
    right: SourceArticle
    neutral_title: str
    neutral_article: str
    date: dt.date | None = None
    topics: tuple[str, ...] = ()
    media_names: tuple[str, str, str] | None = None

    def source(self, side: str) -> SourceArticle:
        return getattr(self, _SIDE_FIELDS[side])

    def to_dict(self) -> dict:
        d = {
            "issue_id": self.issue_id,
            "left": {"title": self.left.title, "article": self.left.article},
            "center": {"title": self.center.title, "article": self.center.article},
            "right": {"title": self.right.title, "article": self.right.article},
            "neutral_title": self.neutral_title,
            "neutral_article": self.neutral_article,
            "topics": list(self.topics),
        }
        if self.date is not None:
            d["date"] = self.date.isoformat()
        if self.media_names is not None:
            d["media_names"] = list(self.media_names)
        return d


@dataclass(frozen=True)
class EvalRecord:
    issue_id: str
    hypothesis: str
    reference: str
    sources: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.hypothesis.strip():
            raise ValidationError(f"{self.issue_id}: empty hypothesis")
        if not self.reference.strip():
            raise ValidationError(f"{self.issue_id}: empty reference")


def _text_problems(name: str, value) -> list[str]:
    if not isinstance(value, str):
        return [f"field '{name}' must be a string"]
    if not value.strip():
        return [f"field '{name}' is empty"]
    hits = [m for m in MARKERS if m in value]
    if hits:
        return [f"field '{name}' contains reserved marker {hits[0]!r}"]
    return []


def triplet_from_dict(obj) -> NewsTriplet:
    """Validate one decoded JSON object; raises ``SchemaError`` listing every problem."""
    if not isinstance(obj, dict):
        raise SchemaError([(None, "expected a JSON object")])
    problems: list[str] = []
    missing = [k for k in ("issue_id", "left", "center", "right", "neutral_title", "neutral_article")
               if k not in obj]
    if missing:
        raise SchemaError([(None, f"missing field(s): {', '.join(missing)}")])
    if not isinstance(obj["issue_id"], str) or not obj["issue_id"].strip():
        problems.append("field 'issue_id' must be a non-empty string")
    sources = {}
    for side in ("left", "center", "right"):
        src = obj[side]
        if not isinstance(src, dict):
            problems.append(f"field '{side}' must be an object with title and article")
            continue
        for part in ("title", "article"):
            if part not in src:
                problems.append(f"missing field: {side}.{part}")
            else:
                problems += _text_problems(f"{side}.{part}", src[part])
        sources[side] = src
    for name in ("neutral_title", "neutral_article"):
        problems += _text_problems(name, obj[name])

    date = None
    if obj.get("date") is not None:
        try:
            date = dt.date.fromisoformat(str(obj["date"]))
        except ValueError:
            problems.append(f"field 'date' is not an ISO-8601 date: {obj['date']!r}")
    topics = obj.get("topics", [])
    if not isinstance(topics, list) or not all(isinstance(t, str) for t in topics):
        problems.append("field 'topics' must be a list of strings")
        topics = []
    media = obj.get("media_names")
    if media is not None and (not isinstance(media, list) or len(media) != 3
                              or not all(isinstance(m, str) for m in media)):
        problems.append("field 'media_names' must be a list of 3 strings")
    if problems:
        raise SchemaError([(None, p) for p in problems])
    return NewsTriplet(
        issue_id=obj["issue_id"],
        left=SourceArticle(sources["left"]["title"], sources["left"]["article"]),
        center=SourceArticle(sources["center"]["title"], sources["center"]["article"]),
        right=SourceArticle(sources["right"]["title"], sources["right"]["article"]),
        neutral_title=obj["neutral_title"],
        neutral_article=obj["neutral_article"],
        date=date,
        topics=tuple(topics),
        media_names=tuple(media) if media is not None else None,
    )


def load_corpus(path) -> list[NewsTriplet]:
    """Load and validate a JSONL corpus.

    Raises:
        CorpusParseError: a line is not valid JSON (reports the line number).
        SchemaError: one or more records are invalid; ``errors`` lists every
            ``(lineno, message)`` found, including duplicate issue ids.
    """
    triplets = []
    errors: list[tuple[int | None, str]] = []
    seen: dict[str, int] = {}
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusParseError(f"invalid JSON: {exc.msg}", lineno) from None
            try:
                t = triplet_from_dict(obj)
            except SchemaError as exc:
                errors += [(lineno, msg) for _, msg in exc.errors]
                continue
            if t.issue_id in seen:
                errors.append((lineno, f"duplicate issue_id {t.issue_id!r} (first on line {seen[t.issue_id]})"))
                continue
            seen[t.issue_id] = lineno
            triplets.append(t)
    if errors:
        raise SchemaError(errors)
    return triplets


def dump_corpus(triplets, path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for t in triplets:
            fh.write(json.dumps(t.to_dict(), ensure_ascii=False) + "\n")


def split_dataset(triplets, train_frac: float = DEFAULT_TRAIN_FRAC,
                  val_frac: float = DEFAULT_VAL_FRAC, seed: int = 0):
    """Seeded shuffle followed by a contiguous train/val/test split.

    The train+val block gets ``round(N * (train_frac + val_frac))`` items and
    is divided between train and val in proportion ``train_frac : val_frac``
    (train size floored). The rest is test. Defaults give 2/3 train+val at
    80:20 and 1/3 test.
    """
    items = list(triplets)
    for name, f in (("train_frac", train_frac), ("val_frac", val_frac)):
        if isinstance(f, bool) or not isinstance(f, (int, float)) or not (0 < f <= 1):
            raise ValueError(f"{name} must be in (0, 1], got {f!r}")
    if train_frac + val_frac > 1 + 1e-12:
        raise ValueError("train_frac + val_frac must not exceed 1")
    n = len(items)
    trainval = min(n, int(math.floor(n * (train_frac + val_frac) + 0.5)))
    n_train = int(math.floor(trainval * train_frac / (train_frac + val_frac) + 1e-9))
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    shuffled = [items[i] for i in order]
    return shuffled[:n_train], shuffled[n_train:trainval], shuffled[trainval:]


def shuffle_order(seed: int, issue_id: str) -> tuple[str, str, str]:
    """Deterministic L/C/R permutation keyed on ``(seed, issue_id)``."""
    digest = hashlib.sha256(f"{seed}\x1f{issue_id}".encode("utf-8")).digest()
    return PERMUTATIONS[int.from_bytes(digest[:8], "big") % len(PERMUTATIONS)]


def _block(title: str, article: str) -> str:
    return f"{TITLE_MARK}{title}. {ARTICLE_MARK}{article}"


def format_mtl_input(t: NewsTriplet, order=SIDES) -> str:
    order = tuple(order)
    if sorted(order) != sorted(SIDES):
        raise ValueError(f"order must be a permutation of {SIDES}, got {order}")
    return SEP.join(_block(t.source(s).title, t.source(s).article) + "." for s in order)


def format_mtl_target(t: NewsTriplet) -> str:
    return _block(t.neutral_title, t.neutral_article)


def _parse_block(block: str) -> tuple[str, str]:
    if not block.startswith(TITLE_MARK):
        raise ValueError(f"block does not start with {TITLE_MARK!r}")
    body = block[len(TITLE_MARK):]
    title, sep, article = body.partition(". " + ARTICLE_MARK)
    if not sep:
        raise ValueError("block has no article marker")
    return title, article


def parse_mtl_input(text: str) -> list[tuple[str, str]]:
    """Inverse of :func:`format_mtl_input`: ``(title, article)`` per source block."""
    pairs = []
    for block in text.split(SEP):
        if not block.endswith("."):
            raise ValueError("source block must end with '.'")
        pairs.append(_parse_block(block[:-1]))
    return pairs


def parse_mtl_target(text: str) -> tuple[str, str]:
    return _parse_block(text)


def all_source_text(t: NewsTriplet, include_titles: bool = False) -> str:
    """Concatenate the L/C/R articles (optionally with titles) in that order."""
    parts = []
    for side in SIDES:
        src = t.source(side)
        if include_titles:
            parts.append(src.title)
        parts.append(src.article)
    return " ".join(parts)
