"""Valence-Arousal-Dominance lexicon loading and lookup.

The on-disk format is the one the NRC-VAD distribution uses: UTF-8,
tab-separated ``term, valence, arousal, dominance`` rows with an optional
header line. Scores must already be on the [0, 1] scale.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType

from .exceptions import LexiconParseError
from .textproc import TokenSequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VadEntry:
    term: str
    valence: float
    arousal: float
    dominance: float

    def __post_init__(self):
        if not self.term or any(ch.isspace() for ch in self.term):
            raise ValueError(f"invalid lexicon term {self.term!r}")
        if self.term != self.term.casefold():
            raise ValueError(f"lexicon term {self.term!r} is not case-folded")
        for name in ("valence", "arousal", "dominance"):
            value = getattr(self, name)
            if not (0.0 <= value <= 1.0):
                raise ValueError(f"{name} of {self.term!r} outside [0, 1]: {value}")


@dataclass(frozen=True)
class VadLexicon:
    """Immutable term -> :class:`VadEntry` map.

    ``duplicate_count`` and ``multiword_dropped`` record what happened at load
    time; ``version`` is free text naming the lexicon release.
    """

    entries: Mapping[str, VadEntry]
    source_name: str = ""
    version: str | None = None
    duplicate_count: int = 0
    multiword_dropped: int = 0

    def __post_init__(self):
        if not isinstance(self.entries, MappingProxyType):
            object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def __reduce__(self):
        return (type(self), (dict(self.entries), self.source_name, self.version,
                             self.duplicate_count, self.multiword_dropped))

    def __deepcopy__(self, memo):
        return self

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, token) -> bool:
        return self.get(token) is not None

    def __iter__(self):
        return iter(self.entries)

    def get(self, token) -> VadEntry | None:
        if not isinstance(token, str) or not token:
            return None
        return self.entries.get(token.casefold())

    @classmethod
    def from_entries(cls, entries: Iterable[VadEntry], source_name: str = "<memory>",
                     version: str | None = None) -> "VadLexicon":
        table: dict[str, VadEntry] = {}
        dupes = 0
        for entry in entries:
            if entry.term in table:
                dupes += 1
            table[entry.term] = entry
        return cls(table, source_name, version, dupes, 0)

    @classmethod
    def from_dict(cls, scores: Mapping[str, tuple], source_name: str = "<memory>") -> "VadLexicon":
        """Build from ``{term: (valence, arousal[, dominance])}``; dominance defaults to 0.5."""
        entries = []
        for term, vals in scores.items():
            v, a, *rest = vals
            d = rest[0] if rest else 0.5
            entries.append(VadEntry(term.casefold(), float(v), float(a), float(d)))
        return cls.from_entries(entries, source_name)


def _parse_score(raw: str, column: str, lineno: int, path: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise LexiconParseError(f"non-numeric {column} {raw!r}", lineno, path) from None
    if math.isnan(value) or not (0.0 <= value <= 1.0):
        raise LexiconParseError(f"{column} {raw!r} outside [0, 1]", lineno, path)
    return value


def _is_number(raw: str) -> bool:
    try:
        float(raw)
    except ValueError:
        return False
    return True


def load_lexicon(path, format: str = "tsv", version: str | None = None) -> VadLexicon:
    """Read a VAD lexicon file.

    The first row is treated as a header when its valence column is not
    numeric. Multi-word terms are dropped; duplicate terms keep the last row.

    Raises:
        OSError: the file cannot be read.
        LexiconParseError: a row has fewer than four columns, or a score that
            is non-numeric or outside [0, 1].
    """
    if format != "tsv":
        raise ValueError(f"unsupported lexicon format {format!r}; only 'tsv' is supported")
    path = Path(path)
    spath = str(path)
    table: dict[str, VadEntry] = {}
    dupes = multiword = 0
    with path.open(encoding="utf-8") as fh:
        first = True
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip():
                first = False
                continue
            cols = line.split("\t")
            if first:
                first = False
                if len(cols) >= 2 and not _is_number(cols[1].strip()):
                    continue
            if len(cols) < 4:
                raise LexiconParseError(f"expected 4 tab-separated columns, got {len(cols)}", lineno, spath)
            raw_term = cols[0].strip()
            if not raw_term:
                raise LexiconParseError("empty term", lineno, spath)
            v = _parse_score(cols[1].strip(), "valence", lineno, spath)
            a = _parse_score(cols[2].strip(), "arousal", lineno, spath)
            d = _parse_score(cols[3].strip(), "dominance", lineno, spath)
            if len(raw_term.split()) > 1:
                multiword += 1
                continue
            term = raw_term.casefold()
            if term in table:
                dupes += 1
            table[term] = VadEntry(term, v, a, d)
    if dupes:
        logger.warning("%s: %d duplicate term rows (last row kept)", spath, dupes)
    if multiword:
        logger.info("%s: dropped %d multi-word terms", spath, multiword)
    return VadLexicon(table, path.name, version, dupes, multiword)


def dump_lexicon(lexicon: VadLexicon, path) -> None:
    """Write ``lexicon`` as TSV with a header; floats use ``repr`` so reloads are exact."""
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("term\tvalence\tarousal\tdominance\n")
        for term in sorted(lexicon.entries):
            e = lexicon.entries[term]
            fh.write(f"{e.term}\t{e.valence!r}\t{e.arousal!r}\t{e.dominance!r}\n")


def lookup(lexicon: VadLexicon, token: str) -> VadEntry | None:
    return lexicon.get(token)


def coverage(lexicon: VadLexicon, tokens) -> float:
    """Fraction of token occurrences found in ``lexicon`` (0.0 for no tokens)."""
    if isinstance(tokens, TokenSequence):
        tokens = tokens.tokens
    tokens = list(tokens)
    if not tokens:
        return 0.0
    hits = sum(1 for t in tokens if lexicon.get(t) is not None)
    return hits / len(tokens)
