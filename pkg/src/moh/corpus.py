"""Loading labeled post corpora and cleaning social-media text."""

from __future__ import annotations

import csv
import logging
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional, Sequence

logger = logging.getLogger(__name__)

DEVANAGARI_START = 0x0900
DEVANAGARI_END = 0x097F

_URL_PREFIXES = ("http://", "https://", "www.")
_RUNS = re.compile(r"(.)\1{2,}", re.DOTALL)


class SchemaError(ValueError):
    """Raised when a corpus header does not provide the requested columns."""


@dataclass(frozen=True)
class Post:
    id: str
    text: str
    label: Optional[str] = None


@dataclass(frozen=True)
class CorpusSchema:
    text_column: str = "text"
    label_column: Optional[str] = "label"
    id_column: Optional[str] = "id"
    delimiter: str = ","


@dataclass
class RowError:
    line: int
    message: str


@dataclass
class LoadedCorpus(Sequence[Post]):
    """Posts read from one file together with the load statistics."""

    posts: list[Post]
    rows: int = 0
    dropped_empty: int = 0
    errors: list[RowError] = field(default_factory=list)

    def __getitem__(self, index):
        return self.posts[index]

    def __len__(self) -> int:
        return len(self.posts)

    def __iter__(self) -> Iterator[Post]:
        return iter(self.posts)


def is_devanagari(ch: str) -> bool:
    return DEVANAGARI_START <= ord(ch) <= DEVANAGARI_END


def has_devanagari(text: str) -> bool:
    return any(is_devanagari(ch) for ch in text)


def is_latin_letter(ch: str) -> bool:
    if not ch.isalpha():
        return False
    if ch.isascii():
        return True
    return unicodedata.name(ch, "").startswith("LATIN")


def _keep(ch: str) -> bool:
    if ch == "'" or ("0" <= ch <= "9") or is_devanagari(ch):
        return True
    return is_latin_letter(ch) and not ch.isupper()


def _is_link_or_mention(token: str) -> bool:
    return token.startswith("@") or token.startswith(_URL_PREFIXES)


def clean_text(raw: str) -> str:
    """Normalize one post.

    Lowercases, drops URL and @-mention tokens, replaces every character
    other than Latin/Devanagari letters, digits and apostrophes with a space,
    truncates character runs to length two and collapses whitespace.

    >>> clean_text("Today I am so happyyy")
    'today i am so happyy'
    """
    text = unicodedata.normalize("NFC", raw).lower()
    text = unicodedata.normalize("NFC", text)
    tokens = [tok for tok in text.split() if not _is_link_or_mention(tok)]
    text = " ".join(tokens)
    text = "".join(ch if _keep(ch) else " " for ch in text)
    text = _RUNS.sub(r"\1\1", text)
    return " ".join(text.split())


def load_posts(path: str | Path, schema: CorpusSchema = CorpusSchema()) -> LoadedCorpus:
    """Read a delimited file with a header row into posts.

    Rows whose text is empty are dropped and counted. Rows with the wrong
    number of fields are recorded as errors and skipped.
    """
    path = Path(path)
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter=schema.delimiter)
        try:
            header = next(reader)
        except StopIteration:
            logger.warning("%s: empty file", path)
            return LoadedCorpus(posts=[])
        columns = {name.strip(): i for i, name in enumerate(header)}
        for wanted in (schema.text_column, schema.label_column, schema.id_column):
            if wanted is not None and wanted not in columns:
                raise SchemaError(f"{path}: column {wanted!r} not in header {header}")

        text_i = columns[schema.text_column]
        label_i = columns.get(schema.label_column) if schema.label_column else None
        id_i = columns.get(schema.id_column) if schema.id_column else None

        result = LoadedCorpus(posts=[])
        for row in reader:
            line = reader.line_num
            if not row:
                continue
            result.rows += 1
            if len(row) != len(header):
                result.errors.append(
                    RowError(line, f"expected {len(header)} fields, got {len(row)}")
                )
                logger.warning("%s:%d: malformed row skipped", path, line)
                continue
            text = unicodedata.normalize("NFC", row[text_i])
            if not text.strip():
                result.dropped_empty += 1
                continue
            post_id = row[id_i] if id_i is not None else str(result.rows - 1)
            label = row[label_i] if label_i is not None else None
            result.posts.append(Post(post_id, text, label))

    logger.info(
        "%s: %d rows, %d posts, %d empty dropped, %d malformed",
        path, result.rows, len(result.posts), result.dropped_empty, len(result.errors),
    )
    return result


def clean_posts(posts: Sequence[Post]) -> list[Post]:
    """Clean every post, dropping those left empty."""
    out = []
    for post in posts:
        text = clean_text(post.text)
        if text:
            out.append(Post(post.id, text, post.label))
    return out


def write_posts(posts: Sequence[Post], path: str | Path, schema: CorpusSchema = CorpusSchema()) -> None:
    header = [schema.id_column or "id", schema.text_column]
    with_labels = schema.label_column is not None
    if with_labels:
        header.append(schema.label_column)
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter=schema.delimiter, lineterminator="\n")
        writer.writerow(header)
        for post in posts:
            row = [post.id, post.text]
            if with_labels:
                row.append(post.label if post.label is not None else "")
            writer.writerow(row)
