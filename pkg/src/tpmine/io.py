"""File formats: UCR text input, native MSS documents, pattern listings and
run statistics."""

from __future__ import annotations

import json
import math
import re
from pathlib import Path
from typing import Iterable, TextIO

from .abstraction import RawSeries
from .mining import Dataset, MiningResult
from .model import MSS, interval
from .patterns import pattern_key

MSS_FORMAT = "tpmine-mss"
MSS_VERSION = 1


class ParseError(ValueError):
    """Malformed input file; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, path=None):
        where = f"{path}:" if path else ""
        where += f"{line}: " if line is not None else (" " if where else "")
        super().__init__(f"{where}{message}")
        self.line = line
        self.path = path


class EmptyFileError(ParseError):
    pass


class RaggedRowError(ParseError):
    pass


class NonNumericFieldError(ParseError):
    pass


def _split(line: str, delimiter: str | None) -> list[str]:
    if delimiter is None:
        return [f for f in re.split(r"[,\s]+", line.strip()) if f]
    return [f.strip() for f in line.rstrip("\r\n").split(delimiter)]


def load_ucr(path, delimiter: str | None = None) -> tuple[list[list[RawSeries]], list[str]]:
    """Read a UCR-style file: one record per line, class label first, then
    the samples at ticks ``0 .. T-1``.

    ``delimiter=None`` splits on commas and whitespace.  Labels are kept as
    the literal text of the first field.

    Returns
    -------
    records : list of [RawSeries]
        One single-variable record per row, variable name ``s``.
    labels : list of str
    """
    records, labels = [], []
    width = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = _split(line, delimiter)
            if len(fields) < 2:
                raise RaggedRowError("row needs a label and at least one sample", lineno, path)
            if width is None:
                width = len(fields)
            elif len(fields) != width:
                raise RaggedRowError(f"row has {len(fields)} fields, expected {width}", lineno, path)
            values = []
            for f in fields[1:]:
                try:
                    v = float(f)
                except ValueError:
                    raise NonNumericFieldError(f"non-numeric sample {f!r}", lineno, path) from None
                if not math.isfinite(v):
                    raise NonNumericFieldError(f"non-finite sample {f!r}", lineno, path)
                values.append(v)
            labels.append(fields[0])
            records.append([RawSeries("s", tuple(range(len(values))), tuple(values))])
    if not records:
        raise EmptyFileError("no records found", None, path)
    return records, labels


def mss_document(dataset: Dataset) -> dict:
    return {
        "format": MSS_FORMAT,
        "version": MSS_VERSION,
        "records": [
            {
                "label": label,
                "intervals": [[e.variable, e.symbol.code, e.start, e.end] for e in z],
            }
            for z, label in zip(dataset.records, dataset.labels)
        ],
    }


def dumps_mss(dataset: Dataset) -> str:
    """Serialise to the native MSS format: one record per line inside a JSON
    document, byte-stable for equal datasets."""
    doc = mss_document(dataset)
    recs = ",\n".join("  " + json.dumps(r, separators=(", ", ": ")) for r in doc["records"])
    body = f"\n{recs}\n" if recs else ""
    return f'{{"format": "{MSS_FORMAT}", "version": {MSS_VERSION}, "records": [{body}]}}\n'


def loads_mss(text: str, path=None) -> Dataset:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, path) from None
    if not isinstance(doc, dict) or doc.get("format") != MSS_FORMAT:
        raise ParseError(f"not a {MSS_FORMAT} document", None, path)
    if doc.get("version") != MSS_VERSION:
        raise ParseError(f"unsupported version {doc.get('version')!r}", None, path)
    records, labels = [], []
    for i, rec in enumerate(doc.get("records", [])):
        try:
            ivs = [interval(*e) for e in rec["intervals"]]
            records.append(MSS(ivs))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"record {i}: {exc}", None, path) from None
        labels.append(rec.get("label", 0))
    return Dataset(records, labels)


def load_mss(path) -> Dataset:
    return loads_mss(Path(path).read_text(encoding="utf-8"), path)


def dump_mss(dataset: Dataset, path) -> None:
    Path(path).write_text(dumps_mss(dataset), encoding="utf-8", newline="\n")


def format_patterns(result: MiningResult) -> str:
    """``<key>\\t<class>:<support>,...`` per pattern, sorted by (size, key)."""
    lines = []
    for key, sup in result.canonical():
        lines.append(key + "\t" + ",".join(f"{c}:{s}" for c, s in zip(result.classes, sup)))
    return "".join(line + "\n" for line in lines)


def write_patterns(result: MiningResult, out: str | Path | TextIO) -> None:
    text = format_patterns(result)
    if hasattr(out, "write"):
        out.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def parse_patterns(lines: Iterable[str], path=None) -> list[tuple[str, tuple[tuple[str, int], ...]]]:
    out = []
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line:
            continue
        key, sep, sups = line.partition("\t")
        if not sep:
            raise ParseError("expected <pattern>\\t<supports>", lineno, path)
        pairs = []
        for item in sups.split(","):
            cls, sep, n = item.rpartition(":")
            if not sep or not n.isdigit():
                raise ParseError(f"malformed support {item!r}", lineno, path)
            pairs.append((cls, int(n)))
        out.append((key, tuple(pairs)))
    return out


def read_patterns(path) -> list[tuple[str, tuple[tuple[str, int], ...]]]:
    with open(path, encoding="utf-8") as fh:
        return parse_patterns(fh, path)


def result_summary(result: MiningResult) -> dict:
    """Deterministic part of a result's statistics."""
    return {
        "algorithm": result.algorithm,
        "complete": result.complete,
        "deepest_complete": result.deepest_complete,
        "max_ftp_size": result.max_size,
        "n_ftps": len(result.ftps),
        "memory_bytes": result.memory_bytes,
        "levels": [
            {
                "size": lv.size,
                "candidates": lv.candidates,
                "pruned": lv.pruned,
                "ftps": lv.ftps,
                "memory_bytes": lv.memory_bytes,
            }
            for lv in result.levels
        ],
    }


def result_timing(result: MiningResult) -> dict:
    return {
        "seconds": result.mining_seconds,
        "levels": [{"size": lv.size, "millis": lv.seconds * 1000.0} for lv in result.levels],
    }
