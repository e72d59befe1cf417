"""Reading and writing instances.

Two instance formats are supported:

* canonical JSON (``"format": "ppcp-instance"``), the authoritative one,
  which round-trips every field;
* a line-based text format for hand-written instances. It keeps the
  structure, lengths, ``p`` and a leading-comment name, but not labels or
  coordinates::

      # comment
      ppcp <n> <m> [p]
      <u> <v> <length>        (m lines; length as an integer or num/den)

Grid embeddings have their own JSON document (``"format": "ppcp-embedding"``).
The grammar of all three is in ``docs/formats.md``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .graph import GraphError, WeightedGraph, format_length
from .reduction.embedding import EmbeddingError, GridEmbedding

FORMAT = "ppcp-instance"
EMBEDDING_FORMAT = "ppcp-embedding"
VERSION = 1

_LENGTH = re.compile(r"^(\d+)(?:/(\d+))?$")


class ParseError(ValueError):
    """Malformed input. ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class UnsupportedFeatureError(ParseError):
    """Well-formed input asking for something this library does not model."""


@dataclass(frozen=True, eq=False)
class InstanceDocument:
    graph: WeightedGraph
    p: int | None = None

    @property
    def name(self) -> str | None:
        return self.graph.name

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InstanceDocument):
            return NotImplemented
        return (self.graph, self.graph.name, self.p) == (other.graph, other.graph.name, other.p)


def parse_length(text: str, line: int | None = None, column: int | None = None) -> Fraction:
    m = _LENGTH.match(text)
    if not m:
        raise ParseError(f"invalid length {text!r} (expected an integer or num/den)", line, column)
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}", line, column)
    value = Fraction(num, den)
    if value <= 0:
        raise ParseError(f"edge lengths must be positive, got {text!r}", line, column)
    return value


# JSON -----------------------------------------------------------------------


def _enc(x: Any) -> str:
    return json.dumps(x, ensure_ascii=False)


def serialize_json(doc: InstanceDocument) -> str:
    """Canonical JSON: fixed key order, one edge per line, lengths as ``num/den``."""
    g = doc.graph
    lines = ["{", f'  "format": "{FORMAT}",', f'  "version": {VERSION},']
    lines.append(f'  "name": {_enc(g.name)},')
    lines.append(f'  "n": {g.n},')
    if doc.p is not None:
        lines.append(f'  "p": {doc.p},')
    lines.append('  "scenario_probabilities": "uniform",')
    if g.labels is not None:
        lines.append(f'  "labels": {_enc(list(g.labels))},')
    if g.coords is not None:
        lines.append(f'  "coords": {_enc([list(c) for c in g.coords])},')
    edge_lines = [f'    [{u}, {v}, "{format_length(l)}"]' for (u, v), l in g.edges.items()]
    if edge_lines:
        lines.append('  "edges": [')
        lines.append(",\n".join(edge_lines))
        lines.append("  ]")
    else:
        lines.append('  "edges": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _need(obj: dict, key: str, kind: type | tuple[type, ...], where: str = "") -> Any:
    if key not in obj:
        raise ParseError(f"missing field {where}{key!r}")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ParseError(f"field {where}{key!r} has the wrong type")
    return value


def _int_list(value: Any, size: int, what: str) -> list[int]:
    if (
        not isinstance(value, list)
        or len(value) != size
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in value)
    ):
        raise ParseError(f"{what} must be a list of {size} integers")
    return value


def parse_json(text: str) -> InstanceDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object", 1, 1)
    if obj.get("format") != FORMAT:
        raise ParseError(f"format must be {FORMAT!r}")
    if obj.get("version") != VERSION:
        raise UnsupportedFeatureError(f"unsupported version {obj.get('version')!r}")
    probs = obj.get("scenario_probabilities", "uniform")
    if probs != "uniform":
        raise UnsupportedFeatureError("only uniform scenario probabilities are supported")
    known = {"format", "version", "name", "n", "p", "scenario_probabilities", "labels", "coords", "edges"}
    extra = sorted(set(obj) - known)
    if extra:
        raise ParseError(f"unknown fields {extra}")
    n = _need(obj, "n", int)
    if n < 0:
        raise ParseError("n must be nonnegative")
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("name must be a string or null")
    p = obj.get("p")
    if p is not None and (not isinstance(p, int) or isinstance(p, bool) or p < 0):
        raise ParseError("p must be a nonnegative integer")
    labels = obj.get("labels")
    if labels is not None and (not isinstance(labels, list) or not all(isinstance(x, str) for x in labels)):
        raise ParseError("labels must be a list of strings")
    coords = obj.get("coords")
    if coords is not None:
        if not isinstance(coords, list):
            raise ParseError("coords must be a list")
        coords = [tuple(_int_list(c, 2, f"coords[{i}]")) for i, c in enumerate(coords)]
    items = []
    raw_edges = _need(obj, "edges", list)
    for i, e in enumerate(raw_edges):
        if not (isinstance(e, list) and len(e) == 3 and isinstance(e[2], str)):
            raise ParseError(f"edges[{i}] must be [u, v, \"num/den\"]")
        u, v = _int_list(e[:2], 2, f"edges[{i}] endpoints")
        items.append((u, v, parse_length(e[2])))
    try:
        g = WeightedGraph.from_edges(n, items, name=name, coords=coords, labels=labels)
    except GraphError as exc:
        raise ParseError(str(exc)) from None
    return InstanceDocument(g, p)


# Text -----------------------------------------------------------------------


def serialize_text(doc: InstanceDocument) -> str:
    g = doc.graph
    out = []
    if g.name:
        out.append(f"# {g.name}")
    header = f"ppcp {g.n} {g.m}" + (f" {doc.p}" if doc.p is not None else "")
    out.append(header)
    out.extend(f"{u} {v} {format_length(l)}" for (u, v), l in g.edges.items())
    return "\n".join(out) + "\n"


def parse_text(text: str, name: str | None = None) -> InstanceDocument:
    header = None
    items = []
    seen: dict[tuple[int, int], int] = {}
    expected = 0
    first_comment = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            if first_comment is None and raw.strip().startswith("#"):
                first_comment = raw.strip()[1:].strip() or None
            continue
        tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", body)]
        if header is None:
            if tokens[0][0] != "ppcp":
                raise ParseError("expected header 'ppcp <n> <m> [p]'", lineno, tokens[0][1])
            if len(tokens) not in (3, 4):
                raise ParseError("header takes n, m and an optional p", lineno, tokens[0][1])
            nums = []
            for tok, col in tokens[1:]:
                if not tok.isdigit():
                    raise ParseError(f"expected a nonnegative integer, got {tok!r}", lineno, col)
                nums.append(int(tok))
            header = nums
            expected = nums[1]
            continue
        if len(tokens) != 3:
            raise ParseError("edge lines are 'u v length'", lineno, tokens[0][1])
        ends = []
        for tok, col in tokens[:2]:
            if not tok.isdigit():
                raise ParseError(f"expected a vertex id, got {tok!r}", lineno, col)
            v = int(tok)
            if v >= header[0]:
                raise ParseError(f"vertex {v} out of range [0, {header[0]})", lineno, col)
            ends.append(v)
        u, v = ends
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno, tokens[0][1])
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key} (first on line {seen[key]})", lineno, tokens[0][1])
        seen[key] = lineno
        items.append((u, v, parse_length(tokens[2][0], lineno, tokens[2][1])))
    if header is None:
        raise ParseError("missing header 'ppcp <n> <m> [p]'", 1, 1)
    if len(items) != expected:
        raise ParseError(f"header announces {expected} edges, found {len(items)}")
    g = WeightedGraph.from_edges(header[0], items, name=name or first_comment)
    return InstanceDocument(g, header[2] if len(header) == 3 else None)


# Dispatch -------------------------------------------------------------------


def parse(text: str) -> InstanceDocument:
    """Parse either format (JSON when the first non-blank character is ``{``)."""
    return parse_json(text) if text.lstrip().startswith("{") else parse_text(text)


def serialize(doc: InstanceDocument, fmt: str = "json") -> str:
    if fmt == "json":
        return serialize_json(doc)
    if fmt == "text":
        return serialize_text(doc)
    raise ValueError(f"unknown format {fmt!r}")


def load(path: str | Path) -> InstanceDocument:
    return parse(Path(path).read_text(encoding="utf-8"))


def dump(doc: InstanceDocument, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    if fmt is None:
        fmt = "text" if path.suffix in (".txt", ".ppcp") else "json"
    path.write_text(serialize(doc, fmt), encoding="utf-8")


# Embeddings -----------------------------------------------------------------


def serialize_embedding(emb: GridEmbedding) -> str:
    g = emb.graph
    doc = {
        "format": EMBEDDING_FORMAT,
        "version": VERSION,
        "name": g.name,
        "n": g.n,
        "labels": list(g.labels) if g.labels is not None else None,
        "dims": list(emb.dims),
        "coords": [list(c) for c in emb.coords],
        "paths": [[u, v, [list(c) for c in seq]] for (u, v), seq in emb.paths.items()],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_embedding(text: str) -> GridEmbedding:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or obj.get("format") != EMBEDDING_FORMAT:
        raise ParseError(f"format must be {EMBEDDING_FORMAT!r}")
    if obj.get("version") != VERSION:
        raise UnsupportedFeatureError(f"unsupported version {obj.get('version')!r}")
    n = _need(obj, "n", int)
    dims = _int_list(obj.get("dims"), 2, "dims")
    coords_raw = _need(obj, "coords", list)
    coords = [tuple(_int_list(c, 2, f"coords[{i}]")) for i, c in enumerate(coords_raw)]
    paths = {}
    for i, item in enumerate(_need(obj, "paths", list)):
        if not (isinstance(item, list) and len(item) == 3 and isinstance(item[2], list)):
            raise ParseError(f"paths[{i}] must be [u, v, [[r, c], ...]]")
        u, v = _int_list(item[:2], 2, f"paths[{i}] endpoints")
        paths[(u, v)] = [tuple(_int_list(c, 2, f"paths[{i}] cell")) for c in item[2]]
    labels = obj.get("labels")
    try:
        g = WeightedGraph.from_edges(n, list(paths), name=obj.get("name"), labels=labels)
        return GridEmbedding(g, tuple(dims), coords, paths)
    except (GraphError, EmbeddingError) as exc:
        raise ParseError(str(exc)) from None


def load_embedding(path: str | Path) -> GridEmbedding:
    return parse_embedding(Path(path).read_text(encoding="utf-8"))
