"""Matrix files and JSON report envelopes.

Matrix file layout::

    q r n
    # optional comment lines, kept as metadata
    r rows of n whitespace-separated integers in [0, q)
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .field import FieldError, make_field
from .matroid import MatroidRep


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class MatrixFile:
    matroid: MatroidRep
    comments: tuple[str, ...] = field(default=())

    @property
    def loose_element(self) -> int | None:
        for c in self.comments:
            parts = c.split()
            if len(parts) == 2 and parts[0] == "loose-element":
                return int(parts[1])
        return None


def format_matrix(M: MatroidRep, comments=()) -> str:
    lines = [f"{M.field.q} {M.r_rows} {M.n}"]
    lines += [f"# {c}" for c in comments]
    lines += [" ".join(str(int(x)) for x in row) for row in M.entries]
    return "\n".join(lines) + "\n"


def _column_of(raw: str, token_index: int) -> int:
    pos = 0
    for i, tok in enumerate(raw.split()):
        pos = raw.index(tok, pos)
        if i == token_index:
            return pos + 1
        pos += len(tok)
    return len(raw) + 1


def _ints(raw: str, lineno: int) -> list[int]:
    out = []
    for i, tok in enumerate(raw.split()):
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", lineno, _column_of(raw, i)) from None
    return out


def parse_matrix(text: str) -> MatrixFile:
    comments: list[str] = []
    header = None
    rows: list[list[int]] = []
    q = r = n = 0
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            comments.append(stripped[1:].strip())
            continue
        if not stripped:
            continue
        vals = _ints(raw, lineno)
        if header is None:
            if len(vals) != 3:
                raise ParseError(f"header must be 'q r n', got {len(vals)} values", lineno)
            header = vals
            q, r, n = vals
            try:
                F = make_field(q)
            except FieldError as exc:
                raise ParseError(str(exc), lineno) from None
            if r < 0 or n < 0:
                raise ParseError("dimensions must be non-negative", lineno)
            continue
        if len(rows) == r:
            raise ParseError(f"more than {r} matrix rows", lineno)
        if len(vals) != n:
            raise ParseError(f"row has {len(vals)} entries, expected {n}", lineno)
        for i, v in enumerate(vals):
            if not 0 <= v < q:
                raise ParseError(f"entry {v} outside [0, {q})", lineno, _column_of(raw, i))
        rows.append(vals)
    if header is None:
        raise ParseError("missing 'q r n' header", max(lineno, 1))
    if len(rows) != r and n > 0:
        raise ParseError(f"expected {r} matrix rows, found {len(rows)}", lineno + 1)
    entries = np.zeros((r, n), dtype=np.int64)
    if rows and n:
        entries[:] = rows
    return MatrixFile(MatroidRep(F, entries), tuple(comments))


def read_matrix(path) -> MatrixFile:
    return parse_matrix(Path(path).read_text())


def write_matrix(path, M: MatroidRep, comments=()) -> None:
    Path(path).write_text(format_matrix(M, comments))


def envelope(command: str, results: list, M: MatroidRep | None = None, seed: int | None = None) -> dict:
    doc = {
        "tool_version": __version__,
        "command": command,
        "field": M.field.as_dict() if M is not None else None,
        "matroid": {"rank": M.rank, "n": M.n} if M is not None else None,
        "results": results,
    }
    if seed is not None:
        doc["seed"] = seed
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
