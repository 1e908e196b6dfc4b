"""Plain-text algebra files.

::

    # Example: the 2-element chain
    elements: 0 1
    top: 1
    meet:
      0 0
      0 1
    sim:
      1 0
      0 1
    bsim:
      1 0
      0 1

Row i, column j of a table holds T(element i, element j).  ``#`` starts a
comment that runs to the end of the line.
"""
from __future__ import annotations

from .core import FiniteEqAlgebra
from .errors import StructureError

TABLES = ("meet", "sim", "bsim")


class AlgebraFileError(StructureError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokens(line: str) -> list[tuple[int, str]]:
    """(1-based column, token) pairs of a comment-stripped line."""
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((i + 1, line[i:j]))
        i = j
    return out


def parse_algebra(text: str) -> FiniteEqAlgebra:
    """Build the tables exactly as written; axioms are not checked here."""
    names: list[str] | None = None
    top: str | None = None
    top_pos = (0, 0)
    tables: dict[str, list[list[int]]] = {}
    current: str | None = None
    block_start = 0
    index: dict[str, int] = {}

    def finish_block(lineno):
        if current is not None and len(tables[current]) != len(names):
            raise AlgebraFileError(
                f"'{current}:' block has {len(tables[current])} rows, expected {len(names)}",
                lineno if lineno else block_start)

    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        col, first = toks[0]
        if first.endswith(":"):
            key = first[:-1]
            rest = toks[1:]
            if current is not None:
                finish_block(block_start)
                current = None
            if key == "elements":
                if names is not None:
                    raise AlgebraFileError("duplicate 'elements:' line", lineno, col)
                if not rest:
                    raise AlgebraFileError("'elements:' needs at least one name", lineno, col)
                names = []
                for c, tok in rest:
                    if tok in index:
                        raise AlgebraFileError(f"duplicate element name {tok!r}", lineno, c)
                    index[tok] = len(names)
                    names.append(tok)
            elif key == "top":
                if top is not None:
                    raise AlgebraFileError("duplicate 'top:' line", lineno, col)
                if len(rest) != 1:
                    raise AlgebraFileError("'top:' needs exactly one name", lineno, col)
                top_pos = (lineno, rest[0][0])
                top = rest[0][1]
            elif key in TABLES:
                if names is None:
                    raise AlgebraFileError(f"'{key}:' block before 'elements:'", lineno, col)
                if key in tables:
                    raise AlgebraFileError(f"duplicate '{key}:' block", lineno, col)
                if rest:
                    raise AlgebraFileError(f"rows of '{key}:' go on the following lines", lineno, rest[0][0])
                tables[key] = []
                current = key
                block_start = lineno
            else:
                raise AlgebraFileError(f"unknown header {first!r}", lineno, col)
            continue
        if current is None:
            raise AlgebraFileError("table row outside a 'meet:', 'sim:' or 'bsim:' block", lineno, col)
        rows = tables[current]
        if len(rows) == len(names):
            raise AlgebraFileError(f"too many rows in '{current}:' block", lineno, col)
        if len(toks) != len(names):
            # point at the first surplus cell, or just past the last one
            where = toks[len(names)][0] if len(toks) > len(names) else len(line.rstrip()) + 1
            raise AlgebraFileError(
                f"ragged row in '{current}:' block: {len(toks)} cells, expected {len(names)}",
                lineno, where)
        row = []
        for c, tok in toks:
            if tok not in index:
                raise AlgebraFileError(f"unknown element {tok!r}", lineno, c)
            row.append(index[tok])
        rows.append(row)
    end = len(lines) or 1
    if current is not None:
        finish_block(end)
    if names is None:
        raise AlgebraFileError("missing 'elements:' line", end)
    if top is None:
        raise AlgebraFileError("missing 'top:' line", end)
    if top not in index:
        raise AlgebraFileError(f"top {top!r} is not a declared element", *top_pos)
    for key in TABLES:
        if key not in tables:
            raise AlgebraFileError(f"missing '{key}:' block", end)
    return FiniteEqAlgebra(meet=tables["meet"], sim=tables["sim"], bsim=tables["bsim"],
                           top=index[top], names=tuple(names))


def serialize_algebra(alg: FiniteEqAlgebra) -> str:
    names = alg.names
    width = max(len(s) for s in names)
    lines = ["elements: " + " ".join(names), f"top: {names[alg.top]}"]
    for key in TABLES:
        lines.append(f"{key}:")
        for row in getattr(alg, key):
            lines.append("  " + " ".join(names[v].ljust(width) for v in row).rstrip())
    return "\n".join(lines) + "\n"


def read_algebra(path: str) -> FiniteEqAlgebra:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read())
