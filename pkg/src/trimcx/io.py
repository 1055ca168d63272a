"""Plain-text ideal and matrix files.

Ideal file::

    char 32003
    x^2 - 3*y*z
    y^3
    # comments and blank lines are ignored

Matrix file: one row per line, entries separated by commas.
"""

from __future__ import annotations

from pathlib import Path

from .field import make_field
from .ideal import Ideal
from .pfaffian import SkewMatrix, parse_matrix
from .poly import ParseError, parse_poly


class FormatError(ValueError):
    pass


def _content_lines(text: str) -> list:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_ideal(text: str, char: int | None = None) -> Ideal:
    """Parse an ideal file; ``char`` overrides a missing header, and must agree with one present."""
    lines = _content_lines(text)
    file_char = None
    if lines and lines[0].split()[0] == "char":
        parts = lines[0].split()
        if len(parts) != 2 or not parts[1].lstrip("-").isdigit():
            raise FormatError(f"bad header line: {lines[0]!r}")
        file_char = int(parts[1])
        lines = lines[1:]
    if file_char is not None and char is not None and file_char != char:
        raise FormatError(f"file is over char {file_char}, requested char {char}")
    p = file_char if file_char is not None else char
    field = make_field(p if p is not None else 32003)
    if not lines:
        raise FormatError("ideal file has no generators")
    try:
        gens = [parse_poly(line, field) for line in lines]
    except ParseError as exc:
        raise FormatError(str(exc)) from exc
    return Ideal(gens, field)


def format_ideal(I: Ideal, generators=None) -> str:
    gens = I.generators if generators is None else generators
    lines = [f"char {I.field.characteristic}"]
    lines += [str(g) for g in gens]
    return "\n".join(lines) + "\n"


def read_ideal(path, char: int | None = None) -> Ideal:
    return parse_ideal(Path(path).read_text(), char)


def write_ideal(path, I: Ideal, generators=None) -> None:
    Path(path).write_text(format_ideal(I, generators))


def parse_matrix_text(text: str, char: int | None = None) -> SkewMatrix:
    lines = _content_lines(text)
    p = char
    if lines and lines[0].split()[0] == "char":
        p = int(lines[0].split()[1])
        lines = lines[1:]
    field = make_field(p if p is not None else 32003)
    try:
        return parse_matrix(lines, field)
    except ParseError as exc:
        raise FormatError(str(exc)) from exc


def format_matrix(M: SkewMatrix) -> str:
    lines = [f"char {M.field.characteristic}"]
    lines += [", ".join(str(f) for f in row) for row in M.rows]
    return "\n".join(lines) + "\n"
