"""Readers for the line-oriented input files.

Blank lines and ``#`` comments are ignored everywhere. Point lists are
non-negative integers separated by spaces or commas, optionally wrapped in
braces; ``{}`` is the empty list.
"""

import re
from pathlib import Path

import numpy as np

from .algebra import PowerSetAlgebra, SetAlgebra, validate_algebra
from .errors import InputError
from .terms import TermAlgebra, parse_relation, presentation
from .topology import TopSpace

ALGEBRA_GRAMMAR = (
    "algebra file: 'powerset <n>' | 'table <k>' + k join rows + k meet rows + complement row"
    " | 'terms' + generator line + 'rel <term> = <term>' lines"
)
SPACE_GRAMMAR = "space file: 'space <n>' or 'basis <n>', then one point list per line ('{}' for empty)"
SUBALGEBRA_GRAMMAR = "sub-algebra file: 'subalgebra <n>', then one generator point list per line"
MAP_GRAMMAR = "map file: one 'x y' line per point x of the domain"


def _lines(text):
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _read(path):
    p = Path(path)
    try:
        return p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc.strerror}") from None


def _header(lines, grammar, *keywords):
    if not lines:
        raise InputError(f"empty file; {grammar}")
    no, line = lines[0]
    parts = line.split()
    if parts[0] not in keywords:
        raise InputError(f"line {no}: unknown header {parts[0]!r}; {grammar}")
    return parts


def _count(parts, no, grammar):
    if len(parts) != 2 or not parts[1].isdigit():
        raise InputError(f"line {no}: header needs one non-negative count; {grammar}")
    return int(parts[1])


def _ints(line, no):
    body = line.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    toks = [t for t in re.split(r"[\s,]+", body) if t]
    if not all(t.isdigit() for t in toks):
        raise InputError(f"line {no}: expected integers, got {line!r}")
    return [int(t) for t in toks]


def _point_mask(line, no, n):
    mask = 0
    for p in _ints(line, no):
        if p >= n:
            raise InputError(f"line {no}: point {p} outside 0..{n - 1}")
        mask |= 1 << p
    return mask


def parse_algebra(text):
    """Algebra from the text of an algebra file."""
    lines = _lines(text)
    parts = _header(lines, ALGEBRA_GRAMMAR, "powerset", "table", "terms")
    no = lines[0][0]
    kind = parts[0]
    if kind == "powerset":
        n = _count(parts, no, ALGEBRA_GRAMMAR)
        if len(lines) > 1:
            raise InputError(f"line {lines[1][0]}: unexpected content after powerset header")
        return PowerSetAlgebra(range(n))
    if kind == "table":
        k = _count(parts, no, ALGEBRA_GRAMMAR)
        rows = lines[1:]
        if len(rows) != 2 * k + 1:
            raise InputError(f"table {k} needs {2 * k + 1} rows after the header, found {len(rows)}")
        vals = []
        for rno, line in rows:
            row = _ints(line, rno)
            if len(row) != k:
                raise InputError(f"line {rno}: expected {k} entries, found {len(row)}")
            vals.append(row)
        J = np.array(vals[:k])
        M = np.array(vals[k : 2 * k])
        C = np.array(vals[2 * k])
        return validate_algebra(J, M, C)
    if len(parts) != 1:
        raise InputError(f"line {no}: 'terms' takes no arguments")
    if len(lines) < 2:
        raise InputError(f"terms file needs a generator line; {ALGEBRA_GRAMMAR}")
    gno, gline = lines[1]
    gens = [g for g in re.split(r"[\s,]+", gline) if g]
    rels = []
    for rno, line in lines[2:]:
        if not line.startswith("rel ") and line != "rel":
            raise InputError(f"line {rno}: expected 'rel <term> = <term>'")
        rels.append(parse_relation(line[3:].strip(), gens))
    return TermAlgebra(presentation(gens, rels))


def read_algebra(path):
    return parse_algebra(_read(path))


def parse_space(text):
    lines = _lines(text)
    parts = _header(lines, SPACE_GRAMMAR, "space", "basis")
    n = _count(parts, lines[0][0], SPACE_GRAMMAR)
    sets = [_point_mask(line, no, n) for no, line in lines[1:]]
    if parts[0] == "space":
        return TopSpace(n, sets)
    return TopSpace.from_basis(n, sets)


def read_space(path):
    return parse_space(_read(path))


def parse_subalgebra(text):
    lines = _lines(text)
    parts = _header(lines, SUBALGEBRA_GRAMMAR, "subalgebra")
    n = _count(parts, lines[0][0], SUBALGEBRA_GRAMMAR)
    gens = [_point_mask(line, no, n) for no, line in lines[1:]]
    return SetAlgebra.from_generators(list(range(n)), gens)


def read_subalgebra(path):
    return parse_subalgebra(_read(path))


def parse_map(text, n_source, n_target):
    """Point map as a list indexed by source point."""
    f = [None] * n_source
    for no, line in _lines(text):
        vals = _ints(line, no)
        if len(vals) != 2:
            raise InputError(f"line {no}: {MAP_GRAMMAR}")
        x, y = vals
        if x >= n_source or y >= n_target:
            raise InputError(f"line {no}: point out of range")
        if f[x] is not None:
            raise InputError(f"line {no}: point {x} mapped twice")
        f[x] = y
    missing = [x for x, y in enumerate(f) if y is None]
    if missing:
        raise InputError(f"map leaves point {missing[0]} unmapped")
    return f


def read_map(path, n_source, n_target):
    return parse_map(_read(path), n_source, n_target)
