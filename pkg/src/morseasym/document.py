"""Complex documents: a JSON text with ``lattice_rank``, ``ranks`` and
``boundaries``; each matrix entry is a list of ``[coefficient, exponents]``
terms or a polynomial string.

The canonical form puts one matrix row per line with sorted terms, so two
equal complexes always serialize to the same bytes.
"""
from __future__ import annotations

import json

from .complex import FreeComplex, make_complex
from .errors import MorseError, PolySyntaxError
from .laurent import LaurentPoly
from .matrix import PolyMatrix
from .parsing import parse_poly


class DocumentError(MorseError, ValueError):
    """Malformed document; ``line``/``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None, where=None):
        self.line, self.column, self.where = line, column, where
        loc = []
        if line is not None:
            loc.append(f"line {line} column {column}")
        if where:
            loc.append(where)
        super().__init__(f"{message} ({', '.join(loc)})" if loc else message)


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def _entry(x, m, where) -> LaurentPoly:
    if _is_int(x):
        return LaurentPoly.constant(x, m)
    if isinstance(x, str):
        try:
            return parse_poly(x, m)
        except PolySyntaxError as exc:
            raise DocumentError(f"bad polynomial {x!r}: {exc}", where=where) from None
    if not isinstance(x, list):
        raise DocumentError("entry must be a term list, an integer or a string", where=where)
    terms = {}
    for n, term in enumerate(x):
        ok = (isinstance(term, list) and len(term) == 2 and _is_int(term[0])
              and isinstance(term[1], list) and len(term[1]) == m
              and all(_is_int(e) for e in term[1]))
        if not ok:
            raise DocumentError(
                f"term must be [coefficient, exponent vector of length {m}]",
                where=f"{where}[{n}]")
        key = tuple(term[1])
        terms[key] = terms.get(key, 0) + term[0]
    return LaurentPoly(terms, m)


def loads(text: str) -> FreeComplex:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"parse error: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be an object")
    missing = [k for k in ("lattice_rank", "ranks", "boundaries") if k not in doc]
    if missing:
        raise DocumentError(f"missing field(s): {', '.join(missing)}")
    m, ranks, bds = doc["lattice_rank"], doc["ranks"], doc["boundaries"]
    if not _is_int(m) or m < 0:
        raise DocumentError("lattice_rank must be a non-negative integer", where="lattice_rank")
    if not isinstance(ranks, list) or not all(_is_int(r) and r >= 0 for r in ranks):
        raise DocumentError("ranks must be a list of non-negative integers", where="ranks")
    if not isinstance(bds, list):
        raise DocumentError("boundaries must be a list of matrices", where="boundaries")
    mats = []
    for p, mat in enumerate(bds):
        where = f"boundaries[{p}]"
        if not isinstance(mat, list) or not all(isinstance(r, list) for r in mat):
            raise DocumentError("matrix must be a list of rows", where=where)
        rows = [[_entry(x, m, f"{where}[{i}][{j}]") for j, x in enumerate(row)]
                for i, row in enumerate(mat)]
        if len({len(r) for r in rows}) > 1:
            raise DocumentError("ragged matrix", where=where)
        shape = (len(rows), len(rows[0]) if rows else
                 (ranks[p + 1] if p + 1 < len(ranks) else 0))
        mats.append((rows, shape))
    try:
        return make_complex(m, ranks, [PolyMatrix(r, m, s) for r, s in mats])
    except (ValueError, IndexError) as exc:
        raise DocumentError(str(exc)) from None


def load(path) -> FreeComplex:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _terms(p: LaurentPoly):
    return [[c, list(e)] for e, c in p.items()]


def dumps(C: FreeComplex) -> str:
    """Canonical text: fixed key order, one matrix row per line, trailing newline."""
    out = ["{", f'  "lattice_rank": {C.lattice_rank},',
           f'  "ranks": {json.dumps(list(C.ranks))},']
    if not C.boundaries:
        out.append('  "boundaries": []')
    else:
        out.append('  "boundaries": [')
        for p, d in enumerate(C.boundaries):
            tail = "," if p + 1 < len(C.boundaries) else ""
            if d.rows == 0:
                out.append(f"    []{tail}")
                continue
            out.append("    [")
            for i in range(d.rows):
                row = json.dumps([_terms(d[i, j]) for j in range(d.cols)])
                out.append(f"      {row}{',' if i + 1 < d.rows else ''}")
            out.append(f"    ]{tail}")
        out.append("  ]")
    out.append("}")
    return "\n".join(out) + "\n"
