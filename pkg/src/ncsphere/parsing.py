"""Ingestion of deformation matrices from files, stdin, and inline text.

Entries travel as strings (or bare integers) so rationals survive
exactly; floats are refused rather than rounded.  All diagnostics name
the first violated rule, since the CLI forwards them verbatim.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .errors import InvalidMatrixError
from .theta import SkewRationalMatrix

__all__ = [
    "parse_rational",
    "matrix_from_entry_grid",
    "matrix_from_inline",
    "payload_from_json_text",
]

VALID_KINDS = ("sphere", "torus")


def parse_rational(value: object) -> Fraction:
    """One exact rational from a string like '-3/7' or a bare integer."""
    if isinstance(value, bool):
        raise InvalidMatrixError(f"malformed rational {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InvalidMatrixError(
            f"float {value!r} rejected: entries must be exact rational strings"
        )
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidMatrixError(f"malformed rational {value!r}") from exc
    raise InvalidMatrixError(f"malformed rational {value!r}")


def matrix_from_entry_grid(
    entries: Sequence[Sequence[object]], n: int | None = None
) -> SkewRationalMatrix:
    """Validate a grid of entry tokens into a SkewRationalMatrix."""
    if n is not None and len(entries) != n:
        raise InvalidMatrixError(
            f"declared dimension {n} but {len(entries)} rows supplied"
        )
    parsed = [[parse_rational(x) for x in row] for row in entries]
    return SkewRationalMatrix(parsed)


def matrix_from_inline(text: str) -> SkewRationalMatrix:
    """Inline shorthand: rows split on ';', entries on ','."""
    rows = [chunk for chunk in text.split(";") if chunk.strip()]
    if not rows:
        raise InvalidMatrixError("inline matrix is empty")
    grid = [[cell.strip() for cell in row.split(",")] for row in rows]
    return matrix_from_entry_grid(grid)


def payload_from_json_text(text: str) -> dict:
    """Parse and shape-check a structured matrix payload.

    Returns a plain dict with keys entries, n, n_tensor, kind; the matrix
    itself is built separately so the service and the CLI share the same
    checks.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidMatrixError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise InvalidMatrixError("top-level JSON value must be an object")
    if "entries" not in obj:
        raise InvalidMatrixError("missing required field 'entries'")
    entries = obj["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise InvalidMatrixError("'entries' must be an array of arrays")
    n = obj.get("n")
    if n is not None and (isinstance(n, bool) or not isinstance(n, int)):
        raise InvalidMatrixError("'n' must be an integer")
    n_tensor = obj.get("n_tensor", 1)
    if isinstance(n_tensor, bool) or not isinstance(n_tensor, int) or n_tensor < 1:
        raise InvalidMatrixError("'n_tensor' must be a positive integer")
    kind = obj.get("kind", "sphere")
    if kind not in VALID_KINDS:
        raise InvalidMatrixError(f"'kind' must be one of {VALID_KINDS}")
    return {"entries": entries, "n": n, "n_tensor": n_tensor, "kind": kind}
