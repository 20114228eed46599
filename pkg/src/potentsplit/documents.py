"""JSON documents exchanged by the command line tool.

Matrix document::

    {"ring": "Z/4", "n": 2, "rows": [[1, 2], [3, 0]]}

Entries are integers for Z/m and prime fields and polynomial strings for
Galois and quotient rings.  Big integers (exponents) are written as decimal
strings.  Documents are dumped with a fixed key order so identical inputs
give byte-identical output.
"""

import json
import re

from .errors import RingSpecError, ShapeMismatch
from .matrices import Matrix
from .rings import parse_ring

__all__ = [
    "MalformedDocument",
    "load_json",
    "dump_json",
    "matrix_from_doc",
    "matrix_to_doc",
    "decomposition_to_doc",
    "decomposition_from_doc",
    "rcf_to_doc",
]


class MalformedDocument(ValueError):
    pass


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedDocument(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


_FLAT_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]")


def dump_json(doc):
    text = json.dumps(doc, indent=2)
    # innermost lists (matrix rows) on one line
    text = _FLAT_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)
    return text + "\n"


def _rows_to_matrix(ring, rows, n=None, what="rows"):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise MalformedDocument(f"{what} must be a list of lists")
    if n is not None and len(rows) != n:
        raise MalformedDocument(f"{what}: expected {n} rows, got {len(rows)}")
    for r in rows:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, (int, str)):
                raise MalformedDocument(f"{what}: entries must be integers or polynomial strings")
    try:
        return Matrix(ring, rows)
    except ShapeMismatch as exc:
        raise MalformedDocument(f"{what}: {exc}") from None
    except RingSpecError as exc:
        raise MalformedDocument(f"{what}: {exc}") from None


def _ring(doc):
    if not isinstance(doc, dict) or "ring" not in doc:
        raise MalformedDocument("document needs a 'ring' field")
    if not isinstance(doc["ring"], str):
        raise MalformedDocument("'ring' must be a string")
    return parse_ring(doc["ring"])


def matrix_from_doc(doc):
    ring = _ring(doc)
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MalformedDocument("'n' must be a positive integer")
    if "rows" not in doc:
        raise MalformedDocument("document needs a 'rows' field")
    return _rows_to_matrix(ring, doc["rows"], n)


def matrix_to_doc(A):
    return {"ring": str(A.ring), "n": A.n, "rows": A.tolist()}


def decomposition_to_doc(D):
    return {
        "ring": str(D.A.ring),
        "A": D.A.tolist(),
        "P": D.P.tolist(),
        "N": D.N.tolist(),
        "exponent": str(D.exponent),
        "guarantee": D.guarantee.value,
        "certificate": {k: bool(v) for k, v in D.certificate.items()},
    }


def decomposition_from_doc(doc):
    """``(A, P, N, exponent, guarantee)`` from a decomposition document."""
    ring = _ring(doc)
    for key in ("A", "P", "N", "exponent", "guarantee"):
        if key not in doc:
            raise MalformedDocument(f"decomposition document needs {key!r}")
    A = _rows_to_matrix(ring, doc["A"], what="A")
    P = _rows_to_matrix(ring, doc["P"], A.n, what="P")
    N = _rows_to_matrix(ring, doc["N"], A.n, what="N")
    try:
        exponent = int(doc["exponent"])
    except (TypeError, ValueError):
        raise MalformedDocument("'exponent' must be a decimal string") from None
    guarantee = doc["guarantee"]
    if guarantee not in ("square-zero", "square-in-p2"):
        raise MalformedDocument(f"unknown guarantee {guarantee!r}")
    return A, P, N, exponent, guarantee


def _poly_str(f):
    # extension-field coefficients are themselves polynomials in x
    var = "y" if hasattr(f.field, "poly_modulus") else "x"
    return f.to_string(var)


def rcf_to_doc(A, rcf):
    blocks = []
    for (p, e), C in zip(rcf.divisors, rcf.blocks):
        blocks.append(
            {
                "divisor": _poly_str(p**e),
                "irreducible": _poly_str(p),
                "exponent": e,
                "size": C.n,
            }
        )
    return {
        "ring": str(A.ring),
        "n": A.n,
        "Q": rcf.Q.tolist(),
        "blocks": blocks,
        "invariant_factors": [_poly_str(f) for f in rcf.invariant_factors],
    }
