# codec.py
# JSON encoding of rationals, vectors, matrices, algebra elements, subalgebras and curves

import json
import logging
import os
from fractions import Fraction
from typing import Any, Dict, List, Sequence

from . import exact
from .cartan_holonomy import PiecewiseCurve
from .errors import MalformedInput
from .lie_algebra import AlgElement, GroupElement, Subalgebra
from .quadratic_forms import Signature

logger = logging.getLogger(__name__)


def format_rational(x) -> str:
    """Always "num/den" in lowest terms with den > 0."""
    f = exact.fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(value) -> Fraction:
    if isinstance(value, float):
        raise MalformedInput(f"floats are not accepted as exact input: {value!r}")
    return exact.fraction(value)


def encode_vector(v: Sequence) -> List[str]:
    return [format_rational(x) for x in v]


def decode_vector(data, length: int = None) -> List[Fraction]:
    if not isinstance(data, list):
        raise MalformedInput(f"expected a JSON array, got {type(data).__name__}")
    v = [parse_rational(x) for x in data]
    if length is not None and len(v) != length:
        raise MalformedInput(f"expected {length} entries, got {len(v)}")
    return v


def encode_matrix(rows: Sequence[Sequence]) -> List[List[str]]:
    return [encode_vector(row) for row in rows]


def decode_matrix(data, size: int = None) -> List[List[Fraction]]:
    if not isinstance(data, list) or not data:
        raise MalformedInput("expected a non-empty array of rows")
    rows = [decode_vector(row) for row in data]
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise MalformedInput("ragged matrix rows")
    if size is not None and (len(rows) != size or width != size):
        raise MalformedInput(f"expected a {size}x{size} matrix")
    return rows


def decode_signature(data) -> Signature:
    if not isinstance(data, list) or len(data) != 2 or not all(isinstance(v, int) for v in data):
        raise MalformedInput(f"signature must be [p, q], got {data!r}")
    return Signature(data[0], data[1])


def encode_element(X) -> Dict[str, Any]:
    return {"signature": X.signature.to_json(), "matrix": encode_matrix(X.entries())}


def decode_element(data, signature: Signature = None) -> AlgElement:
    if isinstance(data, dict):
        sig = decode_signature(data.get("signature")) if "signature" in data else signature
        matrix = data.get("matrix")
    else:
        sig, matrix = signature, data
    if sig is None:
        raise MalformedInput("algebra element needs a signature")
    return AlgElement(decode_matrix(matrix, sig.ambient_dim), sig)


def decode_group_element(data, signature: Signature = None) -> GroupElement:
    if isinstance(data, dict):
        sig = decode_signature(data.get("signature")) if "signature" in data else signature
        matrix = data.get("matrix")
    else:
        sig, matrix = signature, data
    if sig is None:
        raise MalformedInput("group element needs a signature")
    return GroupElement(decode_matrix(matrix, sig.ambient_dim), sig)


def encode_subalgebra(h: Subalgebra) -> Dict[str, Any]:
    return {"signature": h.signature.to_json(), "basis": [encode_matrix(X.entries()) for X in h.basis]}


def decode_subalgebra(data, signature: Signature = None) -> Subalgebra:
    if isinstance(data, dict):
        sig = decode_signature(data["signature"]) if "signature" in data else signature
        basis = data.get("basis")
    else:
        sig, basis = signature, data
    if sig is None:
        raise MalformedInput("subalgebra needs a signature")
    if not isinstance(basis, list) or not basis:
        raise MalformedInput("subalgebra needs a non-empty basis")
    elements = [AlgElement(decode_matrix(m, sig.ambient_dim), sig) for m in basis]
    return Subalgebra.spanned_by(sig, elements)


def decode_curve(data, signature: Signature):
    """[{"direction": matrix, "from": r, "to": r}, ...] -> PiecewiseCurve starting at the identity."""
    if not isinstance(data, list) or not data:
        raise MalformedInput("a curve is a non-empty array of segments")
    pieces = []
    for k, piece in enumerate(data):
        if not isinstance(piece, dict) or not {"direction", "from", "to"} <= set(piece):
            raise MalformedInput(f"segment {k} needs direction, from and to")
        X = decode_element(piece["direction"], signature)
        pieces.append((X, parse_rational(piece["from"]), parse_rational(piece["to"])))
    return PiecewiseCurve.from_directions(pieces)


def load_json(text_or_path: str):
    """Parse inline JSON, or the contents of a file when the argument names one."""
    text = text_or_path
    if os.path.isfile(text_or_path):
        logger.debug("reading %s", text_or_path)
        try:
            with open(text_or_path) as f:
                text = f.read()
        except OSError as err:
            raise MalformedInput(f"cannot read {text_or_path}: {err}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise MalformedInput(f"invalid JSON: {err}")


def to_jsonable(value):
    """Fractions become "num/den"; dataclass-like reports expose to_json()."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return value
    if hasattr(value, "to_json"):
        return to_jsonable(value.to_json())
    if isinstance(value, (AlgElement, GroupElement)):
        return encode_element(value)
    if isinstance(value, Subalgebra):
        return encode_subalgebra(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if exact.QQ.of_type(value):
        return format_rational(value)
    raise TypeError(f"cannot encode {type(value).__name__}")


def dumps(value) -> str:
    return json.dumps(to_jsonable(value), sort_keys=True, separators=(",", ":"))


def render_matrix(rows: Sequence[Sequence]) -> str:
    """Right-aligned columns of reduced rationals ("k" for integers)."""
    cells = [[_short(x) for x in row] for row in rows]
    widths = [max(len(r[j]) for r in cells) for j in range(len(cells[0]))] if cells else []
    return "\n".join("[ " + "  ".join(c.rjust(w) for c, w in zip(row, widths)) + " ]" for row in cells)


def _short(x) -> str:
    if isinstance(x, float):
        return f"{x:.6g}"
    f = exact.fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
