"""JSON artifact formats and parsing of command-line divisor syntax.

Field elements are coefficient lists (constant term first), points are
"inf" or a coefficient list, divisors are lists of [point, coefficient]
pairs and matrices are row-major lists of elements.
"""

from __future__ import annotations

import json
import os
import re
import tempfile

import numpy as np

from .agcode import LinearCode
from .gfpoly import GF
from .projline import (Divisor, MoebiusMap, P1Point, divisor_from_json, divisor_to_json,
                       point_from_json)

FORMAT_VERSION = 1


def field_to_json(F: GF) -> dict:
    return {"p": F.p, "k": F.k, "modulus": list(F.modulus)}


def field_from_json(obj) -> GF:
    return GF(obj["p"], obj["k"], obj["modulus"] if obj["k"] > 1 else None)


def element_to_json(F: GF, code: int) -> list[int]:
    return list(F.coeffs_of(int(code)))


def matrix_to_json(F: GF, M) -> list:
    M = np.asarray(M)
    return [[element_to_json(F, c) for c in row] for row in M.tolist()]


def matrix_from_json(F: GF, rows) -> np.ndarray:
    out = [[F.from_coeffs(c).code if isinstance(c, list) else F(c).code for c in row] for row in rows]
    return np.array(out, dtype=np.int64).reshape(len(out), -1) if out else np.zeros((0, 0), dtype=np.int64)


def moebius_to_json(g: MoebiusMap) -> list:
    return [element_to_json(g.field, c) for c in g.entries]


def code_to_json(code: LinearCode) -> dict:
    F = code.field
    out = {"field": field_to_json(F), "n": code.n, "k": code.k,
           "generator": matrix_to_json(F, code.generator)}
    if code.source is not None:
        out["D"] = divisor_to_json(code.source[0])
        out["E"] = divisor_to_json(code.source[1])
    if code.notes:
        out["notes"] = list(code.notes)
    return out


def code_from_json(obj) -> LinearCode:
    F = field_from_json(obj["field"])
    G = matrix_from_json(F, obj["generator"])
    if G.size == 0:
        G = np.zeros((0, obj["n"]), dtype=np.int64)
    source = None
    if "D" in obj and "E" in obj:
        source = (divisor_from_json(F, obj["D"]), divisor_from_json(F, obj["E"]))
    pts = tuple(source[1].support()) if source else None
    return LinearCode(F, G, eval_points=pts, source=source, notes=list(obj.get("notes", [])))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def write_atomic(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- command-line syntax -------------------------------------------------------

def parse_element(F: GF, s: str) -> int:
    """'3' is an integer mod p; '1:0:2' lists coefficients, constant term first."""
    s = s.strip()
    if ":" in s:
        return F.from_coeffs([int(t) for t in s.split(":")]).code
    return F(int(s)).code


def parse_point(F: GF, s: str) -> P1Point:
    s = s.strip()
    if s.lower() in ("inf", "oo", "infinity"):
        return P1Point(F, None)
    return P1Point(F, parse_element(F, s))


_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+)\s*\*\s*)?([^+\-\s]+)")


def parse_divisor(F: GF, s: str) -> Divisor:
    """Parse sums like ``2*inf + 1*0 - 3`` (a bare point has coefficient 1)."""
    s = s.strip()
    if s in ("", "0"):
        return Divisor()
    terms = []
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse divisor near {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        terms.append((parse_point(F, m.group(3)), sign * coef))
        pos = m.end()
    return Divisor(terms)


def parse_points(F: GF, s: str) -> list[P1Point]:
    return [parse_point(F, t) for t in s.split(",") if t.strip()]


def parse_moebius(F: GF, s: str) -> MoebiusMap:
    parts = [t for t in s.split(",")]
    if len(parts) != 4:
        raise ValueError("a Moebius map needs four comma-separated entries a,b,c,d")
    return MoebiusMap.from_codes(F, *[parse_element(F, t) for t in parts])


def point_json_list(points) -> list:
    from .projline import point_to_json
    return [point_to_json(P) for P in points]


__all__ = ["FORMAT_VERSION", "field_to_json", "field_from_json", "element_to_json", "matrix_to_json",
           "matrix_from_json", "moebius_to_json", "code_to_json", "code_from_json", "dumps",
           "write_atomic", "parse_element", "parse_point", "parse_divisor", "parse_points",
           "parse_moebius", "point_json_list", "point_from_json"]
