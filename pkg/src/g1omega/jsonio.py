"""JSON encoding of polynomials, models and reports.

Polynomials are ``{"vars": n, "terms": [{"exps": [...], "coeff": "p/q"}]}``
with terms in graded-lex order; matrices are row-major arrays of polynomials;
every rational is a string.  Encoding is canonical, so equal objects give
identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .elliptic import SingularCurveError, WeierstrassCurve
from .errors import InvalidInputError
from .exactmath import Polynomial, format_rational, parse_rational
from .linalg import AltPolyMatrix
from .omega import OmegaMatrix

__all__ = [
    "poly_to_json",
    "poly_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "curve_to_json",
    "curve_from_json",
    "ModelInput",
    "JacobianReport",
    "dumps",
    "loads",
]

A_KEYS = ("a1", "a2", "a3", "a4", "a6")
_RATIONAL_CHECKS = ("pfaffian_scalar",)


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON: {exc}") from exc


def _rational(text) -> Any:
    if isinstance(text, bool):
        raise InvalidInputError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return text
    if not isinstance(text, str):
        raise InvalidInputError(f"rationals must be strings, got {text!r}")
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"not a rational: {text!r}") from exc


def poly_to_json(p: Polynomial) -> Dict[str, Any]:
    return {
        "vars": p.arity,
        "terms": [{"exps": list(m), "coeff": format_rational(c)} for m, c in p.sorted_terms()],
    }


def poly_from_json(obj) -> Polynomial:
    if not isinstance(obj, dict) or "vars" not in obj or "terms" not in obj:
        raise InvalidInputError("polynomial must be an object with 'vars' and 'terms'")
    n = obj["vars"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidInputError(f"bad variable count {n!r}")
    terms: Dict[Tuple[int, ...], Any] = {}
    for t in obj["terms"]:
        try:
            exps = tuple(t["exps"])
            coeff = _rational(t["coeff"])
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"bad term {t!r}") from exc
        if len(exps) != n or any(not isinstance(e, int) or isinstance(e, bool) or e < 0 for e in exps):
            raise InvalidInputError(f"bad exponent vector {list(exps)!r}")
        terms[exps] = terms.get(exps, 0) + coeff
    return Polynomial(n, terms)


def matrix_to_json(m: AltPolyMatrix) -> List[List[Dict[str, Any]]]:
    return [[poly_to_json(p) for p in row] for row in m.rows()]


def matrix_from_json(rows, provenance: str = "solved") -> OmegaMatrix:
    try:
        polys = [[poly_from_json(p) for p in row] for row in rows]
        n = len(polys)
        if any(len(r) != n for r in polys):
            raise InvalidInputError("matrix must be square")
        arity = polys[0][0].arity if n else 0
        out = OmegaMatrix(n, arity, provenance=provenance)
        for i in range(n):
            if not polys[i][i].is_zero():
                raise InvalidInputError("matrix is not alternating")
            for j in range(i + 1, n):
                if polys[j][i] != -polys[i][j]:
                    raise InvalidInputError("matrix is not alternating")
                out[i, j] = polys[i][j]
        return out
    except TypeError as exc:
        raise InvalidInputError("matrix must be an array of arrays of polynomials") from exc


def curve_to_json(E: WeierstrassCurve) -> Dict[str, str]:
    return {k: format_rational(v) for k, v in zip(A_KEYS, E.a_invariants)}


def curve_from_json(obj) -> WeierstrassCurve:
    if not isinstance(obj, dict):
        raise InvalidInputError("Weierstrass data must be an object with keys a1..a6")
    unknown = set(obj) - set(A_KEYS)
    if unknown:
        raise InvalidInputError(f"unknown Weierstrass keys {sorted(unknown)}")
    try:
        return WeierstrassCurve(*(_rational(obj.get(k, "0")) for k in A_KEYS))
    except SingularCurveError as exc:
        raise InvalidInputError(str(exc)) from exc


@dataclass
class ModelInput:
    """A genus one model: a plane cubic, n(n-3)/2 quadrics, or a Weierstrass
    curve together with an embedding degree."""

    degree: int
    cubic: Optional[Polynomial] = None
    quadrics: Optional[List[Polynomial]] = None
    curve: Optional[WeierstrassCurve] = None

    def __post_init__(self):
        given = sum(x is not None for x in (self.cubic, self.quadrics, self.curve))
        if given != 1:
            raise InvalidInputError("give exactly one of cubic, quadrics, weierstrass")
        n = self.degree
        if not isinstance(n, int) or isinstance(n, bool) or n < 3:
            raise InvalidInputError(f"degree must be an integer >= 3, got {n!r}")
        if self.cubic is not None:
            if n != 3:
                raise InvalidInputError("a cubic model has degree 3")
            if self.cubic.arity != 3 or not self.cubic.is_form(3) or self.cubic.is_zero():
                raise InvalidInputError("cubic must be a nonzero ternary cubic form")
        if self.quadrics is not None:
            from .secant import FormBasis

            if n < 4:
                raise InvalidInputError("quadric models need degree >= 4")
            for q in self.quadrics:
                if q.arity != n or not q.is_form(2) or q.is_zero():
                    raise InvalidInputError(f"not a nonzero quadric in {n} variables: {q}")
            want = n * (n - 3) // 2
            if len(self.quadrics) != want or FormBasis.from_forms(self.quadrics, n, 2).dimension != want:
                raise InvalidInputError(f"degree {n} needs {want} independent quadrics")

    @property
    def kind(self) -> str:
        if self.cubic is not None:
            return "cubic"
        return "quadrics" if self.quadrics is not None else "weierstrass"

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"degree": self.degree}
        if self.cubic is not None:
            out["cubic"] = poly_to_json(self.cubic)
        elif self.quadrics is not None:
            out["quadrics"] = [poly_to_json(q) for q in self.quadrics]
        else:
            out["weierstrass"] = curve_to_json(self.curve)
        return out

    @classmethod
    def from_json(cls, obj) -> "ModelInput":
        if not isinstance(obj, dict):
            raise InvalidInputError("model must be a JSON object")
        known = {"degree", "cubic", "quadrics", "weierstrass"}
        if set(obj) - known:
            raise InvalidInputError(f"unknown keys {sorted(set(obj) - known)}")
        degree = obj.get("degree")
        cubic = poly_from_json(obj["cubic"]) if "cubic" in obj else None
        if degree is None and cubic is not None:
            degree = 3
        quadrics = None
        if "quadrics" in obj:
            if not isinstance(obj["quadrics"], list):
                raise InvalidInputError("'quadrics' must be a list")
            quadrics = [poly_from_json(q) for q in obj["quadrics"]]
            if degree is None and quadrics:
                degree = quadrics[0].arity
        curve = curve_from_json(obj["weierstrass"]) if "weierstrass" in obj else None
        return cls(degree, cubic=cubic, quadrics=quadrics, curve=curve)


@dataclass
class JacobianReport:
    degree: int
    omega: OmegaMatrix
    c4: Any
    c6: Any
    jacobian: WeierstrassCurve
    j: Any
    checks: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "omega": matrix_to_json(self.omega),
            "omega_provenance": self.omega.provenance,
            "c4": format_rational(self.c4),
            "c6": format_rational(self.c6),
            "jacobian": curve_to_json(self.jacobian),
            "j": format_rational(self.j),
            "checks": {
                k: format_rational(v) if k in _RATIONAL_CHECKS and v is not None else v
                for k, v in self.checks.items()
            },
        }

    @classmethod
    def from_json(cls, obj) -> "JacobianReport":
        try:
            checks = {}
            for k, v in obj.get("checks", {}).items():
                checks[k] = _rational(v) if k in _RATIONAL_CHECKS and v is not None else v
            return cls(
                degree=obj["degree"],
                omega=matrix_from_json(obj["omega"], obj.get("omega_provenance", "solved")),
                c4=_rational(obj["c4"]),
                c6=_rational(obj["c6"]),
                jacobian=curve_from_json(obj["jacobian"]),
                j=_rational(obj["j"]),
                checks=checks,
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise InvalidInputError(f"malformed report: {exc}") from exc

    def __eq__(self, other):
        return (
            isinstance(other, JacobianReport)
            and self.degree == other.degree
            and self.omega == other.omega
            and self.omega.provenance == other.omega.provenance
            and (self.c4, self.c6, self.j) == (other.c4, other.c6, other.j)
            and self.jacobian == other.jacobian
            and self.checks == other.checks
        )
