"""JSON round-trip for N-vectors, factorizations, candidate sets and reports.

Scalars are ``{"re": .., "im": ..}`` objects.  Exact parts are strings
``"p/q"``; floating parts are JSON numbers written with Python's shortest
round-trip repr, so a reload reproduces every double bit for bit.  A missing
``backend`` field is inferred from the scalar encoding.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

import numpy as np

from .constructions import CandidateSet
from .exterior import Factorization, NVector
from .scalars import EXACT, FLOAT, ExactComplex, parse_rational

__all__ = [
    "scalar_to_json",
    "scalar_from_json",
    "nvector_to_dict",
    "nvector_from_dict",
    "factorization_to_dict",
    "factorization_from_dict",
    "candidate_to_dict",
    "candidate_from_dict",
    "report_to_dict",
    "from_dict",
    "to_dict",
    "dumps",
    "loads",
]


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _float_value(x: float):
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} cannot be serialized")
    return float(x)


def scalar_to_json(z, backend: str) -> dict:
    if backend == EXACT:
        if not isinstance(z, ExactComplex):
            raise TypeError(f"exact backend holds {type(z).__name__}")
        return {"re": _frac_str(z.re), "im": _frac_str(z.im)}
    z = complex(z)
    return {"re": _float_value(z.real), "im": _float_value(z.imag)}


def _parts(v):
    if isinstance(v, dict):
        return v["re"], v.get("im", 0)
    raise ValueError(f"scalar must be an object with re/im, got {v!r}")


def scalar_from_json(v, backend: str):
    re, im = _parts(v)
    if backend == EXACT:
        if not all(isinstance(p, (str, int)) and not isinstance(p, bool) for p in (re, im)):
            raise ValueError(f"exact scalar parts must be 'p/q' strings, got {v!r}")
        return ExactComplex(parse_rational(str(re)), parse_rational(str(im)))
    if not all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in (re, im)):
        raise ValueError(f"floating scalar parts must be numbers, got {v!r}")
    z = complex(float(re), float(im))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("non-finite scalar")
    return z


def _infer_backend(d: dict, scalars) -> str:
    if "backend" in d:
        return _check_backend(d["backend"])
    for v in scalars:
        re, _ = _parts(v)
        return EXACT if isinstance(re, str) else FLOAT
    return EXACT


def _check_backend(b):
    if b not in (EXACT, FLOAT):
        raise ValueError(f"unknown backend {b!r}")
    return b


def nvector_to_dict(v: NVector) -> dict:
    entries = []
    for k, c in sorted(v.coeffs.items()):
        entry = {"idx": list(k)}
        entry.update(scalar_to_json(c, v.backend))
        entries.append(entry)
    return {"type": "nvector", "m": v.m, "n": v.n, "backend": v.backend, "entries": entries}


def nvector_from_dict(d: dict) -> NVector:
    entries = d["entries"]
    backend = _infer_backend(d, entries)
    coeffs = {}
    for item in entries:
        key = tuple(int(i) for i in item["idx"])
        if key in coeffs:
            raise ValueError(f"duplicate index {key}")
        coeffs[key] = scalar_from_json(item, backend)
    return NVector(int(d["m"]), int(d["n"]), coeffs, backend)


def factorization_to_dict(f: Factorization) -> dict:
    return {
        "type": "factorization",
        "m": f.m,
        "n": f.n,
        "backend": f.backend,
        "factors": [[scalar_to_json(x, f.backend) for x in row] for row in f.factors],
    }


def factorization_from_dict(d: dict) -> Factorization:
    factors = d["factors"]
    backend = _infer_backend(d, (x for row in factors for x in row))
    m = int(d["m"])
    rows = tuple(tuple(scalar_from_json(x, backend) for x in row) for row in factors)
    f = Factorization(m, rows, backend)
    if "n" in d and int(d["n"]) != f.n:
        raise ValueError(f"declared n={d['n']} but {f.n} factors given")
    return f


def _plain(x: Any):
    """Make metadata JSON friendly."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, ExactComplex):
        return {"re": _frac_str(x.re), "im": _frac_str(x.im)}
    if isinstance(x, Fraction):
        return _frac_str(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def candidate_to_dict(s: CandidateSet) -> dict:
    return {
        "type": "candidate-set",
        "m": s.m,
        "n": s.n,
        "kind": s.kind,
        "claims": {"orthogonal": s.orthogonal, "independent": s.independent},
        "backend": s.backend,
        "members": [factorization_to_dict(f) for f in s.members],
        "metadata": _plain(s.metadata),
    }


def candidate_from_dict(d: dict) -> CandidateSet:
    members = tuple(factorization_from_dict(f) for f in d["members"])
    claims = d.get("claims", {})
    if not isinstance(claims, dict):
        raise ValueError("claims must be an object")
    for key in ("orthogonal", "independent"):
        if key in claims and not isinstance(claims[key], bool):
            raise ValueError(f"claim {key!r} must be a boolean")
    return CandidateSet(
        int(d["m"]),
        int(d["n"]),
        members,
        kind=d.get("kind", "fupb"),
        orthogonal=claims.get("orthogonal", True),
        independent=claims.get("independent", True),
        metadata=d.get("metadata", {}),
    )


def report_to_dict(r) -> dict:
    search = dict(r.search)
    w = search.get("witness")
    search["witness"] = factorization_to_dict(w) if w is not None else None
    return {
        "type": "verification-report",
        "n": r.n,
        "m": r.m,
        "size": r.size,
        "backend": r.backend,
        "claims": _plain(r.claims),
        "orthogonality_residual": float(r.orthogonality_residual),
        "independence_rank": int(r.independence_rank),
        "member_decomposability_residual": float(r.member_decomposability_residual),
        "complement_dim": int(r.complement_dim),
        "bound_checks": _plain(r.bound_checks),
        "search": _plain(search),
        "verdict": dict(r.verdict),
        "config": _plain(r.config),
    }


_READERS = {
    "nvector": nvector_from_dict,
    "factorization": factorization_from_dict,
    "candidate-set": candidate_from_dict,
}


def from_dict(d: dict):
    """Dispatch on the ``type`` tag, or on the distinguishing key if absent."""
    if not isinstance(d, dict):
        raise ValueError("JSON object expected")
    if "type" not in d:
        for key, tag in (("members", "candidate-set"), ("entries", "nvector"), ("factors", "factorization")):
            if key in d:
                d = {**d, "type": tag}
                break
        else:
            raise ValueError("cannot tell which object this JSON describes")
    try:
        reader = _READERS[d["type"]]
    except KeyError:
        raise ValueError(f"unknown object type {d['type']!r}") from None
    try:
        return reader(d)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed {d['type']}: {exc}") from exc


def to_dict(obj) -> dict:
    if isinstance(obj, NVector):
        return nvector_to_dict(obj)
    if isinstance(obj, Factorization):
        return factorization_to_dict(obj)
    if isinstance(obj, CandidateSet):
        return candidate_to_dict(obj)
    if hasattr(obj, "verdict"):
        return report_to_dict(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int | None = None) -> str:
    return json.dumps(to_dict(obj), indent=indent, allow_nan=False)


def loads(text: str):
    return from_dict(json.loads(text))
