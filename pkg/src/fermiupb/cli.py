"""Command-line front end.

    fermiupb construct NAME [--n N --m M --b B --dims D1,D2,... --seed S]
    fermiupb verify --in FILE [--seed S --restarts R --tol-found F --tol-clear C]
    fermiupb transform {dual,slater-decompose,expand} --in FILE
    fermiupb bounds (--n N --m M | --dims D1,D2,...)
    fermiupb demo NAME

Exit codes: 0 proven or inconclusive-pass, 1 inconclusive, 2 refuted,
3 claim violation, 4 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import constructions as C
from . import io
from .exterior import Factorization, NVector, hodge_dual, slater_decomposition, wedge_expand
from .search import SearchConfig
from .verifier import (
    ClaimViolation,
    ces_max_dim,
    gfupb_min_cardinality,
    tensor_upb_bounds,
    verify_candidate,
)

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_REFUTED = 2
EXIT_CLAIM = 3
EXIT_INPUT = 4

SEED_ENV = "FERMI_UPB_SEED"

CONSTRUCT_NAMES = (
    "slater",
    "vandermonde",
    "fupb-c4",
    "pad",
    "compose-3-3-pentagon",
    "hyperplane",
    "hyperplane-spanning",
    "codim3",
    "dual",
    "block-unitary-upb",
)
TRANSFORMS = ("dual", "slater-decompose", "expand")
DEMOS = ("c4", "vandermonde", "compose", "real", "duality", "spanning")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _dims(text: str) -> list[int]:
    try:
        dims = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--dims expects comma separated integers, got {text!r}")
    if not dims or any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError("--dims entries must be positive")
    return dims


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV} must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fermiupb", description="Fermionic unextendible product bases")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def io_flags(q, need_in=False):
        q.add_argument("--in", dest="input", required=need_in, help="input JSON file ('-' for stdin)")
        q.add_argument("--out", dest="output", help="output file (default stdout)")
        q.add_argument("--format", choices=("json", "pretty"), default="json")

    def search_flags(q):
        q.add_argument("--seed", type=int, default=None)
        q.add_argument("--restarts", type=_positive, default=None)
        q.add_argument("--tol-found", type=float, default=None)
        q.add_argument("--tol-clear", type=float, default=None)

    c = sub.add_parser("construct", help="build a named construction")
    c.add_argument("name", choices=CONSTRUCT_NAMES)
    c.add_argument("--n", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--b", type=float, default=2.0)
    c.add_argument("--dims", type=_dims)
    c.add_argument("--seed", type=int, default=None)
    io_flags(c)

    v = sub.add_parser("verify", help="verify a candidate set")
    search_flags(v)
    io_flags(v, need_in=True)

    t = sub.add_parser("transform", help="dual / slater-decompose / expand")
    t.add_argument("kind", choices=TRANSFORMS)
    io_flags(t, need_in=True)

    b = sub.add_parser("bounds", help="dimension and cardinality bounds")
    b.add_argument("--n", type=int)
    b.add_argument("--m", type=int)
    b.add_argument("--dims", type=_dims)
    b.add_argument("--out", dest="output")
    b.add_argument("--format", choices=("json", "pretty"), default="json")

    d = sub.add_parser("demo", help="run a narrated pipeline")
    d.add_argument("name", choices=DEMOS)
    search_flags(d)
    d.add_argument("--out", dest="output")
    d.add_argument("--format", choices=("json", "pretty"), default="pretty")
    return p


# ---------------------------------------------------------------------------
# helpers


def _read_input(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    try:
        return io.from_dict(json.loads(text))
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise InputError(f"malformed input: {exc}")


def _pretty(d, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(d, dict):
        for k, v in d.items():
            if isinstance(v, (dict, list)) and v and not _is_leafy(v):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(d, list):
        for v in d:
            lines.append(f"{pad}- {json.dumps(v)}" if _is_leafy(v) else _pretty(v, indent + 1))
    else:
        lines.append(f"{pad}{d}")
    return "\n".join(lines)


def _is_leafy(v) -> bool:
    if isinstance(v, dict):
        return False
    if isinstance(v, list):
        return all(_is_leafy(x) for x in v) and len(json.dumps(v)) <= 80
    return True


def _emit(payload: dict, args) -> None:
    if getattr(args, "format", "json") == "pretty":
        text = _pretty(payload) + "\n"
    else:
        text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"missing {' '.join(missing)}")


def _config(args) -> SearchConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    kw = {"seed": seed}
    if args.restarts is not None:
        kw["restarts"] = args.restarts
    if args.tol_found is not None:
        kw["tol_found"] = args.tol_found
    if args.tol_clear is not None:
        kw["tol_clear"] = args.tol_clear
    return SearchConfig(**kw)


def _c4(args):
    if args.b == 2.0:
        return C.fupb_c4()
    params = C.solve_c4_double_root(b=args.b)
    return C.fupb_c4(params)


def _cplx(z) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _tensor_upb_json(dims, seed, members) -> dict:
    return {
        "type": "tensor-upb",
        "dims": list(dims),
        "seed": seed,
        "members": [[[_cplx(z) for z in vec] for vec in prod] for prod in members],
    }


# ---------------------------------------------------------------------------
# commands


def cmd_construct(args) -> int:
    name = args.name
    if name == "slater":
        _need(args, "n", "m")
        out = io.candidate_to_dict(C.slater_basis(args.n, args.m))
    elif name == "vandermonde":
        _need(args, "n", "m")
        out = io.candidate_to_dict(C.vandermonde_gfupb(args.n, args.m))
    elif name == "fupb-c4":
        out = io.candidate_to_dict(_c4(args))
    elif name == "pad":
        base = _read_input(args.input) if args.input else _c4(args)
        if not isinstance(base, C.CandidateSet):
            raise InputError("pad expects a candidate set")
        out = io.candidate_to_dict(C.pad_fupb(base))
    elif name == "compose-3-3-pentagon":
        s = C.compose_bipartite_fupb((3, 3), [None, None], {(0, 1): C.pentagon_upb()})
        out = io.candidate_to_dict(s)
    elif name == "hyperplane":
        _need(args, "n", "m")
        out = io.candidate_to_dict(C.hyperplane_fupb(args.n, args.m))
    elif name == "hyperplane-spanning":
        _need(args, "m")
        if args.m % 2:
            raise InputError("hyperplane-spanning needs an even --m (k = M/2)")
        k = args.m // 2
        members = C.hyperplane_gfupb_spanning(args.m, k)
        s = C.CandidateSet(
            args.m, 2, tuple(members), kind="gfupb", orthogonal=False, independent=True,
            metadata={"k": k, "orthogonal_to": "sum_l e_{2l-1,2l}"},
        )
        out = io.candidate_to_dict(s)
    elif name == "codim3":
        _need(args, "n", "m")
        ex = C.codim3_not_spanned(args.n, args.m)
        out = {
            "type": "codim3-example",
            "n": args.n,
            "m": args.m,
            "L_dim": ex.L.dim,
            "L0_dim": ex.L0.dim,
            "psi": io.nvector_to_dict(ex.psi),
            "phi": io.nvector_to_dict(ex.phi),
            "L0_basis": [io.nvector_to_dict(v) for v in ex.L0.basis],
        }
    elif name == "dual":
        base = _read_input(args.input) if args.input else C.pad_fupb(_c4(args))
        if not isinstance(base, C.CandidateSet):
            raise InputError("dual expects a candidate set")
        out = io.candidate_to_dict(C.dual_fupb(base))
    elif name == "block-unitary-upb":
        _need(args, "dims")
        seed = args.seed if args.seed is not None else _default_seed()
        out = _tensor_upb_json(args.dims, seed, C.block_unitary_upb(args.dims, seed))
    else:  # pragma: no cover - argparse restricts the choices
        raise InputError(f"unknown construction {name}")
    _emit(out, args)
    return EXIT_OK


def _exit_for(verdict: str) -> int:
    return {
        "proven": EXIT_OK,
        "inconclusive-pass": EXIT_OK,
        "refuted": EXIT_REFUTED,
    }.get(verdict, EXIT_INCONCLUSIVE)


def cmd_verify(args) -> int:
    s = _read_input(args.input)
    if not isinstance(s, C.CandidateSet):
        raise InputError("verify expects a candidate set")
    cfg = _config(args)
    try:
        report = verify_candidate(s, cfg)
    except ClaimViolation as exc:
        _emit({"type": "claim-violation", "message": str(exc), "seed": cfg.seed}, args)
        return EXIT_CLAIM
    _emit(io.report_to_dict(report), args)
    return _exit_for(report.unextendible)


def cmd_transform(args) -> int:
    obj = _read_input(args.input)
    kind = args.kind
    if kind == "dual":
        if isinstance(obj, C.CandidateSet):
            out = io.candidate_to_dict(C.dual_fupb(obj))
        elif isinstance(obj, NVector):
            out = io.nvector_to_dict(hodge_dual(obj))
        elif isinstance(obj, Factorization):
            out = io.nvector_to_dict(hodge_dual(wedge_expand(obj)))
        else:
            raise InputError("dual expects a candidate set, N-vector or factorization")
    elif kind == "slater-decompose":
        psi = wedge_expand(obj) if isinstance(obj, Factorization) else obj
        if not isinstance(psi, NVector):
            raise InputError("slater-decompose expects an N-vector or factorization")
        if psi.n != 2:
            raise InputError(f"slater-decompose needs grade 2, got grade {psi.n}")
        coeffs, u = slater_decomposition(psi)
        u = np.asarray(u, dtype=complex)
        out = {
            "type": "slater-decomposition",
            "m": psi.m,
            "coeffs": [float(c) for c in coeffs],
            "unitary": [[_cplx(z) for z in row] for row in u],
        }
    else:
        if not isinstance(obj, Factorization):
            raise InputError("expand expects a factorization")
        out = io.nvector_to_dict(wedge_expand(obj))
    _emit(out, args)
    return EXIT_OK


def cmd_bounds(args) -> int:
    out = {}
    if args.n is None and args.m is None and args.dims is None:
        raise InputError("bounds needs --n/--m or --dims")
    if args.n is not None or args.m is not None:
        _need(args, "n", "m")
        out["ces_max_dim"] = ces_max_dim(args.n, args.m)
        out["gfupb_min"] = gfupb_min_cardinality(args.n, args.m)
    if args.dims is not None:
        out.update(tensor_upb_bounds(args.dims))
    _emit(out, args)
    return EXIT_OK


def cmd_demo(args) -> int:
    from . import demos

    cfg = _config(args)
    summary = demos.run(args.name, cfg)
    _emit(summary, args)
    return EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "transform": cmd_transform,
    "bounds": cmd_bounds,
    "demo": cmd_demo,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"fermiupb: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, TypeError, ArithmeticError) as exc:
        print(f"fermiupb: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
