"""Batch command-line front end.

Reads matrices as JSON ({"rows": m, "cols": n, "entries": [[[re, im], ...]]}),
runs norms, factorizations, duality checks, membership queries or ratio
searches, and emits canonical JSON reports (sorted keys, 17-significant-digit
floats, complex numbers as [re, im] pairs) so that fixed inputs, seed and
version produce byte-identical output.

Exit codes: 0 certified result, 1 malformed input, 2 heuristic-only result,
3 solver failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import duality, factor, norms, sdp
from .core import ComplexMatrix, ShapeError

__all__ = ["RunConfig", "main", "canonical_dumps"]

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_HEURISTIC = 2
EXIT_SOLVER = 3


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by all commands."""

    command: str = ""
    inputs: tuple = ()
    tol: float = 1e-8
    multistarts: int = 100
    seed: int = 0
    real_signs: bool = False
    out: Optional[str] = None

    def __post_init__(self):
        if not (0.0 < self.tol <= 1e-2):
            raise ValueError("tol must lie in (0, 1e-2]")
        if self.multistarts < 1:
            raise ValueError("multistarts must be >= 1")

    def search(self) -> norms.SearchConfig:
        return norms.SearchConfig(
            multistarts=self.multistarts, seed=self.seed, real_signs=self.real_signs
        )


# ---------------------------------------------------------------------------
# canonical JSON
# ---------------------------------------------------------------------------

def _float_repr(v: float) -> str:
    if v != v or v in (float("inf"), float("-inf")):
        raise ValueError("non-finite float in canonical output")
    return format(v, ".17g")


def _write_canon(obj, parts):
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        parts.append(_float_repr(float(obj)))
    elif isinstance(obj, (complex, np.complexfloating)):
        parts.append(f"[{_float_repr(float(obj.real))},{_float_repr(float(obj.imag))}]")
    elif isinstance(obj, np.ndarray):
        _write_canon(obj.tolist(), parts)
    elif isinstance(obj, dict):
        parts.append("{")
        items = sorted(((str(k), v) for k, v in obj.items()), key=lambda kv: kv[0])
        for i, (key, val) in enumerate(items):
            if i:
                parts.append(",")
            parts.append(json.dumps(key))
            parts.append(":")
            _write_canon(val, parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, val in enumerate(obj):
            if i:
                parts.append(",")
            _write_canon(val, parts)
        parts.append("]")
    else:
        parts.append(json.dumps(str(obj)))


def canonical_dumps(obj) -> str:
    """Deterministic JSON: sorted keys, 17-significant-digit floats,
    complex numbers as [re, im] pairs."""
    parts = []
    _write_canon(obj, parts)
    return "".join(parts)


# ---------------------------------------------------------------------------
# payload builders
# ---------------------------------------------------------------------------

def _array_payload(a) -> dict:
    arr = np.atleast_2d(np.asarray(a, dtype=complex))
    return ComplexMatrix.from_array(arr).to_json_dict()


def _witness_payload(w: dict) -> dict:
    out = {}
    for key, val in w.items():
        if isinstance(val, np.ndarray):
            out[key] = _array_payload(val)
        elif isinstance(val, (int, float, complex, np.number)):
            out[key] = val
    return out


def _meta_payload(meta: dict) -> dict:
    keep = {}
    for key, val in meta.items():
        if isinstance(val, (bool, int, float, str)):
            keep[key] = val
        elif isinstance(val, dict):
            keep[key] = _meta_payload(val)
    return keep


def _cert_payload(cert: norms.NormCertificate) -> dict:
    return {
        "kind": cert.kind,
        "value": cert.value,
        "gap": cert.gap,
        "exact": cert.exact,
        "heuristic": bool(cert.meta.get("heuristic", False)),
        "status": cert.meta.get("status", "heuristic"),
        "primal_witness": _witness_payload(cert.primal_witness),
        "dual_witness": _witness_payload(cert.dual_witness),
        "meta": _meta_payload(cert.meta),
    }


def _cert_exit(cert: norms.NormCertificate) -> int:
    if cert.meta.get("heuristic", False):
        return EXIT_HEURISTIC if not cert.exact else EXIT_OK
    if cert.meta.get("status") == "optimal":
        return EXIT_OK
    if cert.exact:
        return EXIT_OK
    return EXIT_SOLVER


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _load_matrix(path: str) -> ComplexMatrix:
    with open(path) as fh:
        data = json.load(fh)
    return ComplexMatrix.from_json_dict(data)


def _emit(payload: dict, out: Optional[str]) -> None:
    text = canonical_dumps(payload)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _parse_kind(kind: str):
    parts = kind.split("-", 1)
    if (len(parts) != 2 or len(parts[0]) != 1 or parts[0] not in "FGBST"
            or parts[1] not in ("classical", "cb")):
        raise ValueError(f"norm kind must look like S-cb or B-classical, got {kind!r}")
    return parts[0], parts[1]


def _parse_dims(text: str):
    parts = text.lower().split("x")
    if len(parts) == 1:
        m = n = int(parts[0])
    elif len(parts) == 2:
        m, n = int(parts[0]), int(parts[1])
    else:
        raise ValueError(f"dims must look like 4x3 or 4, got {text!r}")
    if m < 1 or n < 1:
        raise ValueError("dims must be positive")
    return m, n


def cmd_norm(args, cfg: RunConfig) -> int:
    mat = _load_matrix(args.matrix)
    letter, flavor = _parse_kind(args.kind)
    if flavor == "cb":
        cert = norms.cb_norm(letter, mat, tol=cfg.tol)
    else:
        cert = norms.classical_norm(letter, mat, cfg.search())
    _emit(_cert_payload(cert), cfg.out)
    return _cert_exit(cert)


def cmd_factor(args, cfg: RunConfig) -> int:
    mat = _load_matrix(args.matrix)
    letter = args.kind
    if letter not in "FGBST" or len(letter) != 1:
        raise ValueError(f"factor kind must be one of F, G, B, S, T, got {letter!r}")
    cert = norms.cb_norm(letter, mat, tol=cfg.tol)
    fact = factor.factor(letter, mat, cert)
    residual = float(np.linalg.norm(fact.reconstruct() - mat.a))
    payload = fact.to_json_dict()
    payload["residual"] = residual
    payload["certificate"] = {"value": cert.value, "gap": cert.gap, "exact": cert.exact}
    _emit(payload, cfg.out)
    return _cert_exit(cert)


def cmd_membership(args, cfg: RunConfig) -> int:
    mat = _load_matrix(args.matrix)
    report = duality.membership(mat, args.ball, tol=args.tol_ball, config=cfg.search())
    _emit(report.to_json_dict(), cfg.out)
    return EXIT_OK if report.certified else EXIT_HEURISTIC


def cmd_duality(args, cfg: RunConfig) -> int:
    if args.check == "pairing-identity":
        m, n = _parse_dims(args.dims)
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(cfg.seed)))
        worst = 0.0
        for _ in range(args.samples):
            x = rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))
            c = rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))
            xi = rng.normal(size=n) + 1j * rng.normal(size=n)
            eta = rng.normal(size=m) + 1j * rng.normal(size=m)
            scale = max(np.linalg.norm(x) * np.linalg.norm(c)
                        * np.linalg.norm(xi) * np.linalg.norm(eta), 1e-300)
            worst = max(worst, duality.pairing_identity_check(x, c, xi, eta) / scale)
        _emit({"check": "pairing-identity", "samples": args.samples,
               "max_relative_deviation": worst, "seed": cfg.seed}, cfg.out)
        return EXIT_OK
    pair = {"polar-all": "all", "polar-b-s": "B-S",
            "polar-cb-cs": "CB-CS", "polar-cf-ct": "CF-CT"}[args.check]
    m, n = _parse_dims(args.dims)
    report = duality.polar_check(m, n, samples=args.samples, seed=cfg.seed,
                                 pair=pair, config=cfg.search())
    _emit(report.to_json_dict(), cfg.out)
    if report.violations:
        return EXIT_SOLVER
    return EXIT_OK if pair == "CB-CS" or pair == "CF-CT" else EXIT_HEURISTIC


def cmd_ratio(args, cfg: RunConfig) -> int:
    m, n = _parse_dims(args.dims)
    report = duality.grothendieck_ratio(args.kind, (m, n), trials=args.trials,
                                        seed=cfg.seed, config=cfg.search())
    _emit(report.to_json_dict(), cfg.out)
    return EXIT_OK if report.denominator.exact else EXIT_HEURISTIC


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-8, help="solver tolerance (default 1e-8)")
    common.add_argument("--multistarts", type=int, default=100)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--real-signs", action="store_true",
                        help="restrict classical-norm arguments to +-1 entries")
    common.add_argument("--out", default=None, help="write the JSON report to this path")

    parser = argparse.ArgumentParser(
        prog="cbnorm",
        description="norms, factorizations and duality certificates for the four "
                    "operator interpretations of a complex matrix",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", parents=[common], help="compute a norm certificate")
    p.add_argument("--kind", required=True,
                   help="one of F,G,B,S,T joined with -classical or -cb, e.g. S-cb")
    p.add_argument("matrix", help="path to a matrix JSON file")
    p.set_defaults(fn=cmd_norm)

    p = sub.add_parser("factor", parents=[common], help="extract a norm-optimal factorization")
    p.add_argument("--kind", required=True, help="one of F, G, B, S, T")
    p.add_argument("matrix")
    p.set_defaults(fn=cmd_factor)

    p = sub.add_parser("membership", parents=[common],
                       help="locate a matrix relative to a unit ball")
    p.add_argument("--ball", required=True, choices=[b.value for b in duality.BallKind])
    p.add_argument("--tol-ball", type=float, default=1e-6)
    p.add_argument("matrix")
    p.set_defaults(fn=cmd_membership)

    p = sub.add_parser("duality", parents=[common], help="run a duality check")
    p.add_argument("--check", required=True,
                   choices=["pairing-identity", "polar-all", "polar-b-s",
                            "polar-cb-cs", "polar-cf-ct"])
    p.add_argument("--dims", default="4x4")
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(fn=cmd_duality)

    p = sub.add_parser("ratio", parents=[common],
                       help="search for cb-to-classical norm ratios")
    p.add_argument("--kind", required=True, choices=["little", "big"])
    p.add_argument("--dims", default="2x2")
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(fn=cmd_ratio)
    return parser


def _thread_cap():
    cap = os.environ.get("CBNORM_THREADS")
    if not cap:
        return None
    try:
        return max(1, int(cap))
    except ValueError:
        return None


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    cap = _thread_cap()
    if cap is not None:
        try:
            from threadpoolctl import threadpool_limits
            threadpool_limits(limits=cap)
        except ImportError:
            for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
                os.environ.setdefault(var, str(cap))
    try:
        cfg = RunConfig(command=args.command,
                        inputs=tuple(getattr(args, "matrix", ()) and [args.matrix] or []),
                        tol=args.tol, multistarts=args.multistarts, seed=args.seed,
                        real_signs=args.real_signs, out=args.out)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        return args.fn(args, cfg)
    except (OSError, json.JSONDecodeError, KeyError, ShapeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (sdp.SdpError, norms.CrossValidationError, factor.FactorizationError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
