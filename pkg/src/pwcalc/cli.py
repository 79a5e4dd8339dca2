"""Command-line front end.

Every subcommand reads JSON matrix files, runs one library operation and
prints a deterministic JSON report to standard output (optionally also
to ``--out``). The report is emitted on errors too, with ``status`` set
and the message in the diagnostics.

Exit codes: 0 success, 1 internal failure, 2 invalid input (parsing,
validation, preconditions), 3 numeric failure (eigensolver, matrices
that are not PSD), 4 when a bounded result was requested but the value
is +inf.

The environment variable ``PWCALC_TOL_ZERO`` overrides the default of
``--tol-zero``; an explicit flag wins over the environment.
"""

import argparse
import math
import os
import sys

import numpy as np

from . import lebesgue as leb
from . import means
from . import radon_nikodym as rn
from .calculus import build_rep
from .config import ToleranceConfig
from .errors import (ExtendedValueError, InputError, NotPsdError, NumericError,
                     PwCalcError)
from .fileio import (INF_SENTINEL, dumps_report, load_matrix, load_vector,
                     matrix_payload, sha256_file)
from .functions import named_function
from .linalg import hermitian_norm

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_EXTENDED = 4

SUBCOMMANDS = ("rep", "eval", "lebesgue", "psum", "psum-limit", "singular",
               "abscont", "rn", "kubo", "pair", "trace", "tensor-check",
               "form-p")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pwcalc",
        description="Functional calculus and Lebesgue decomposition for "
                    "pairs of positive semidefinite matrices.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--a", required=True, help="first matrix file")
        p.add_argument("--b", required=True, help="second matrix file")
        p.add_argument("--rho", help="state matrix file")
        p.add_argument("--xi", help="vector file")
        p.add_argument("--phi", help="profile name, NAME or NAME:PARAM")
        p.add_argument("--alpha", type=float, help="profile parameter")
        p.add_argument("--tol-zero", type=float, dest="tol_zero")
        p.add_argument("--tol-one", type=float, dest="tol_one")
        p.add_argument("--max-doublings", type=int, dest="max_doublings")
        p.add_argument("--out", help="also write the report to this file")
        if name == "tensor-check":
            p.add_argument("--a2", required=True, help="second-slot first matrix")
            p.add_argument("--b2", required=True, help="second-slot second matrix")
            p.add_argument("--rho2", required=True, help="second-slot state")
    return parser


def _tolerances(args) -> ToleranceConfig:
    zero = args.tol_zero
    if zero is None:
        env = os.environ.get("PWCALC_TOL_ZERO")
        if env is not None:
            try:
                zero = float(env)
            except ValueError:
                raise InputError(
                    f"PWCALC_TOL_ZERO is not a number: {env!r}")
    kwargs = {}
    if zero is not None:
        kwargs["zero_tol"] = zero
    if args.tol_one is not None:
        kwargs["one_tol"] = args.tol_one
    if args.max_doublings is not None:
        kwargs["max_doublings"] = args.max_doublings
    return ToleranceConfig(**kwargs)


def _config_payload(tol: ToleranceConfig) -> dict:
    return {
        "herm_tol": tol.herm_tol,
        "psd_tol": tol.psd_tol,
        "support_tol": tol.support_tol,
        "zero_tol": tol.zero_tol,
        "one_tol": tol.one_tol,
        "weight_tol": tol.weight_tol,
        "conv_tol": tol.conv_tol,
        "max_doublings": tol.max_doublings,
    }


def _scalar(x: float):
    return INF_SENTINEL if math.isinf(x) else float(x)


def _required(args, flag: str):
    value = getattr(args, flag.replace("-", "_"))
    if value is None:
        raise InputError(f"subcommand {args.command!r} requires --{flag}")
    return value


def _input_files(args) -> dict:
    files = {"a": args.a, "b": args.b}
    if getattr(args, "rho", None):
        files["rho"] = args.rho
    if getattr(args, "xi", None):
        files["xi"] = args.xi
    for extra in ("a2", "b2", "rho2"):
        if getattr(args, extra, None):
            files[extra] = getattr(args, extra)
    return files


def _margin_diagnostics(rep) -> dict:
    split = rep.classify()
    return {
        "spectral_margin": _scalar(split.margin),
        "num_zero_eigs": int(split.zero.sum()),
        "num_one_eigs": int(split.one.sum()),
    }


def _cmd_rep(args, tol, warnings):
    rep = build_rep(load_matrix(args.a), load_matrix(args.b), tol)
    eye = np.eye(rep.rank, dtype=np.complex128)
    diagnostics = _margin_diagnostics(rep)
    diagnostics["identity_residual"] = hermitian_norm(
        rep.contr_a.conj().T @ rep.contr_a
        + rep.contr_b.conj().T @ rep.contr_b - eye)
    outputs = {
        "n": rep.n,
        "rank": rep.rank,
        "sum_eigs": [float(v) for v in rep.sum_eigs],
        "gram_a": matrix_payload(rep.gram_a),
        "gram_b": matrix_payload(rep.gram_b),
    }
    return outputs, diagnostics


def _cmd_eval(args, tol, warnings):
    fn = named_function(_required(args, "phi"), args.alpha)
    rep = build_rep(load_matrix(args.a), load_matrix(args.b), tol)
    value = rep.eval(fn)
    return {"value": matrix_payload(value)}, _margin_diagnostics(rep)


def _cmd_lebesgue(args, tol, warnings):
    dec = leb.lebesgue_decompose(load_matrix(args.a), load_matrix(args.b), tol)
    warnings.extend(dec.warnings)
    outputs = {
        "abs_part": matrix_payload(dec.abs_part),
        "sing_part": matrix_payload(dec.sing_part),
        "projection": matrix_payload(dec.projection),
    }
    diagnostics = {
        "rank": dec.rank,
        "num_zero_eigs": dec.num_zero_eigs,
        "spectral_margin": _scalar(dec.spectral_margin),
        "residual_sum": dec.residual_sum,
    }
    return outputs, diagnostics


def _cmd_psum(args, tol, warnings):
    value = leb.parallel_sum(load_matrix(args.a), load_matrix(args.b), tol)
    return {"value": matrix_payload(value)}, {}


def _cmd_psum_limit(args, tol, warnings):
    res = leb.parallel_sum_limit(load_matrix(args.a), load_matrix(args.b), tol)
    if not res.converged:
        warnings.append(
            f"no convergence within max_doublings={tol.max_doublings}: "
            f"final Frobenius gap {res.gaps[-1]:.3e} above conv_tol="
            f"{tol.conv_tol:g}")
    outputs = {
        "value": matrix_payload(res.value),
        "gaps": [float(g) for g in res.gaps],
        "converged": res.converged,
        "doublings": res.doublings,
    }
    return outputs, {}


def _cmd_singular(args, tol, warnings):
    res = leb.is_mutually_singular(load_matrix(args.a), load_matrix(args.b), tol)
    outputs = {
        "is_singular": res.is_singular,
        "witness": None if res.witness is None else float(res.witness),
        "distance": float(res.distance),
    }
    return outputs, {}


def _cmd_abscont(args, tol, warnings):
    a = load_matrix(args.a)
    b = load_matrix(args.b)
    proj = leb.abs_continuity_projection(a, b, tol)
    deviation = hermitian_norm(proj - np.eye(proj.shape[0]))
    return {"is_abs_continuous": bool(deviation < 1e-7),
            "projection_deviation": deviation}, {}


def _rn_outputs(res) -> tuple[dict, dict]:
    outputs = {
        "factor": matrix_payload(res.factor),
        "root": matrix_payload(res.root),
        "value": matrix_payload(res.value),
    }
    diagnostics = {
        "residual": res.residual,
        "condition": res.condition,
        "infinite_directions": res.infinite_directions,
        "near_singular": res.near_singular,
        "suppression_margin": _scalar(res.margin),
    }
    return outputs, diagnostics


def _cmd_rn(args, tol, warnings):
    res = rn.rn_factor(load_matrix(args.a), load_matrix(args.b), tol)
    if res.near_singular:
        warnings.append(
            f"{res.near_singular} ratio eigenvalue(s) retained within "
            f"10*zero_tol={10 * tol.zero_tol:g} of the suppression threshold "
            f"zero_tol={tol.zero_tol:g}; margin={res.margin:.3e}")
    return _rn_outputs(res)


def _cmd_kubo(args, tol, warnings):
    fn = named_function(_required(args, "phi"), args.alpha)
    res = rn.kubo_ando_form(load_matrix(args.a), load_matrix(args.b), fn, tol)
    return _rn_outputs(res)


def _cmd_pair(args, tol, warnings):
    fn = named_function(_required(args, "phi"), args.alpha)
    rep = build_rep(load_matrix(args.a), load_matrix(args.b), tol)
    res = rep.pairing(fn, load_matrix(_required(args, "rho")))
    outputs = {
        "value": _scalar(res.value),
        "finite_part": res.finite_part,
        "infinite_weight": res.infinite_weight,
    }
    return outputs, _margin_diagnostics(rep)


def _cmd_trace(args, tol, warnings):
    fn = named_function(_required(args, "phi"), args.alpha)
    value = means.trace_functional(load_matrix(args.a), load_matrix(args.b),
                                   fn, tol)
    return {"value": _scalar(value)}, {}


def _cmd_tensor_check(args, tol, warnings):
    fn = named_function(_required(args, "phi"), args.alpha)
    res = means.tensor_pairing_check(
        load_matrix(args.a), load_matrix(args.b),
        load_matrix(args.a2), load_matrix(args.b2),
        load_matrix(_required(args, "rho")), load_matrix(args.rho2), fn, tol)
    if not res.infinity_consistent:
        warnings.append("one side of the tensor identity is +inf and the "
                        "other is finite")
    outputs = {
        "lhs": _scalar(res.lhs),
        "rhs": _scalar(res.rhs),
        "residual": None if res.residual is None else float(res.residual),
        "infinity_consistent": res.infinity_consistent,
    }
    return outputs, {}


def _cmd_form_p(args, tol, warnings):
    value = rn.rn_quadratic_form(load_matrix(args.a), load_matrix(args.b),
                                 load_vector(_required(args, "xi")), tol)
    return {"value": _scalar(value)}, {}


_HANDLERS = {
    "rep": _cmd_rep,
    "eval": _cmd_eval,
    "lebesgue": _cmd_lebesgue,
    "psum": _cmd_psum,
    "psum-limit": _cmd_psum_limit,
    "singular": _cmd_singular,
    "abscont": _cmd_abscont,
    "rn": _cmd_rn,
    "kubo": _cmd_kubo,
    "pair": _cmd_pair,
    "trace": _cmd_trace,
    "tensor-check": _cmd_tensor_check,
    "form-p": _cmd_form_p,
}


def _hash_inputs(files: dict) -> dict:
    inputs = {}
    for key, path in files.items():
        try:
            digest = sha256_file(path)
        except OSError:
            digest = None
        inputs[key] = {"path": path, "sha256": digest}
    return inputs


def _exit_code(exc: PwCalcError) -> int:
    if isinstance(exc, ExtendedValueError):
        return EXIT_EXTENDED
    if isinstance(exc, (NotPsdError, NumericError)):
        return EXIT_NUMERIC
    if isinstance(exc, InputError):
        return EXIT_INPUT
    return EXIT_INTERNAL


def _emit(report: dict, out_path: str | None) -> None:
    text = dumps_report(report)
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = {
        "operation": args.command,
        "inputs": _hash_inputs(_input_files(args)),
        "config": None,
        "outputs": {},
        "diagnostics": {"warnings": []},
        "status": "error",
    }
    warnings: list[str] = []
    try:
        tol = _tolerances(args)
        report["config"] = _config_payload(tol)
        outputs, diagnostics = _HANDLERS[args.command](args, tol, warnings)
        report["outputs"] = outputs
        report["diagnostics"] = {"warnings": list(warnings), **diagnostics}
        report["status"] = "warning" if warnings else "ok"
        _emit(report, args.out)
        return EXIT_OK
    except PwCalcError as exc:
        report["diagnostics"] = {"warnings": list(warnings),
                                 "error": str(exc)}
        _emit(report, args.out)
        return _exit_code(exc)
    except Exception as exc:  # pragma: no cover - defensive
        report["diagnostics"] = {"warnings": list(warnings),
                                 "error": f"internal failure: {exc}"}
        _emit(report, args.out)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
