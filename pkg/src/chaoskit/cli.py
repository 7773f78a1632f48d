"""Command-line front end.

Exit codes: 0 success, 1 domain error (including failed verification),
2 parse or I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from typing import List, Optional

from . import bm_sim, convert, region_fn
from .chaos import ComplexChaos, RealChaos, eval_complex, eval_real
from .randgen import random_complex_kernel, random_float_sample, random_real_kernel, random_sample
from .scalar import I, ModeError
from .serialize import ParseError, kernel_from_json, kernel_to_json, scalar_to_json
from .tensor_core import ComplexKernel, DomainError, RealKernel

log = logging.getLogger("chaoskit")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", 2) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", 2) from exc


def _emit(obj, output: Optional[str]) -> None:
    text = json.dumps(obj, indent=2)
    if output:
        try:
            with open(output, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise CliError(f"cannot write {output}: {exc.strerror}", 2) from exc
    else:
        print(text)


def _apply_mode(k, mode: Optional[str]):
    return k.to_float() if mode == "float" else k


def _need_input(args) -> str:
    if not args.input:
        raise CliError(f"{args.verb} needs --input", 2)
    return args.input


# ---------------------------------------------------------------------------
# verbs

def cmd_convert(args) -> dict:
    f = _apply_mode(kernel_from_json(_read_json(_need_input(args))), args.mode)
    if not isinstance(f, ComplexKernel):
        raise DomainError("convert expects a complex kernel (space 'complex')")
    w = convert.forward_closed_form(f)
    check = RealKernel.zero(w.degree)
    for (holo, anti), c in f.terms.items():
        check = check + convert.forward_recursive(holo, anti) * c
    gap = max((abs(complex(v)) for v in (w - check).terms.values()), default=0.0)
    if gap > (0 if f.terms and all(c.exact for c in f.terms.values()) else 1e-9):
        raise DomainError(f"closed form and recursion disagree by {gap}")
    u, v = convert.split_uv(w)
    return {"u": kernel_to_json(u), "v": kernel_to_json(v),
            "cross_check": {"route": "forward_recursive", "max_discrepancy": gap}}


def _load_real_target(doc) -> RealKernel:
    if isinstance(doc, dict) and "u" in doc and "v" in doc:
        u, v = kernel_from_json(doc["u"]), kernel_from_json(doc["v"])
        if not (isinstance(u, RealKernel) and isinstance(v, RealKernel)):
            raise DomainError("u and v must be real kernels")
        if u.degree != v.degree:
            raise DomainError(f"degree invariant violated: u has degree {u.degree}, v has {v.degree}")
        exact = all(c.exact for c in list(u.terms.values()) + list(v.terms.values()))
        return u + v * (I if exact else I.to_float())
    g = kernel_from_json(doc)
    if not isinstance(g, RealKernel):
        raise DomainError("invert expects a real kernel or a {u, v} pair")
    return g


def cmd_invert(args) -> dict:
    g = _apply_mode(_load_real_target(_read_json(_need_input(args))), args.mode)
    slots = convert.inverse(g)
    k = convert.single_chaos_condition(g)
    p = g.degree
    return {
        "degree": p,
        "slots": [[list(f.bidegree), kernel_to_json(f)] for f in slots],
        "nonzero": [list(f.bidegree) for f in slots if not f.is_zero()],
        "single_chaos": None if k is None else [k, p - k],
        "verdict": "not single-chaos" if k is None else f"single-chaos at ({k},{p - k})",
    }


def _int_list(text: Optional[str]) -> List[int]:
    if text is None or text.strip() == "":
        return []
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise CliError(f"index list must be comma-separated integers, got {text!r}", 2) from exc


def cmd_check_density(args) -> dict:
    holo, anti = _int_list(args.holo), _int_list(args.anti)
    ok, reason = convert.density_verdict(holo, anti)
    return {"holo": sorted(holo), "anti": sorted(anti), "density": ok, "condition": reason}


def _discrepancy(a, b) -> float:
    return abs(complex(a - b))


def cmd_verify(args) -> dict:
    rng = random.Random(args.seed)
    exact = args.mode != "float"
    draw = (lambda idx: random_sample(rng, idx)) if exact else (lambda idx: random_float_sample(rng, idx))
    checks = []
    if args.input:
        kernels = [kernel_from_json(_read_json(args.input))]
    else:
        kernels = [random_complex_kernel(rng, p, q, 3) for p, q in ((1, 0), (1, 1), (2, 1), (0, 3))]
        kernels += [random_real_kernel(rng, n, 3) for n in (1, 2, 3, 4)]
    for f in kernels:
        f = _apply_mode(f, args.mode)
        worst = 0.0
        idx = sorted(set(f.indices()) | {1})
        if isinstance(f, ComplexKernel):
            name = f"complex integral = real pair, bidegree {list(f.bidegree)}"
            lhs_c, rhs_c = ComplexChaos.of(f), RealChaos.of(convert.forward_closed_form(f))
            for _ in range(args.samples):
                s = draw(idx)
                worst = max(worst, _discrepancy(eval_complex(lhs_c, s), eval_real(rhs_c, s)))
        else:
            name = f"real pair = sum of complex integrals, degree {f.degree}"
            lhs_r, rhs_r = RealChaos.of(f), ComplexChaos(convert.inverse(f))
            for _ in range(args.samples):
                s = draw(idx)
                worst = max(worst, _discrepancy(eval_real(lhs_r, s), eval_complex(rhs_r, s)))
        checks.append({"identity": name, "samples": args.samples, "max_discrepancy": worst})
    tol = 0.0 if exact else 1e-8
    ok = all(c["max_discrepancy"] <= tol for c in checks)
    report = {"mode": "exact" if exact else "float", "checks": checks,
              "max_discrepancy": max(c["max_discrepancy"] for c in checks), "ok": ok}
    if not ok:
        _emit(report, args.output)
        raise CliError("identity verification failed", 1)
    return report


def cmd_simulate(args) -> dict:
    return bm_sim.run_report(dt=args.dt, horizon=args.horizon, paths=args.paths, seed=args.seed)


def cmd_demo_ou(args) -> dict:
    v = region_fn.ou_forward()
    out = region_fn.apply_vk(v)

    def rk(f):
        return {"lower": scalar_to_json(f.lower), "upper": scalar_to_json(f.upper)}

    lines = [
        "F = I_{1,1}(psi), psi = (1, 0) on {s<=t} / {t<=s}, common factor exp(-gamma|t-s|)/sqrt(T)",
        "D Dbar F = psi, Dbar D F = psi^T, D D F = Dbar Dbar F = 0",
        "u_T + i v_T components (1/4)(A_a A_b F):",
    ]
    lines += [f"  component {j + 1}: {e}" for j, e in enumerate(v.entries)]
    lines.append("V_k recombination g_{k,2-k} = 2^{-1} C(2,k) sum_j V_kj component_j:")
    lines += [f"  g_({k},{2 - k}) = {f}" for k, f in out]
    for line in lines:
        print(line, file=sys.stderr)
    return {
        "components": [rk(e) for e in v.entries],
        "vk": [[str(x) for x in convert.vk_vector(2, k).entries] for k in range(3)],
        "g": [[[k, 2 - k], rk(f)] for k, f in out],
        "single_chaos": [k for k, f in out if not f.is_zero()],
    }


VERBS = {
    "convert": cmd_convert,
    "invert": cmd_invert,
    "check-density": cmd_check_density,
    "verify": cmd_verify,
    "simulate": cmd_simulate,
    "demo-ou": cmd_demo_ou,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chaoskit", description="Complex/real Wiener chaos kernel conversions.")
    sub = ap.add_subparsers(dest="verb", metavar="verb")
    sub.required = True

    def common(p, io=True):
        if io:
            p.add_argument("--input", help="kernel JSON file")
        p.add_argument("--output", help="write JSON here instead of stdout")
        p.add_argument("--mode", choices=("exact", "float"), default="exact")
        p.add_argument("--seed", type=int, default=0)

    common(sub.add_parser("convert", help="complex kernel -> real pair (u, v)"))
    common(sub.add_parser("invert", help="real kernel or (u, v) pair -> complex kernels"))
    p = sub.add_parser("check-density", help="density criterion for an elementary kernel")
    common(p, io=False)
    p.add_argument("--holo", default="", help="comma-separated holomorphic indices")
    p.add_argument("--anti", default="", help="comma-separated antiholomorphic indices")
    p = sub.add_parser("verify", help="pointwise identity checks at random samples")
    common(p)
    p.add_argument("--samples", type=int, default=100)
    p = sub.add_parser("simulate", help="Brownian-motion report for I_11")
    common(p, io=False)
    p.add_argument("--dt", type=float, default=1e-2)
    p.add_argument("--horizon", type=float, default=2.0)
    p.add_argument("--paths", type=int, default=200_000)
    common(sub.add_parser("demo-ou", help="Ornstein-Uhlenbeck example"), io=False)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=os.environ.get("CHAOSKIT_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        result = VERBS[args.verb](args)
        _emit(result, args.output)
        return 0
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ModeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
