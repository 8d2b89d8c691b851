"""Batch front end: load inputs from files, run computations, emit reports.

Exit-code policy: hypothesis violations and outside-the-space results are
data (exit 0); falsified invariants in ``verify`` exit 1; malformed inputs
exit 2.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from datetime import datetime, timezone

import numpy as np

from .errors import NcorliczError, SpecError, UnboundedNormError
from .loaders import (
    load_algebra,
    load_element,
    load_json_file,
    load_morphism,
    load_mu,
    load_orlicz,
    load_weight,
)
from .morphisms import composition_bound_check, radon_nikodym
from .norms import (
    amemiya_norm,
    holder_check,
    kunze_norm,
    luxemburg_norm,
    pistone_sempi_equivalence,
)
from .rearrangement import singular_values
from .verify import SuiteConfig, Tolerances, run_suite

ENV_SEED = "NCORLICZ_SEED"


def _digest(*objects) -> str:
    payload = json.dumps(objects, sort_keys=True, default=str).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


def _emit(report: dict, out: str | None, fmt: str) -> None:
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True)
    else:
        lines = []
        if "pairs" in report:  # singular-value table
            lines.append("t,mu_t")
            lines.extend(f"{t!r},{v!r}" for t, v in report["pairs"])
        else:
            lines.append("key,value")
            lines.extend(f"{k},{json.dumps(v, sort_keys=True, default=str)}"
                         for k, v in sorted(_flatten(report).items()))
        text = "\n".join(lines)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _flatten(obj, prefix: str = "") -> dict:
    flat = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            flat.update(_flatten(v, f"{prefix}{k}." if prefix else f"{k}."))
    else:
        flat[prefix.rstrip(".")] = obj
    return flat


def _seed_from(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get(ENV_SEED, "0"))


def _tolerances(args) -> dict:
    return {"bisect": 1e-9, "slack": args.tol}


def cmd_norm(args) -> int:
    alg = load_algebra(load_json_file(args.algebra))
    element = load_element(alg, load_json_file(args.element))
    phi = load_orlicz(load_json_file(args.orlicz))
    mu = singular_values(alg, element)
    report = {
        "command": "norm",
        "inputs_digest": _digest(load_json_file(args.algebra),
                                 load_json_file(args.element),
                                 load_json_file(args.orlicz)),
        "effective_tolerances": _tolerances(args),
        "timestamp": _now(),
    }
    try:
        lux = luxemburg_norm(mu, phi)
        kun = kunze_norm(alg, element, phi)
        ame = amemiya_norm(mu, phi)
        report["result"] = {
            "luxemburg": lux, "kunze": kun, "amemiya": ame,
            "relations": {
                "kunze_matches_luxemburg": abs(kun - lux) <= 1e-7 * max(1.0, lux),
                "sandwich": lux <= ame + 1e-9 and ame <= 2.0 * lux + 1e-9,
            },
        }
    except UnboundedNormError:
        report["result"] = "outside-space"
    _emit(report, args.out, args.format)
    return 0


def cmd_singular(args) -> int:
    alg = load_algebra(load_json_file(args.algebra))
    element = load_element(alg, load_json_file(args.element))
    mu = singular_values(alg, element)
    grid = np.unique(np.concatenate([[0.0], mu.breakpoints,
                                     0.5 * (np.concatenate([[0.0], mu.breakpoints[:-1]])
                                            + mu.breakpoints)])) if not mu.is_zero \
        else np.array([0.0])
    pairs = [[float(t), mu.evaluate(float(t))] for t in grid]
    report = {
        "command": "singular",
        "inputs_digest": _digest(load_json_file(args.algebra), load_json_file(args.element)),
        "effective_tolerances": _tolerances(args),
        "timestamp": _now(),
        "result": {"durations": mu.durations.tolist(), "values": mu.values.tolist()},
        "pairs": pairs,
    }
    _emit(report, args.out, args.format)
    return 0


def cmd_dual_check(args) -> int:
    alg = load_algebra(load_json_file(args.algebra))
    f = load_element(alg, load_json_file(args.element))
    g = load_element(alg, load_json_file(args.element2))
    phi = load_orlicz(load_json_file(args.orlicz))
    rng = np.random.default_rng(_seed_from(args))
    rep = holder_check(alg, f, g, phi, tol=args.tol, rng=rng,
                       sup_samples=args.samples)
    report = {
        "command": "dual-check",
        "inputs_digest": _digest(load_json_file(args.algebra),
                                 load_json_file(args.element),
                                 load_json_file(args.element2),
                                 load_json_file(args.orlicz)),
        "seed": _seed_from(args),
        "effective_tolerances": _tolerances(args),
        "timestamp": _now(),
        "result": {
            "lhs": rep.lhs, "rhs": rep.rhs, "slack": rep.slack, "pass": rep.passed,
            "dual_norm": rep.dual_norm, "primal_norm": rep.primal_norm,
            "sampled_sup": rep.sampled_sup, "sampled_sup_ok": rep.sampled_sup_ok,
        },
    }
    _emit(report, args.out, args.format)
    return 0


def cmd_ps_check(args) -> int:
    mu = load_mu(load_json_file(args.mu))
    ctx = load_weight(load_json_file(args.weight))
    rep = pistone_sempi_equivalence(mu, ctx)
    report = {
        "command": "ps-check",
        "inputs_digest": _digest(load_json_file(args.mu), load_json_file(args.weight)),
        "effective_tolerances": _tolerances(args),
        "timestamp": _now(),
        "result": {
            "member_via_laplace": rep.member_via_laplace,
            "member_via_norm": rep.member_via_norm,
            "agree": rep.agree,
        },
    }
    _emit(report, args.out, args.format)
    return 0


def cmd_compose(args) -> int:
    J = load_morphism(load_json_file(args.morphism))
    psi = load_orlicz(load_json_file(args.psi))
    phi2 = load_orlicz(load_json_file(args.phi2))
    rng = np.random.default_rng(_seed_from(args))
    f = radon_nikodym(J)
    rep = composition_bound_check(J, psi, phi2, samples=args.samples, rng=rng,
                                  tol=args.tol)
    spectrum = sorted({float(b[0, 0].real) for b in f.blocks}, reverse=True)
    report = {
        "command": "compose",
        "inputs_digest": _digest(load_json_file(args.morphism),
                                 load_json_file(args.psi), load_json_file(args.phi2)),
        "seed": _seed_from(args),
        "effective_tolerances": _tolerances(args),
        "timestamp": _now(),
        "result": {
            "gauges": {"psi": psi.describe(), "phi2": phi2.describe()},
            "density_spectrum": spectrum,
            "bound": rep.bound,
            "max_observed_ratio": rep.max_ratio,
            "samples": rep.samples,
            "pass": rep.passed,
        },
    }
    _emit(report, args.out, args.format)
    return 0


def cmd_verify(args) -> int:
    cfg = SuiteConfig(seed=_seed_from(args), scale=args.scale,
                      tolerances=Tolerances(slack=args.tol))
    report = run_suite(cfg, names=args.checks)
    report["timestamp"] = _now()
    _emit(report, args.out, args.format)
    return 0 if report["all_pass"] else 1


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncorlicz",
        description="Gauge norms, rearrangements and composition bounds on "
                    "finite tracial models")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None,
                       help=f"RNG seed (falls back to ${ENV_SEED}, then 0)")
        p.add_argument("--samples", type=int, default=20)
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--out", default=None, help="output path (stdout if absent)")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("norm", help="Luxemburg / trace-modular / Amemiya norms")
    p.add_argument("--algebra", required=True)
    p.add_argument("--element", required=True)
    p.add_argument("--orlicz", required=True)
    common(p)
    p.set_defaults(fn=cmd_norm)

    p = sub.add_parser("singular", help="singular-value step function of an element")
    p.add_argument("--algebra", required=True)
    p.add_argument("--element", required=True)
    common(p)
    p.set_defaults(fn=cmd_singular)

    p = sub.add_parser("dual-check", help="pairing inequality against the conjugate gauge")
    p.add_argument("--algebra", required=True)
    p.add_argument("--element", required=True)
    p.add_argument("--element2", required=True)
    p.add_argument("--orlicz", required=True)
    common(p)
    p.set_defaults(fn=cmd_dual_check)

    p = sub.add_parser("ps-check", help="exponential-moment membership equivalence")
    p.add_argument("--mu", required=True, help="rearrangement spec (step or named kind)")
    p.add_argument("--weight", required=True)
    common(p)
    p.set_defaults(fn=cmd_ps_check)

    p = sub.add_parser("compose", help="composition-operator bound for a morphism")
    p.add_argument("--morphism", required=True)
    p.add_argument("--psi", required=True)
    p.add_argument("--phi2", required=True)
    common(p)
    p.set_defaults(fn=cmd_compose)

    p = sub.add_parser("verify", help="run the named-check verification suite")
    p.add_argument("--scale", type=float, default=1.0,
                   help="sample-count multiplier for every check")
    p.add_argument("--checks", nargs="*", default=None,
                   help="subset of check names (default: all)")
    common(p)
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SpecError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except NcorliczError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
