"""Command-line interface: JSON in, JSON out, one operation per invocation.

Exit codes: 0 success, 1 verification failure, 2 schema error,
3 precondition violation, 4 numerical non-convergence.

Every output embeds the run configuration (seed, samples, mode, threads,
kernel backend), so identical configurations and inputs produce
byte-identical JSON.  Human-readable rendering sits behind --pretty;
the default stream is compact JSON only.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._kernels import backend_name
from .energy import (
    asymptotic_report,
    aubin_f0_algebraic,
    coercivity_value,
    k_energy_algebraic,
    log_tan_dist_p,
    orbit_distance,
)
from .errors import NonConvergenceError, PreconditionError, SchemaError
from .forms import build_x_pair
from .norms import arestov_check, conformal_theta, fs_pointwise, jensen_check, lp_norm, sup_norm
from .oracle import curve_geometry_oracle
from .pairs import (
    DescentOptions,
    Pair,
    build_stable_test_pair,
    descend,
    kempf_ness_gradient,
    kempf_ness_value,
    randomized_torus_probe,
    stable_probe,
    torus_semistable,
)
from .poly import act, evaluate
from .serialize import (
    curve_from_json,
    dump_json,
    estimate_to_json,
    hypersurface_from_json,
    pair_from_json,
    poly_from_json,
    poly_to_json,
    polytope_to_json,
    psg_from_json,
    sigma_from_json,
    vector_from_json,
    vector_to_json,
    xpair_from_json,
    xpair_to_json,
)
from .verify import run_suites
from .weights import psg_weight, support, weight_polytope

# Reachability map: every module operation is owned by exactly one
# subcommand (exercised directly there); the CLI test walks this table.
OPERATION_COMMANDS = {
    "evaluate": "chow",
    "act": "pair-check",
    "sylvester_resultant": "chow",
    "binary_discriminant": "hurwitz",
    "maximal_minors": "chow-hyp",
    "support": "polytope",
    "weight_polytope": "polytope",
    "psg_weight": "weight",
    "contains": "pair-check",
    "minkowski_sum": "stable-check",
    "scale": "stable-check",
    "rep_degree": "stable-check",
    "torus_semistable": "pair-check",
    "randomized_torus_probe": "pair-check",
    "kempf_ness_value": "distance",
    "kempf_ness_gradient": "distance",
    "descend": "pair-check",
    "build_stable_test_pair": "stable-check",
    "stable_probe": "stable-check",
    "chow_form_curve": "chow",
    "hurwitz_form_curve": "hurwitz",
    "chow_form_hypersurface": "chow-hyp",
    "build_x_pair": "xpair",
    "fs_pointwise": "supnorm",
    "lp_norm": "mahler",
    "sup_norm": "supnorm",
    "arestov_check": "arestov",
    "jensen_check": "arestov",
    "conformal_theta": "mahler",
    "log_tan_dist_p": "distance",
    "orbit_distance": "distance",
    "k_energy_algebraic": "kenergy",
    "aubin_f0_algebraic": "aubin",
    "coercivity_value": "coercivity",
    "curve_geometry_oracle": "oracle",
    "asymptotic_report": "asymptotic",
}


@dataclass
class RunConfig:
    seed: int
    samples: int
    mode: str
    output: Optional[str]
    verbosity: int
    threads: int

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "mode": self.mode,
            "threads": self.threads,
            "kernel": backend_name(),
        }


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SchemaError(f"input file not found: {path}")
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {path}: {exc}")


def _scalar_json(x) -> dict:
    from .scalars import QQi, format_fraction

    if isinstance(x, QQi):
        return {"re": format_fraction(x.re), "im": format_fraction(x.im)}
    z = complex(x)
    return {"re": z.real, "im": z.imag}


def _sigma_arg(args, size: int):
    if getattr(args, "sigma", None) is None:
        return np.eye(size, dtype=np.complex128)
    g = sigma_from_json(_load(args.sigma))
    return g.to_numpy()


def _descent_opts(args) -> DescentOptions:
    return DescentOptions(
        restarts=args.restarts,
        max_iters=args.max_iters,
        seed=args.seed,
    )


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def cmd_polytope(args, cfg):
    e = vector_from_json(_load(args.poly if args.poly else args.tensor))
    supp = sorted(c.raw for c in support(e))
    return dict(polytope_to_json(weight_polytope(e)), support=[list(s) for s in supp])


def cmd_weight(args, cfg):
    e = vector_from_json(_load(args.poly if args.poly else args.tensor))
    lam = psg_from_json(json.loads(args.lam))
    return {"weight": psg_weight(lam, e), "lambda": list(lam.exponents)}


def cmd_pair_check(args, cfg):
    pair = pair_from_json(_load(args.pair))
    if args.sigma is not None:
        sig = sigma_from_json(_load(args.sigma))
        pair = pair.conjugated(sig.entries if sig.mode == "exact" else sig.to_numpy())
    if args.descend:
        cert = descend(pair, _descent_opts(args))
        return cert.to_json()
    if args.trials > 1:
        return randomized_torus_probe(pair, trials=args.trials, seed=args.seed).certificate().to_json()
    ok, lam = torus_semistable(pair)
    if ok:
        return {"verdict": "torus-pass", "witness": None}
    return {"verdict": "torus-fail", "witness": {"lambda": list(lam.exponents)}}


def cmd_stable_check(args, cfg):
    pair = pair_from_json(_load(args.pair))
    tp = build_stable_test_pair(pair, args.m)
    if args.descend or args.trials > 1:
        cert = stable_probe(pair, args.m, trials=max(args.trials, 1), seed=args.seed,
                            opts=_descent_opts(args))
        return cert.to_json()
    ok, lam = tp.torus_semistable()
    left, right = tp.polytope_sides()
    return {
        "verdict": "torus-pass" if ok else "torus-fail",
        "witness": None if ok else {"lambda": list(lam.exponents)},
        "m": tp.m,
        "q": tp.q,
        "left_polytope": polytope_to_json(left),
        "right_polytope": polytope_to_json(right),
    }


def cmd_mahler(args, cfg):
    P = poly_from_json(_load(args.poly))
    if args.theta:
        return conformal_theta(P, samples=args.samples, seed=args.seed)
    est = lp_norm(P, args.p, samples=args.samples, seed=args.seed)
    return estimate_to_json(est)


def cmd_supnorm(args, cfg):
    P = poly_from_json(_load(args.poly))
    if args.at:
        z = [complex(v[0], v[1]) for v in json.loads(args.at)]
        return {"fs_pointwise_sq": fs_pointwise(P, z)}
    return {"sup_norm": sup_norm(P, samples=args.samples, seed=args.seed)}


def cmd_arestov(args, cfg):
    P = poly_from_json(_load(args.poly))
    if args.jensen:
        return jensen_check(P, args.p if args.p > 0 else 2.0, samples=args.samples, seed=args.seed)
    return arestov_check(P, samples=args.samples, seed=args.seed)


def cmd_chow(args, cfg):
    curve = curve_from_json(_load(args.curve))
    if args.at:
        A = json.loads(args.at)
        from .forms import chow_form_curve

        R = chow_form_curve(curve)
        val = evaluate(R, A)
        return {"value": _scalar_json(val)}
    from .forms import chow_form_curve

    return poly_to_json(chow_form_curve(curve))


def cmd_hurwitz(args, cfg):
    curve = curve_from_json(_load(args.curve))
    from .forms import hurwitz_form_curve

    D = hurwitz_form_curve(curve)
    if args.at:
        return {"value": _scalar_json(evaluate(D, json.loads(args.at)))}
    return poly_to_json(D)


def cmd_chow_hyp(args, cfg):
    h = hypersurface_from_json(_load(args.hyp))
    from .forms import chow_form_hypersurface

    R = chow_form_hypersurface(h)
    if args.at:
        return {"value": _scalar_json(evaluate(R, json.loads(args.at)))}
    return poly_to_json(R)


def cmd_xpair(args, cfg):
    src = _load(args.curve if args.curve else args.hyp)
    obj = curve_from_json(src) if args.curve else hypersurface_from_json(src)
    xp = build_x_pair(obj, samples=args.samples, seed=args.seed)
    return xpair_to_json(xp)


def cmd_distance(args, cfg):
    if args.pair:
        pair = pair_from_json(_load(args.pair))
        sig = _sigma_arg(args, pair.group_size)
        out = {"kempf_ness_value": kempf_ness_value(sig, pair)}
        if args.gradient:
            G = kempf_ness_gradient(sig, pair)
            out["gradient"] = [[[z.real, z.imag] for z in row] for row in G.tolist()]
        return out
    xp = xpair_from_json(_load(args.xpair))
    if args.infimum:
        cert = orbit_distance(xp, args.p, opts=_descent_opts(args), samples=args.samples)
        return cert.to_json()
    sig = _sigma_arg(args, xp.N + 1)
    return log_tan_dist_p(sig, xp, args.p, samples=args.samples, seed=args.seed)


def cmd_kenergy(args, cfg):
    xp = xpair_from_json(_load(args.xpair))
    sig = _sigma_arg(args, xp.N + 1)
    return k_energy_algebraic(sig, xp, samples=args.samples, seed=args.seed)


def cmd_aubin(args, cfg):
    xp = xpair_from_json(_load(args.xpair))
    sig = _sigma_arg(args, xp.N + 1)
    return aubin_f0_algebraic(sig, xp, samples=args.samples, seed=args.seed)


def cmd_coercivity(args, cfg):
    xp = xpair_from_json(_load(args.xpair))
    sig = _sigma_arg(args, xp.N + 1)
    return coercivity_value(sig, xp, args.m, args.k, samples=args.samples, seed=args.seed)


def cmd_oracle(args, cfg):
    curve = curve_from_json(_load(args.curve))
    sig = _sigma_arg(args, curve.N + 1)
    return curve_geometry_oracle(sig, curve).to_json()


def cmd_asymptotic(args, cfg):
    spec = _load(args.entries)
    entries = []
    for row in spec.get("entries", []):
        xp = build_x_pair(curve_from_json(row["curve"]), samples=args.samples, seed=args.seed)
        entries.append((int(row["k"]), xp))
    return asymptotic_report(entries, p=args.p, opts=_descent_opts(args), samples=args.samples)


def cmd_verify(args, cfg):
    result = run_suites(args.suites or None, seed=args.seed)
    return result


HANDLERS = {
    "polytope": cmd_polytope,
    "weight": cmd_weight,
    "pair-check": cmd_pair_check,
    "stable-check": cmd_stable_check,
    "mahler": cmd_mahler,
    "supnorm": cmd_supnorm,
    "arestov": cmd_arestov,
    "chow": cmd_chow,
    "hurwitz": cmd_hurwitz,
    "chow-hyp": cmd_chow_hyp,
    "xpair": cmd_xpair,
    "distance": cmd_distance,
    "kenergy": cmd_kenergy,
    "aubin": cmd_aubin,
    "coercivity": cmd_coercivity,
    "oracle": cmd_oracle,
    "asymptotic": cmd_asymptotic,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="stablepairs",
        description="Stability of pairs: forms, norms, weights, descent, energies.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=200_000)
        p.add_argument("--mode", choices=["exact", "float"], default="exact")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--output", default=None)
        p.add_argument("--pretty", action="store_true")
        p.add_argument("--restarts", type=int, default=3)
        p.add_argument("--max-iters", type=int, default=500)
        p.add_argument("-v", "--verbose", action="count", default=0)

    p = sub.add_parser("polytope", help="support and weight polytope of a vector")
    p.add_argument("--poly")
    p.add_argument("--tensor")
    common(p)

    p = sub.add_parser("weight", help="1-PSG weight of a vector")
    p.add_argument("--poly")
    p.add_argument("--tensor")
    p.add_argument("--lambda", dest="lam", required=True, help="integer array, sums to 0")
    common(p)

    p = sub.add_parser("pair-check", help="torus (semi)stability tests for a pair")
    p.add_argument("--pair", required=True)
    p.add_argument("--sigma")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--descend", action="store_true")
    common(p)

    p = sub.add_parser("stable-check", help="tensored stable-pair tests")
    p.add_argument("--pair", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--descend", action="store_true")
    common(p)

    p = sub.add_parser("mahler", help="L^p / Mahler norm estimate; --theta for the conformal factor")
    p.add_argument("--poly", required=True)
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--theta", action="store_true")
    common(p)

    p = sub.add_parser("supnorm", help="sup-norm lower bound; --at for pointwise FS norm")
    p.add_argument("--poly", required=True)
    p.add_argument("--at", help="point as [[re,im],...]")
    common(p)

    p = sub.add_parser("arestov", help="Arestov sandwich; --jensen for the L^p ordering")
    p.add_argument("--poly", required=True)
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--jensen", action="store_true")
    common(p)

    for name, flag, helptext in (
        ("chow", "--curve", "Chow form of a rational curve"),
        ("hurwitz", "--curve", "Hurwitz form of a rational curve"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument(flag, required=True)
        p.add_argument("--at", help="numeric matrix (nested lists) to evaluate at")
        common(p)

    p = sub.add_parser("chow-hyp", help="Chow form of a hypersurface via kernel minors")
    p.add_argument("--hyp", required=True)
    p.add_argument("--at")
    common(p)

    p = sub.add_parser("xpair", help="build the normalized variety pair")
    p.add_argument("--curve")
    p.add_argument("--hyp")
    common(p)

    p = sub.add_parser("distance", help="log tan^2 distances, KN values, orbit infimum")
    p.add_argument("--xpair")
    p.add_argument("--pair")
    p.add_argument("--sigma")
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--infimum", action="store_true")
    p.add_argument("--gradient", action="store_true")
    common(p)

    for name, helptext in (
        ("kenergy", "algebraic K-energy of phi_sigma"),
        ("aubin", "algebraic Aubin F0 of phi_sigma"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--xpair", required=True)
        p.add_argument("--sigma")
        common(p)

    p = sub.add_parser("coercivity", help="coercivity expression for the tensored pair")
    p.add_argument("--xpair", required=True)
    p.add_argument("--sigma")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    common(p)

    p = sub.add_parser("oracle", help="differential-geometric quadrature report")
    p.add_argument("--curve", required=True)
    p.add_argument("--sigma")
    common(p)

    p = sub.add_parser("asymptotic", help="per-k distance table (observational)")
    p.add_argument("--entries", required=True, help='{"entries": [{"k":..,"curve":..}]}')
    p.add_argument("--p", type=float, default=0.0)
    common(p)

    p = sub.add_parser("verify", help="run named verification suites")
    p.add_argument("suites", nargs="*", help="norms weights forms pairs energy")
    common(p)

    return ap


def _render_pretty(payload: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key in sorted(payload):
        val = payload[key]
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_render_pretty(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(_render_pretty(item, indent + 1))
                lines.append(pad + "  -")
        else:
            lines.append(f"{pad}{key}: {val}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        seed=args.seed,
        samples=args.samples,
        mode=args.mode,
        output=args.output,
        verbosity=args.verbose,
        threads=args.threads,
    )
    try:
        payload = HANDLERS[args.command](args, cfg)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 3
    except NonConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return 4
    payload = {"schema": "v1", "command": args.command, "config": cfg.to_json(), "result": payload}
    text = _render_pretty(payload) if args.pretty else dump_json(payload)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.command == "verify" and not payload["result"]["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
