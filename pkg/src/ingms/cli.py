"""Command-line front door.

Subcommands: ``region`` (compute/serialize a rate region), ``member``
(rate-point membership with a violated-row witness), ``simulate``
(Monte Carlo coding runs), ``covering`` (covering-lemma experiment),
``check`` (self-diagnostics).  Exit codes: 0 success, 2 input/usage
error, 3 diagnostic failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .builders import (mac_embedding, random_channel, random_conditional,
                       random_ingms_joint, random_orthogonal_channel)
from .channel import ChannelSpec, OrthogonalChannelSpec, load_channel, marginal
from .codingsim import (SimConfig, TypicalityParams, covering_experiment,
                        run_trials, write_csv, write_summary)
from .errors import IngmsError
from .fme import LinSys, satisfies
from .pmf import Factorization, build_joint
from .region import (WRONG_SETS, BinRates, RatePoint, decoding_bounds,
                     decoding_bounds_general, enlarge, hk_region,
                     ingms_membership, ingms_project, ingms_system,
                     mac_common_region, marton_region, orthogonal_capacity,
                     orthogonal_direct_rows, specialized_projection)

EXIT_INPUT = 2
EXIT_DIAGNOSTIC = 3

KINDS = ("ingms", "ingms-projected", "mac", "marton", "orthogonal", "hk")


def _parse_assignments(text):
    """``R01=0.5,R11=1`` -> {"R01": 0.5, "R11": 1.0}."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        name, _, val = item.partition("=")
        if not _:
            raise ValueError(f"expected NAME=VALUE, got {item!r}")
        out[name.strip()] = float(val)
    return out


def _load_tables(path):
    with open(path) as fh:
        doc = json.load(fh)
    return {k: np.asarray(v, dtype=float) if isinstance(v, list) else v
            for k, v in doc.items()}


def _joint_from_args(args):
    f = Factorization.from_json(args.factorization)
    ch = load_channel(args.channel) if args.channel else None
    if isinstance(ch, OrthogonalChannelSpec):
        from .channel import compose_orthogonal
        ch = compose_orthogonal(ch)
    return build_joint(f, ch)


def _build_region(args) -> LinSys:
    kind = args.kind
    if kind == "ingms":
        sys_ = ingms_system(_joint_from_args(args))
        if args.enlarge:
            sys_ = enlarge(sys_)
        return sys_
    if kind == "ingms-projected":
        sys_ = ingms_project(_joint_from_args(args))
        if args.enlarge:
            sys_ = enlarge(sys_)
        return sys_
    tables = _load_tables(args.factorization)
    if kind == "mac":
        ch = load_channel(args.channel)
        return mac_common_region(tables["p_w"], tables["p_x1_w"],
                                 tables["p_x2_w"], marginal(ch, "Y1"))
    if kind == "marton":
        return marton_region(tables["p_wuvx"], tables["bc_law"])
    if kind == "orthogonal":
        o = load_channel(args.channel)
        if not isinstance(o, OrthogonalChannelSpec):
            raise ValueError("--kind orthogonal needs an orthogonal channel file")
        return orthogonal_capacity(tables["p_w"], tables["p_a1_w"],
                                   tables["p_a2_w"], tables["p_b1_w"],
                                   tables["p_b2_w"], o)
    if kind == "hk":
        ch = load_channel(args.channel)
        return hk_region(tables["p_q"], tables["p_x1w1_q"],
                         tables["p_x2w2_q"], ch)
    raise ValueError(f"unknown kind {kind!r}")


def _emit_region(sys_: LinSys, out):
    text = sys_.serialize()
    doc = {"variables": list(sys_.variables),
           "rows": [{"coeffs": r.coeffs, "rhs": float(f"{r.rhs:.12g}"),
                     "label": r.label} for r in sys_.rows]}
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        with open(str(out) + ".json", "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    else:
        sys.stdout.write(text)


def cmd_region(args) -> int:
    _emit_region(_build_region(args), args.out)
    return 0


def cmd_member(args) -> int:
    rates = _parse_assignments(args.rates)
    if args.kind == "ingms":
        # project onto the active rates first so a violated row exists
        keep = [r for r in rates if rates[r] != 0.0]
        j = _joint_from_args(args)
        if args.enlarge:
            sys_ = specialized_projection(j, keep)
        else:
            print("true" if ingms_membership(j, RatePoint(rates)) else "false")
            return 0
    else:
        sys_ = _build_region(args)
    if satisfies(sys_, rates):
        print("true")
        return 0
    print("false")
    for r in sys_.rows:
        if r.evaluate(rates) > r.rhs + 1e-9:
            print(f"violated: {r}" + (f"  [{r.label}]" if r.label else ""))
            break
    return 0


def cmd_simulate(args) -> int:
    f = Factorization.from_json(args.factorization)
    ch = load_channel(args.channel)
    if isinstance(ch, OrthogonalChannelSpec):
        from .channel import compose_orthogonal
        ch = compose_orthogonal(ch)
    cfg = SimConfig(rates=RatePoint(_parse_assignments(args.rates)),
                    bins=BinRates(_parse_assignments(args.bins)),
                    typ=TypicalityParams(epsilon=args.epsilon, n=args.n),
                    factorization=f, channel=ch,
                    trials=args.trials, seed=args.seed)
    report = run_trials(cfg)
    if args.out:
        write_csv(report, str(args.out) + ".csv")
        write_summary(report, str(args.out) + ".json")
    print(f"total_error {report['total_error']:.12g} "
          f"rx1 {report['rx1_error']:.12g} rx2 {report['rx2_error']:.12g}")
    return 0


def cmd_covering(args) -> int:
    f = Factorization.from_json(args.factorization)
    pmf = build_joint(f)
    bins = tuple(float(b) for b in args.bins.split(","))
    if len(bins) != 3:
        raise ValueError("--bins must be B0,B1,B2 for covering")
    typ = TypicalityParams(epsilon=args.epsilon, n=args.n)
    out = covering_experiment(pmf, bins, typ, trials=args.trials, seed=args.seed)
    print(json.dumps(out, sort_keys=True))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(out, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def cmd_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    failures = 0

    # orthogonal identity: substitution-built constants equal the
    # capacity constants exactly
    worst = 0.0
    for _ in range(20):
        o = random_orthogonal_channel(rng)
        pw = random_conditional(rng, (), 2)
        ps = [random_conditional(rng, (2,), 2) for _ in range(4)]
        cap = orthogonal_capacity(pw, *ps, o)
        direct = orthogonal_direct_rows(pw, *ps, o)
        for a, b in zip(cap.rows, direct.rows):
            worst = max(worst, abs(a.rhs - b.rhs))
    ok = worst < 1e-9
    failures += not ok
    print(f"orthogonal-identity {'pass' if ok else 'FAIL'} "
          f"max_deviation {worst:.12g}")

    # printed decoding bounds vs the general union-event rule; deltas
    # are reported verbatim, never suppressed
    worst = 0.0
    for _ in range(10):
        j = random_ingms_joint(rng, random_channel(rng))
        for rx in (1, 2):
            printed = decoding_bounds(j, rx)
            for k in range(1, 14):
                d = abs(printed[k - 1] - decoding_bounds_general(j, rx, WRONG_SETS[k]))
                worst = max(worst, d)
    print(f"decoding-bounds-vs-general-rule report max_delta {worst:.12g}")

    # MAC specialization grid agreement on one random binary MAC
    p_w = random_conditional(rng, (), 2)
    p1 = random_conditional(rng, (2,), 2)
    p2 = random_conditional(rng, (2,), 2)
    law = random_conditional(rng, (2, 2), 2)
    f, ch = mac_embedding(p_w, p1, p2, law)
    proj = specialized_projection(build_joint(f, ch), ("R01", "R11", "R21"))
    direct = mac_common_region(p_w, p1, p2, law)
    axis = np.arange(0.0, 1.0 + 1e-12, 0.1)
    total = agree = 0
    for r0 in axis:
        for r1 in axis:
            for r2 in axis:
                a = satisfies(proj, {"R01": r0, "R11": r1, "R21": r2})
                b = satisfies(direct, {"R0": r0, "R1": r1, "R2": r2})
                total += 1
                agree += a == b
    ok = agree == total
    failures += not ok
    print(f"mac-grid-agreement {'pass' if ok else 'FAIL'} {agree}/{total}")

    return EXIT_DIAGNOSTIC if failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ingms")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, channel=True, fact=True):
        if channel:
            sp.add_argument("--channel", help="channel JSON file")
        if fact:
            sp.add_argument("--factorization",
                            help="factorization / input-tables JSON file")
        sp.add_argument("--out", help="output path")

    sp = sub.add_parser("region", help="compute and serialize a rate region")
    common(sp)
    sp.add_argument("--kind", choices=KINDS, default="ingms")
    sp.add_argument("--enlarge", action="store_true",
                    help="apply the rate-transfer enlargement")
    sp.set_defaults(func=cmd_region)

    sp = sub.add_parser("member", help="test membership of a rate point")
    common(sp)
    sp.add_argument("--kind", choices=KINDS, default="ingms")
    sp.add_argument("--enlarge", action="store_true")
    sp.add_argument("--rates", required=True, help="R01=0.5,R11=1,...")
    sp.set_defaults(func=cmd_member)

    sp = sub.add_parser("simulate", help="run the coding simulation")
    common(sp)
    sp.add_argument("--rates", default="", help="R01=0.5,...")
    sp.add_argument("--bins", default="", help="B01=0.2,...")
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--epsilon", type=float, default=0.25)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("covering", help="run the covering-lemma experiment")
    common(sp, channel=False)
    sp.add_argument("--bins", required=True, help="B0,B1,B2")
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--epsilon", type=float, default=0.25)
    sp.add_argument("--trials", type=int, default=500)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_covering)

    sp = sub.add_parser("check", help="run self-diagnostics")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (IngmsError, OSError, ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
