"""Command line entry point.

Exit codes: 0 success, 1 invalid input, 2 computation budget exceeded,
3 a reproduced claim failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .benchmark import (
    ORDERS,
    RANDOM,
    optimal_online_max,
    optimal_online_min,
    optimal_online_min_one_exchange,
)
from .claims import CLAIMS
from .distributions import expected_max, expected_min
from .engine import MAXIMIZE, Instance
from .exact import BudgetExceededError, evaluate_bruteforce, evaluate_exact, sweep_single_threshold
from .instances import GENERATORS, InstanceFormatError, load_instance, save_instance
from .montecarlo import estimate, estimate_secretary
from .schedules import (
    ThresholdSchedule,
    alpha_factors,
    theorem1_schedule,
    two_threshold_schedule,
    uniform_schedule,
)

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_FAIL = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def parse_schedule(spec: str, instance: Instance) -> ThresholdSchedule | None:
    """Parse ``theorem1``, ``uniform:t``, ``two:t1,t2``, ``list:t1,..,tn`` or ``secretary``.

    Returns None for ``secretary``, which has no fixed thresholds.
    """
    n = instance.n
    kind, _, arg = spec.partition(":")
    try:
        nums = [float(x) for x in arg.split(",")] if arg else []
    except ValueError:
        raise UsageError(f"bad number in schedule {spec!r}") from None
    if kind == "theorem1" and not arg:
        return theorem1_schedule(n, expected_max(instance.distributions))
    if kind == "secretary" and not arg:
        return None
    if kind == "uniform" and len(nums) == 1:
        return uniform_schedule(n, nums[0])
    if kind == "two" and len(nums) == 2:
        return two_threshold_schedule(n, *nums)
    if kind == "list":
        if len(nums) != n:
            raise UsageError(f"list schedule needs {n} thresholds, got {len(nums)}")
        return ThresholdSchedule(tuple(nums))
    raise UsageError(
        f"unknown schedule {spec!r}; use theorem1, uniform:<t>, two:<t1>,<t2>, "
        "list:<t1>,...,<tn> or secretary"
    )


def _emit(rows: list[dict], fmt: str, out: str | None):
    if fmt == "json":
        text = json.dumps(rows if len(rows) != 1 else rows[0], indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, list) else v for k, v in r.items()})
        text = buf.getvalue()
    else:
        keys = list(rows[0])
        width = {k: max(len(k), *(len(_fmt_cell(r[k])) for r in rows)) for k in keys}
        lines = ["  ".join(k.ljust(width[k]) for k in keys)]
        lines += ["  ".join(_fmt_cell(r[k]).ljust(width[k]) for k in keys) for r in rows]
        text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _fmt_cell(v):
    if isinstance(v, float):
        return f"{v:.10g}"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt_cell(x) for x in v) + "]"
    return str(v)


def cmd_alphas(args):
    alphas = alpha_factors(args.n)
    limit = 1 - 1 / math.e
    rows = [{"k": k, "alpha": a} for k, a in enumerate(alphas, 1)]
    if args.format == "json":
        _emit([{"n": args.n, "alphas": alphas, "alpha1_gap_to_limit": alphas[0] - limit}], "json", args.out)
    else:
        _emit(rows, args.format, args.out)
        if args.format == "table" and not args.out:
            print(f"alpha_1 - (1 - 1/e) = {alphas[0] - limit:.3e}")
    return EXIT_OK


def cmd_eval(args):
    instance = load_instance(args.instance)
    schedule = parse_schedule(args.schedule, instance)
    if args.method == "mc":
        if args.seed is None:
            raise UsageError("--method mc requires --seed")
        if schedule is None:
            rep = estimate_secretary(instance, args.trials, args.seed, workers=args.workers)
        else:
            rep = estimate(instance, schedule, args.trials, args.seed, workers=args.workers)
        row = {"instance": instance.name, "schedule": args.schedule, "method": "mc", **rep.to_dict()}
    else:
        if schedule is None:
            raise UsageError("the secretary rule is adaptive; evaluate it with --method mc")
        fn = evaluate_exact if args.method == "exact" else evaluate_bruteforce
        rep = fn(instance, schedule)
        row = {"instance": instance.name, "schedule": args.schedule, "method": args.method, **rep.to_dict()}
    _emit([row], args.format, args.out)
    return EXIT_OK


def cmd_sweep(args):
    instance = load_instance(args.instance)
    t, r = sweep_single_threshold(instance)
    _emit([{"instance": instance.name, "best_threshold": t, "best_ratio": r}], args.format, args.out)
    return EXIT_OK


def cmd_bench(args):
    instance = load_instance(args.instance)
    if instance.objective == MAXIMIZE:
        if args.exchange:
            raise UsageError("one-exchange benchmark is only defined for minimisation")
        offline = expected_max(instance.distributions)
        pv = optimal_online_max(instance, args.order)
    else:
        offline = expected_min(instance.distributions)
        fn = optimal_online_min_one_exchange if args.exchange else optimal_online_min
        pv = fn(instance, args.order)
    row = {
        "instance": instance.name,
        "objective": instance.objective,
        "order": args.order,
        "exchange": bool(args.exchange),
        "online_value": pv.value,
        "offline_value": offline,
        "ratio": pv.value / offline if offline else math.nan,
        "state_count": pv.state_count,
    }
    _emit([row], args.format, args.out)
    return EXIT_OK


def cmd_gen(args):
    fn, cast = GENERATORS[args.generator]
    try:
        param = cast(args.param)
    except ValueError:
        raise UsageError(f"{args.generator} expects a {cast.__name__} parameter") from None
    instance = fn(param)
    if args.out:
        save_instance(instance, args.out)
    else:
        from .instances import instance_to_dict

        sys.stdout.write(json.dumps(instance_to_dict(instance), indent=2) + "\n")
    return EXIT_OK


def cmd_repro(args):
    if args.claim not in CLAIMS:
        raise UsageError(f"unknown claim {args.claim!r}; valid ids: {', '.join(CLAIMS)}")
    res = CLAIMS[args.claim]()
    if args.format == "json":
        _emit([res.to_dict()], "json", args.out)
    else:
        for line in res.lines:
            print(line)
        print(f"{res.claim_id}: {'PASS' if res.passed else 'FAIL'}")
    return EXIT_OK if res.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="prophet-secretary", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("table", "json", "csv")):
        sp.add_argument("--format", choices=formats, default="table")
        sp.add_argument("--out", help="write the report here instead of stdout")

    sp = sub.add_parser("alphas", help="threshold factors alpha_1..alpha_n")
    sp.add_argument("--n", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_alphas)

    sp = sub.add_parser("eval", help="evaluate a schedule on an instance file")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--schedule", default="theorem1")
    sp.add_argument("--method", choices=("exact", "brute", "mc"), default="exact")
    sp.add_argument("--trials", type=int, default=100_000)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--workers", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("sweep", help="best single threshold for an instance")
    sp.add_argument("--instance", required=True)
    common(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("bench", help="optimal adaptive online value")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--order", choices=ORDERS, default=RANDOM)
    sp.add_argument("--exchange", action="store_true", help="allow one exchange (minimisation)")
    common(sp)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("gen", help="write a named hard instance")
    sp.add_argument("generator", choices=sorted(GENERATORS))
    sp.add_argument("param", help="eps or n, depending on the generator")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("repro", help="rerun one of the reproduced claims")
    sp.add_argument("claim", help=", ".join(CLAIMS))
    common(sp, formats=("table", "json"))
    sp.set_defaults(func=cmd_repro)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, InstanceFormatError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
