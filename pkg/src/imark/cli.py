"""Command-line front end: ``imark <subcommand> --s 1,2 --d 2 ...``.

Exit codes: 0 success, 1 verification mismatch, 2 usage error,
3 no closed-form family for the query, 4 resource limit or prefix too short.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from pathlib import Path

import numpy as np

from . import closedform, engine, multiheap, periodicity
from .engine import Convention, GameSpec, GrundyTable
from .errors import (
    InconsistentTail,
    LimitExceeded,
    OutsideDomain,
    PrefixTooShort,
    SpecError,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_NO_FAMILY, EXIT_LIMIT = 0, 1, 2, 3, 4
CLI_DEFAULT_BUDGET = 10**7


class UsageError(Exception):
    pass


class NoFamily(Exception):
    pass


class VerifyFailed(Exception):
    pass


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("IMARK_ORACLE_BUDGET")
    return int(env) if env else CLI_DEFAULT_BUDGET


def _cache_dir(args) -> Path | None:
    d = getattr(args, "cache_dir", None) or os.environ.get("IMARK_CACHE_DIR")
    return Path(d) if d else None


def _spec(args) -> GameSpec:
    return engine.validate_spec(args.s, args.d)


def _cache_name(spec: GameSpec, N: int) -> str:
    s = "-".join(map(str, spec.subtraction)) or "none"
    d = "-".join(map(str, spec.division)) or "none"
    return f"imark_S{s}_D{d}_N{N}.imgt"


def oracle_table(spec: GameSpec, N: int, budget: int, cache_dir: Path | None = None) -> GrundyTable:
    """Oracle table over 0..N, reusing any cached table at least that long."""
    if cache_dir is not None and cache_dir.is_dir():
        prefix = _cache_name(spec, 0).rsplit("_N", 1)[0] + "_N"
        for path in sorted(cache_dir.glob(prefix + "*.imgt")):
            try:
                cached_n = int(path.stem.rsplit("_N", 1)[1])
            except ValueError:
                continue
            if cached_n >= N:
                table = GrundyTable.load(path)
                if table.spec == spec:
                    if N + 1 > budget:
                        raise LimitExceeded(f"table of {N + 1} entries exceeds oracle budget {budget}")
                    return GrundyTable(spec, table.values[: N + 1])
    table = engine.build_table(spec, N, budget)
    if cache_dir is not None:
        cache_dir.mkdir(parents=True, exist_ok=True)
        table.save(cache_dir / _cache_name(spec, N))
    return table


def _oracle_values(args, spec: GameSpec, convention: Convention, N: int, want_outcome: bool) -> np.ndarray:
    budget = _budget(args)
    if convention is Convention.MISERE:
        return engine.misere_table(spec, N, budget)
    table = oracle_table(spec, N, budget, _cache_dir(args))
    return table.outcomes() if want_outcome else table.values


def _heaps(args) -> list[int]:
    if args.n is not None:
        return [args.n]
    if args.upto is None:
        raise UsageError("give --n or --upto")
    lo = args.start or 0
    if lo > args.upto:
        raise UsageError("--start exceeds --upto")
    return list(range(lo, args.upto + 1))


def _fmt(value, want_outcome: bool) -> str:
    if want_outcome:
        return "P" if value else "N"
    return str(int(value))


def _emit(heaps: list[int], values: list, want_outcome: bool, fmt: str, single: bool) -> None:
    if single and fmt == "csv":
        print(_fmt(values[0], want_outcome))
        return
    if fmt == "json":
        key = "outcome" if want_outcome else "g"
        rows = [{"n": n, key: _fmt(v, want_outcome) if want_outcome else int(v)} for n, v in zip(heaps, values)]
        print(json.dumps(rows[0] if single else rows))
        return
    out = ["n,value"]
    out.extend(f"{n},{_fmt(v, want_outcome)}" for n, v in zip(heaps, values))
    sys.stdout.write("\n".join(out) + "\n")


def _values(args, want_outcome: bool) -> tuple[list[int], list]:
    spec = _spec(args)
    convention = Convention.parse(args.convention)
    if convention is Convention.MISERE:
        want_outcome = True
    heaps = _heaps(args)
    if args.mode == "oracle":
        vals = _oracle_values(args, spec, convention, max(heaps), want_outcome)
        return heaps, [vals[n] for n in heaps]
    ev = closedform.family_for(spec, convention)
    if ev is None:
        raise NoFamily(f"no closed-form family covers {spec} under {convention.value} play")
    if want_outcome:
        fast = [ev.outcome(n) is engine.Outcome.P for n in heaps]
    else:
        fast = [ev.grundy(n) for n in heaps]
    if args.mode == "verify":
        vals = _oracle_values(args, spec, convention, max(heaps), want_outcome)
        if want_outcome:
            bad = [n for n, v in zip(heaps, fast) if v != bool(vals[n])]
        else:
            bad = [n for n, v in zip(heaps, fast) if v != int(vals[n])]
        if bad:
            raise VerifyFailed(bad)
    return heaps, fast


def cmd_grundy(args, want_outcome: bool = False) -> int:
    want_outcome = want_outcome or args.outcome
    heaps, vals = _values(args, want_outcome)
    if Convention.parse(args.convention) is Convention.MISERE:
        want_outcome = True
    _emit(heaps, vals, want_outcome, args.format, single=args.n is not None)
    return EXIT_OK


def cmd_outcome(args) -> int:
    return cmd_grundy(args, want_outcome=True)


def cmd_sequence(args) -> int:
    args.n = None
    return cmd_grundy(args)


def cmd_verify(args) -> int:
    spec = _spec(args)
    convention = Convention.parse(args.convention)
    ev = closedform.family_for(spec, convention)
    if ev is None:
        raise NoFamily(f"no closed-form family covers {spec} under {convention.value} play")
    N = args.upto
    if ev.has_grundy and convention is Convention.NORMAL:
        ref = oracle_table(spec, N, _budget(args), _cache_dir(args)).values
        heaps, fast = closedform.sweep(ev, N, "grundy")
        what = "g-values"
    else:
        ref = _oracle_values(args, spec, convention, N, True)
        heaps, fast = closedform.sweep(ev, N, "outcome")
        what = "outcomes"
    mism = heaps[fast != ref[heaps]]
    report = {
        "family": ev.describe(),
        "compared": what,
        "checked": int(len(heaps)),
        "mismatches": int(len(mism)),
        "first_mismatch": int(mism[0]) if len(mism) else None,
    }
    if args.format == "json":
        print(json.dumps(report))
    else:
        print(f"{ev.describe()}: {len(mism)} mismatches over {len(heaps)} {what} in [0, {N}]")
        if len(mism):
            n = int(mism[0])
            print(f"first mismatch at n={n}: fast={fast[heaps == n][0]} oracle={ref[n]}")
    return EXIT_OK if len(mism) == 0 else EXIT_MISMATCH


def cmd_period(args) -> int:
    spec = _spec(args)
    convention = Convention.parse(args.convention)
    L = args.prefix
    if L < 1:
        raise UsageError("--prefix must be positive")
    if args.values == "grundy":
        if convention is Convention.MISERE:
            raise UsageError("misere play has no g-value sequence here")
        seq = oracle_table(spec, L - 1, _budget(args), _cache_dir(args)).values
    else:
        seq = _oracle_values(args, spec, convention, L - 1, True)
    if args.census:
        if args.period is None:
            raise UsageError("--census needs --period")
        c = periodicity.census(seq, args.period, tail_reps=args.tail_reps)
        print(c.to_json())
        return EXIT_OK
    max_p = args.max_p or L // (args.min_reps + 1)
    cert = periodicity.detect(seq, max_p=max_p, ell_max=args.ell_max, min_reps=args.min_reps)
    if cert is None:
        print(json.dumps({"kind": None, "checked_prefix": L, "max_p": max_p, "ell_max": args.ell_max}))
        return EXIT_OK
    doc = cert.to_dict()
    block = seq[cert.preperiod : cert.preperiod + cert.period]
    if args.values == "outcome":
        doc["period_string"] = engine.outcome_string(block)
    else:
        doc["period_values"] = [int(x) for x in block]
    print(json.dumps(doc))
    return EXIT_OK


def cmd_refute(args) -> int:
    spec = _spec(args)
    if len(args.claim) != 2:
        raise UsageError("--claim takes q,p")
    q, p = args.claim
    w = periodicity.refute_grundy_period(spec, q, p, budget=_budget(args))
    print(str(w))
    return EXIT_OK


def cmd_move(args) -> int:
    if Convention.parse(args.convention) is Convention.MISERE:
        raise UsageError("move advice is for normal-play sums only")
    spec = _spec(args)
    pos = multiheap.SumPosition.of(spec, args.heaps)
    advice = multiheap.optimal_move(pos, budget=_budget(args))
    if args.format == "json":
        print(json.dumps(None if advice is None else {"heap": advice.heap_index, "to": advice.new_size, "total": advice.total}))
    elif advice is None:
        print("None (P-position: every move leaves a nonzero nim-sum)")
    else:
        print(f"move heap {advice.heap_index} to size {advice.new_size} (total g {advice.total})")
    return EXIT_OK


def cmd_bench(args) -> int:
    spec = _spec(args)
    convention = Convention.parse(args.convention)
    ev = closedform.family_for(spec, convention)
    if ev is None:
        raise NoFamily(f"no closed-form family covers {spec} under {convention.value} play")
    rng = random.Random(args.seed)
    query = ev.grundy if ev.has_grundy else ev.outcome

    def sample(hi):
        while True:
            n = rng.randrange(hi + 1)
            if ev.in_domain(n):
                return n

    ns = [sample(2**args.max_exp) for _ in range(args.queries)]
    t0 = time.perf_counter()
    for n in ns:
        query(n)
    fast_s = time.perf_counter() - t0

    budget = _budget(args)
    N = args.oracle_n
    if N + 1 > budget:
        raise LimitExceeded(f"oracle lane: {N + 1} entries exceed budget {budget}")
    t0 = time.perf_counter()
    if convention is Convention.NORMAL:
        table = engine.build_table(spec, N, budget)
        ref = table.values if ev.has_grundy else table.outcomes()
    else:
        ref = engine.misere_table(spec, N, budget)
    oracle_s = time.perf_counter() - t0

    checks = [sample(N) for _ in range(min(args.queries, 1000))]
    if ev.has_grundy:
        agree = all(ev.grundy(n) == int(ref[n]) for n in checks)
    else:
        agree = all((ev.outcome(n) is engine.Outcome.P) == bool(ref[n]) for n in checks)
    report = {
        "family": ev.describe(),
        "fast_queries": args.queries,
        "fast_max_n": 2**args.max_exp,
        "fast_queries_per_second": args.queries / fast_s if fast_s else float("inf"),
        "fast_mean_latency_us": 1e6 * fast_s / args.queries,
        "oracle_entries": N + 1,
        "oracle_entries_per_second": (N + 1) / oracle_s if oracle_s else float("inf"),
        "agreement": "ok" if agree else "MISMATCH",
    }
    if args.format == "json":
        print(json.dumps(report))
    else:
        print(f"family: {report['family']}")
        print(f"fast: {report['fast_queries_per_second']:.0f} queries/s, mean {report['fast_mean_latency_us']:.2f} us (n <= 2^{args.max_exp})")
        print(f"oracle: {report['oracle_entries_per_second']:.0f} entries/s over {N + 1} entries")
        print(f"agreement: {report['agreement']}")
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_cache(args) -> int:
    if args.load:
        table = GrundyTable.load(args.load)
        bad = engine.check_mex(table) if args.check else []
        if args.csv:
            sys.stdout.write(table.to_csv())
        else:
            print(f"{table.spec} N={table.limit} mex-check={'ok' if not bad else f'{len(bad)} bad'}")
        return EXIT_OK if not bad else EXIT_MISMATCH
    spec = _spec(args)
    if args.upto is None:
        raise UsageError("cache needs --upto or --load")
    cache_dir = _cache_dir(args) or Path(".")
    table = engine.build_table(spec, args.upto, _budget(args))
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = table.save(cache_dir / _cache_name(spec, args.upto))
    print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="imark", description="Sprague-Grundy values of integral subtraction-division games")
    sub = parser.add_subparsers(dest="command", required=True)

    def game_args(p, spec_required=True):
        p.add_argument("--s", type=_int_list, required=spec_required, default=[], help="subtraction set, e.g. 1,2")
        p.add_argument("--d", type=_int_list, required=spec_required, default=[], help="division set, e.g. 2")
        p.add_argument("--convention", default="normal", choices=["normal", "misere"])
        p.add_argument("--budget", type=int, default=None, help="oracle entry budget (env IMARK_ORACLE_BUDGET)")
        p.add_argument("--cache-dir", default=None, help="table cache directory (env IMARK_CACHE_DIR)")
        p.add_argument("--format", default="csv", choices=["csv", "json"])

    def range_args(p):
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--start", type=int, default=None)
        p.add_argument("--upto", type=int, default=None)
        p.add_argument("--mode", default="oracle", choices=["oracle", "fast", "verify"])

    p = sub.add_parser("grundy", help="g-value (or outcome) of one heap or a range")
    game_args(p)
    range_args(p)
    p.add_argument("--outcome", action="store_true")
    p.set_defaults(func=cmd_grundy)

    p = sub.add_parser("outcome", help="N/P outcome of one heap or a range")
    game_args(p)
    range_args(p)
    p.set_defaults(func=cmd_outcome, outcome=True)

    p = sub.add_parser("sequence", help="CSV sequence of g-values or outcomes over [start, upto]")
    game_args(p)
    p.add_argument("--start", type=int, default=None)
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--mode", default="oracle", choices=["oracle", "fast", "verify"])
    p.add_argument("--outcome", action="store_true")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("verify", help="sweep fast evaluator against the oracle")
    game_args(p)
    p.add_argument("--upto", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("period", help="detect (almost) periodicity or take an exception census")
    game_args(p)
    p.add_argument("--prefix", type=int, required=True)
    p.add_argument("--values", default="outcome", choices=["outcome", "grundy"])
    p.add_argument("--max-p", type=int, default=None)
    p.add_argument("--ell-max", type=int, default=0)
    p.add_argument("--min-reps", type=int, default=periodicity.DEFAULT_MIN_REPS)
    p.add_argument("--census", action="store_true")
    p.add_argument("--period", type=int, default=None)
    p.add_argument("--tail-reps", type=int, default=periodicity.DEFAULT_TAIL_REPS)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("refute", help="witness against a claimed period of the g-sequence")
    game_args(p)
    p.add_argument("--claim", type=_int_list, required=True, help="q,p")
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("move", help="winning move on a sum of heaps")
    game_args(p)
    p.add_argument("--heaps", type=_int_list, required=True)
    p.set_defaults(func=cmd_move)

    p = sub.add_parser("bench", help="fast-path and oracle throughput")
    game_args(p)
    p.add_argument("--queries", type=int, default=10000)
    p.add_argument("--max-exp", type=int, default=60)
    p.add_argument("--oracle-n", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("cache", help="write or inspect binary IMGT table caches")
    game_args(p, spec_required=False)
    p.add_argument("--upto", type=int, default=None)
    p.add_argument("--load", default=None)
    p.add_argument("--check", action="store_true", help="re-verify the mex rule on load")
    p.add_argument("--csv", action="store_true", help="dump the loaded table as CSV")
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NoFamily, OutsideDomain) as exc:
        print(f"imark: {exc}", file=sys.stderr)
        return EXIT_NO_FAMILY
    except VerifyFailed as exc:
        print(f"imark: fast and oracle disagree at n={exc.args[0][:10]}", file=sys.stderr)
        return EXIT_MISMATCH
    except (LimitExceeded, PrefixTooShort, InconsistentTail) as exc:
        print(f"imark: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, SpecError, ValueError) as exc:
        print(f"imark: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

if __name__ == "__main__":
    sys.exit(main())
