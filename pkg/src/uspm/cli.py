"""Command-line interface.

Exit codes: 0 success, 1 unreadable or malformed input, 2 invalid parameters.
Pattern listings go to stdout (or ``--out``); diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import List, Optional

from .incremental import ALGORITHMS, LWES_CUMULATIVE, LWES_DELTA, check_lwes_mode, replay
from .io import (
    GenConfig,
    ParseError,
    generate,
    parse_spmf,
    parse_usf,
    parse_weights,
    synthesize,
    write_patterns,
    write_usf,
    write_weights,
)
from .miner import CAP, TOP, fuws
from .model import (
    FS,
    ClassifiedPattern,
    InvalidParamsError,
    MalformedDataError,
    MalformedPatternError,
    MiningParams,
    MissingWeightError,
    UncertainDatabase,
    UncertainSequence,
    USPMError,
)
from .oracle import OracleParams, completeness, oracle_mine

EXIT_OK, EXIT_INPUT, EXIT_PARAMS = 0, 1, 2


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_db(path: str, start_id: int = 1) -> UncertainDatabase:
    try:
        return parse_usf(_read(path), start_id=start_id)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _load_weights(path: str):
    try:
        return parse_weights(_read(path))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _emit(text: str, out: Optional[str]) -> None:
    if out and out != "-":
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _diag(msg: str) -> None:
    print(msg, file=sys.stderr)


def _threads(args) -> int:
    raw = args.threads if args.threads is not None else os.environ.get("USPM_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise InvalidParamsError(f"thread count must be an integer, got {raw!r}") from None
    if n < 1:
        raise InvalidParamsError(f"thread count must be >= 1, got {n}")
    return n


def _params(args) -> MiningParams:
    return MiningParams(min_sup=args.min_sup, mu=args.mu, wgt_fct=args.wgt_fct,
                        gamma=getattr(args, "gamma", 2.0))


def cmd_mine(args) -> int:
    db = _load_db(args.db)
    weights = _load_weights(args.weights)
    result = fuws(db, weights, _params(args), bound=args.bound,
                  min_wes=args.override_minwes, min_wes_semi=args.override_minwes_semi)
    _emit(write_patterns(result.patterns, args.format), args.out)
    th = result.thresholds
    _diag(f"candidates={result.candidate_count} nodes={result.stats['node_count']} "
          f"fs={len(result.fs)} sfs={len(result.sfs)} wam={th.wam:.6f} min_wes={th.min_wes:.6f} "
          f"min_wes_semi={th.min_wes_semi:.6f} seconds={result.stats['seconds']:.4f}")
    return EXIT_OK


def _renumber(db: UncertainDatabase, start: int) -> UncertainDatabase:
    return UncertainDatabase(tuple(UncertainSequence(start + k, s.events) for k, s in enumerate(db)))


def _report_block(report, fmt: str) -> str:
    if fmt == "jsonl":
        th = report.thresholds
        head = json.dumps({"report": {
            "step": report.step, "algorithm": report.algorithm, "delta_size": report.delta_size,
            "wam": round(th.wam, 6), "wam_delta": None if report.wam_delta is None else round(report.wam_delta, 6),
            "min_wes": round(th.min_wes, 6), "min_wes_semi": round(th.min_wes_semi, 6),
            "lwes": None if th.lwes is None else round(th.lwes, 6),
            "promoted": report.promoted, "demoted": report.demoted,
            "deleted": report.deleted, "inserted": report.inserted}}) + "\n"
    else:
        head = f"# {report.summary()}\n"
    return head + write_patterns(report.rows, fmt)


def cmd_incmine(args) -> int:
    weights = _load_weights(args.weights)
    initial = _load_db(args.initial)
    next_id = max((s.sid for s in initial), default=0) + 1
    deltas = []
    for path in args.delta or []:
        delta = _renumber(_load_db(path), next_id)
        next_id += len(delta)
        deltas.append(delta)
    params = _params(args)
    t0 = time.perf_counter()
    state, reports = replay(initial, deltas, weights, params, algorithm=args.algo,
                            lwes_mode=check_lwes_mode(args.lwes_wam), bound=args.bound)
    elapsed = time.perf_counter() - t0
    if not reports:
        text = f"# step=0 algo={args.algo}\n" if args.format == "tsv" else ""
        text += write_patterns(state.listing(), args.format)
    elif args.report_each:
        text = "".join(_report_block(r, args.format) for r in reports)
    else:
        text = _report_block(reports[-1], args.format)
    _emit(text, args.out)
    _diag(f"increments={len(reports)} tracked={len(state.seq_trie)} pfs={len(state.pfs_trie)} "
          f"seconds={elapsed:.4f}")
    if args.audit:
        full = initial
        for d in deltas:
            full = full + d
        truth = {p for p, _ in oracle_mine(full, weights, OracleParams(state.thresholds.min_wes, args.max_len))}
        reported = {p for p, v in state.seq_trie.enumerate() if v >= state.thresholds.min_wes - 1e-9}
        _diag(f"completeness={completeness(reported, truth):.6f} baseline_fs={len(truth)}")
    return EXIT_OK


def _synthetic_spec(text: str):
    try:
        n, length, alpha = (int(x) for x in text.split(","))
    except ValueError:
        raise InvalidParamsError(f"--synthetic expects N,L,A integers, got {text!r}") from None
    return n, length, alpha


def cmd_gen(args) -> int:
    try:
        cfg = GenConfig(prob_mean=args.prob_mean, prob_sd=args.prob_sd, wgt_mean=args.wgt_mean,
                        wgt_sd=args.wgt_sd, seed=args.seed)
    except ValueError as exc:
        raise InvalidParamsError(str(exc)) from None
    if args.spmf:
        precise = parse_spmf(_read(args.spmf))
    else:
        n, length, alpha = _synthetic_spec(args.synthetic)
        try:
            precise = synthesize(n, length, alpha, seed=args.seed, max_itemset=args.max_itemset)
        except ValueError as exc:
            raise InvalidParamsError(str(exc)) from None
    db, weights = generate(precise, cfg)
    _emit(write_usf(db), args.out_db)
    _emit(write_weights(weights), args.out_weights)
    _diag(f"sequences={len(db)} items={len(weights)}")
    return EXIT_OK


def cmd_compare_bounds(args) -> int:
    db = _load_db(args.db)
    weights = _load_weights(args.weights)
    lines = ["min_sup\tcandidates_cap\tcandidates_top\tfalse_positive_rate_cap\t"
             "false_positive_rate_top\ttime_cap\ttime_top\n"]
    for min_sup in args.min_sup:
        params = MiningParams(min_sup=min_sup, mu=args.mu, wgt_fct=args.wgt_fct)
        cells = [f"{min_sup:g}"]
        runs = [fuws(db, weights, params, bound=b) for b in (CAP, TOP)]
        cells += [str(r.candidate_count) for r in runs]
        for r in runs:
            fp = (r.candidate_count - len(r.patterns)) / r.candidate_count if r.candidate_count else 0.0
            cells.append(f"{fp:.6f}")
        for r in runs:
            cells.append("NA" if args.no_timing else f"{r.stats['seconds']:.6f}")
        lines.append("\t".join(cells) + "\n")
    _emit("".join(lines), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    db = _load_db(args.db)
    weights = _load_weights(args.weights)
    found = oracle_mine(db, weights, OracleParams(args.threshold, args.max_len))
    _emit(write_patterns([ClassifiedPattern(p, v, FS) for p, v in found], args.format), args.out)
    _diag(f"patterns={len(found)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=str, default=None,
                        help="worker count, default USPM_THREADS; mining itself runs on one thread")
    common.add_argument("--out", default=None, help="write listing here instead of stdout")

    mining = argparse.ArgumentParser(add_help=False)
    mining.add_argument("--weights", required=True)
    mining.add_argument("--wgt-fct", type=float, default=1.0)
    mining.add_argument("--bound", choices=(CAP, TOP), default=CAP)
    mining.add_argument("--format", choices=("tsv", "jsonl"), default="tsv")

    parser = argparse.ArgumentParser(prog="uspm", description="Weighted sequential pattern mining "
                                     "over uncertain sequence databases.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", parents=[common, mining], help="mine frequent and semi-frequent patterns")
    p.add_argument("--db", required=True)
    p.add_argument("--min-sup", type=float, required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--override-minwes", type=float, default=None)
    p.add_argument("--override-minwes-semi", type=float, default=None)
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("incmine", parents=[common, mining], help="replay increments")
    p.add_argument("--initial", required=True)
    p.add_argument("--delta", nargs="*", default=[])
    p.add_argument("--algo", choices=sorted(ALGORITHMS), default="uwsinc+")
    p.add_argument("--min-sup", type=float, required=True)
    p.add_argument("--mu", type=float, default=0.7)
    p.add_argument("--gamma", type=float, default=2.0)
    p.add_argument("--lwes-wam", default=LWES_DELTA,
                   help=f"{LWES_DELTA}, {LWES_CUMULATIVE} or an explicit LWES value")
    p.add_argument("--report-each", action="store_true")
    p.add_argument("--audit", action="store_true", help="print completeness against the oracle to stderr")
    p.add_argument("--max-len", type=int, default=6, help="pattern length limit for --audit")
    p.set_defaults(func=cmd_incmine)

    p = sub.add_parser("gen", parents=[common], help="generate an uncertain database and weights")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--spmf")
    src.add_argument("--synthetic", metavar="N,L,A")
    p.add_argument("--max-itemset", type=int, default=3)
    p.add_argument("--prob-mean", type=float, default=0.5)
    p.add_argument("--prob-sd", type=float, default=0.25)
    p.add_argument("--wgt-mean", type=float, default=0.5)
    p.add_argument("--wgt-sd", type=float, default=0.125)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-db", required=True)
    p.add_argument("--out-weights", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("compare-bounds", parents=[common], help="candidate counts under both bounds")
    p.add_argument("--db", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--min-sup", type=float, nargs="+", required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--wgt-fct", type=float, default=1.0)
    p.add_argument("--no-timing", action="store_true", help="print NA in the timing columns")
    p.set_defaults(func=cmd_compare_bounds)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive reference listing")
    p.add_argument("--db", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--threshold", type=float, required=True)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--format", choices=("tsv", "jsonl"), default="tsv")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_PARAMS
    try:
        _threads(args)
        return args.func(args)
    except InvalidParamsError as exc:
        _diag(f"uspm: invalid parameters: {exc}")
        return EXIT_PARAMS
    except OSError as exc:
        _diag(f"uspm: cannot read input: {exc}")
        return EXIT_INPUT
    except (ParseError, MalformedDataError, MalformedPatternError, MissingWeightError) as exc:
        _diag(f"uspm: invalid input: {exc}")
        return EXIT_INPUT
    except USPMError as exc:
        _diag(f"uspm: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
