"""Command line interface: ``tpmine {mine,gen,diff}``."""

from __future__ import annotations

import argparse
import logging
import random
import sys

from .abstraction import ABSTRACTIONS, DEFAULT_PERCENTILES, DEFAULT_SEG_MAX_ERROR
from .harness import ALGORITHMS, FORMATS, RunConfig, run, write_outputs
from .io import ParseError, dump_mss, read_patterns
from .model import VALUE_ALPHABET
from .patterns import parse_key
from .synthetic import InfeasiblePlantError, generate_synthetic, random_pattern


def _floats(text: str) -> tuple:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _abstractions(text: str) -> tuple:
    names = tuple(x.strip() for x in text.split(",") if x.strip())
    bad = set(names) - set(ABSTRACTIONS)
    if bad or not names:
        raise argparse.ArgumentTypeError(f"choose from {','.join(ABSTRACTIONS)}")
    return names


def _max_k(text: str):
    if text.lower() in ("inf", "none", "0"):
        return None
    return int(text)


def _delimiter(text: str):
    return {"tab": "\t", "\\t": "\t", "comma": ",", "space": " ", "auto": None}.get(text, text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tpmine", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mine", help="mine frequent temporal patterns")
    m.add_argument("--input", required=True)
    m.add_argument("--format", choices=FORMATS, default="ucr")
    m.add_argument("--delimiter", type=_delimiter, default=None,
                   help="field separator for UCR input (default: commas and whitespace)")
    m.add_argument("--theta", type=float, required=True)
    m.add_argument("--max-k", type=_max_k, default=None, help="largest pattern size (default: no cap)")
    m.add_argument("--algorithm", choices=ALGORITHMS, default="both")
    m.add_argument("--abstraction", type=_abstractions, default=ABSTRACTIONS)
    m.add_argument("--percentiles", type=_floats, default=DEFAULT_PERCENTILES)
    m.add_argument("--seg-max-error", type=float, default=DEFAULT_SEG_MAX_ERROR)
    m.add_argument("--steady-slope", type=float, default=0.0)
    m.add_argument("--time-limit-s", type=float, default=None)
    m.add_argument("--output", help="pattern listing destination")
    m.add_argument("--stats", help="JSON statistics destination")
    m.add_argument("--retain-evl", action="store_true")

    g = sub.add_parser("gen", help="write a seeded synthetic dataset in the native MSS format")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--records", type=int, default=20)
    g.add_argument("--variables", type=int, default=3)
    g.add_argument("--alphabet", type=int, default=3)
    g.add_argument("--intervals", type=int, default=12)
    g.add_argument("--classes", type=int, default=2)
    g.add_argument("--plant", help="pattern key to plant")
    g.add_argument("--plant-size", type=int, help="plant a random pattern of this size")
    g.add_argument("--plant-rate", type=float, default=0.0)
    g.add_argument("--output", required=True)

    d = sub.add_parser("diff", help="compare two pattern listings")
    d.add_argument("left")
    d.add_argument("right")
    return parser


def _mine(args) -> int:
    config = RunConfig(
        input=args.input,
        format=args.format,
        delimiter=args.delimiter,
        theta=args.theta,
        max_k=args.max_k,
        algorithm=args.algorithm,
        abstraction=args.abstraction,
        percentiles=args.percentiles,
        seg_max_error=args.seg_max_error,
        steady_slope=args.steady_slope,
        time_limit=args.time_limit_s,
        retain_evl=args.retain_evl,
    )
    report = run(config)
    write_outputs(report, args.output, args.stats)
    sys.stdout.write(report.table())
    return 1 if report.verdict == "differ" else 0


def _gen(args) -> int:
    planted = None
    if args.plant:
        planted = parse_key(args.plant)
    elif args.plant_size:
        rng = random.Random(args.seed)
        planted = random_pattern(
            rng, args.plant_size, [f"v{i}" for i in range(args.variables)], list(VALUE_ALPHABET[: args.alphabet])
        )
    dataset = generate_synthetic(
        args.seed,
        n_records=args.records,
        n_variables=args.variables,
        alphabet_size=args.alphabet,
        intervals_per_record=args.intervals,
        planted=planted,
        plant_rate=args.plant_rate,
        n_classes=args.classes,
    )
    dump_mss(dataset, args.output)
    if planted is not None:
        print(f"planted {planted.key}")
    return 0


def _diff(args) -> int:
    left = dict(read_patterns(args.left))
    right = dict(read_patterns(args.right))
    only_l = sorted(set(left) - set(right))
    only_r = sorted(set(right) - set(left))
    changed = sorted(k for k in set(left) & set(right) if left[k] != right[k])
    for k in only_l:
        print(f"< {k}")
    for k in only_r:
        print(f"> {k}")
    for k in changed:
        print(f"! {k}\t{left[k]} != {right[k]}")
    if only_l or only_r or changed:
        print(f"differ: {len(only_l)} left-only, {len(only_r)} right-only, {len(changed)} support mismatches")
        return 1
    print(f"identical: {len(left)} patterns")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return {"mine": _mine, "gen": _gen, "diff": _diff}[args.command](args)
    except (ParseError, InfeasiblePlantError, ValueError, OSError) as exc:
        print(f"tpmine: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
